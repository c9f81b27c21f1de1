#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>

#include "qkdnet/bits.hpp"
#include "qkdnet/privacy.hpp"
#include "qkdnet/topology.hpp"

namespace qkdnet {

class StarvationError : public std::runtime_error {
 public:
  StarvationError(const std::string& pair, std::uint64_t needed,
                  std::uint64_t available)
      : std::runtime_error("key pool " + pair + " starved: need " +
                           std::to_string(needed) + " bits, have " +
                           std::to_string(available)),
        pair_(pair), needed_(needed), available_(available) {}

  const std::string& pair() const { return pair_; }
  std::uint64_t needed() const { return needed_; }
  std::uint64_t available() const { return available_; }

 private:
  std::string pair_;
  std::uint64_t needed_;
  std::uint64_t available_;
};

/// Per node-pair FIFO of distilled key blocks. Consumption destroys the
/// material: a bit leaves the pool exactly once, and the running
/// produced/consumed counters let callers audit conservation exactly.
class KeyPool {
 public:
  explicit KeyPool(PairKey pair) : pair_(pair) {}

  PairKey pair() const { return pair_; }

  void deposit(SecretKeyBlock block);

  /// Splices nbits off the front of the FIFO; partially consumed blocks
  /// keep their remainder. Throws StarvationError when the pool is short.
  BitVector consume(std::uint64_t nbits);

  std::uint64_t bits_available() const { return available_; }
  std::uint64_t bits_produced() const { return produced_; }
  std::uint64_t bits_consumed() const { return consumed_; }
  std::size_t block_count() const { return blocks_.size(); }

  std::uint64_t low_water_bits = 0;
  bool below_low_water() const { return available_ < low_water_bits; }

 private:
  PairKey pair_;
  std::deque<SecretKeyBlock> blocks_;
  std::uint64_t available_ = 0;
  std::uint64_t produced_ = 0;
  std::uint64_t consumed_ = 0;
};

}  // namespace qkdnet
