#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qkdnet {

class Rng;

/// Packed bit sequence with an explicit bit length.
///
/// Key material is length-exact: operations never observe or expose the
/// unused tail of the last word, so byte padding cannot leak into keys.
/// Bit i lives at words()[i / 64], bit position i % 64 (LSB first).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t nbits, bool value = false);

  static BitVector random(std::size_t nbits, Rng& rng);
  static BitVector from_string(const std::string& zeros_and_ones);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);
  void flip(std::size_t i);

  void push_back(bool v);
  void append(const BitVector& other);
  BitVector slice(std::size_t first, std::size_t count) const;

  /// XOR with an equal-length vector (throws std::invalid_argument).
  void xor_with(const BitVector& other);

  bool parity() const;
  std::size_t count_ones() const;
  std::size_t hamming_distance(const BitVector& other) const;
  std::vector<std::size_t> mismatch_positions(const BitVector& other) const;

  /// Bits packed LSB-first into bytes; final partial byte zero-padded.
  std::vector<std::uint8_t> to_bytes() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const BitVector& other) const;
  std::string to_string() const;

 private:
  void mask_tail();

  std::vector<std::uint64_t> words_;
  std::size_t nbits_ = 0;
};

}  // namespace qkdnet
