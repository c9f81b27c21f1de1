#include "qkdnet/keypool.hpp"

namespace qkdnet {

void KeyPool::deposit(SecretKeyBlock block) {
  if (block.bits.empty()) return;
  available_ += block.bits.size();
  produced_ += block.bits.size();
  blocks_.push_back(std::move(block));
}

BitVector KeyPool::consume(std::uint64_t nbits) {
  if (nbits > available_) {
    throw StarvationError(pair_.label(), nbits, available_);
  }
  BitVector out;
  while (out.size() < nbits) {
    SecretKeyBlock& front = blocks_.front();
    const std::uint64_t want = nbits - out.size();
    if (front.bits.size() <= want) {
      out.append(front.bits);
      blocks_.pop_front();
    } else {
      out.append(front.bits.slice(0, want));
      front.bits = front.bits.slice(want, front.bits.size() - want);
    }
  }
  available_ -= nbits;
  consumed_ += nbits;
  return out;
}

}  // namespace qkdnet
