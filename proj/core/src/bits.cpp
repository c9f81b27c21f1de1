#include "qkdnet/bits.hpp"

#include <bit>
#include <stdexcept>

#include "qkdnet/rng.hpp"

namespace qkdnet {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t nbits) {
  return (nbits + kWordBits - 1) / kWordBits;
}
}  // namespace

BitVector::BitVector(std::size_t nbits, bool value)
    : words_(words_for(nbits), value ? ~0ULL : 0ULL), nbits_(nbits) {
  mask_tail();
}

BitVector BitVector::random(std::size_t nbits, Rng& rng) {
  BitVector v(nbits);
  for (auto& word : v.words_) word = rng();
  v.mask_tail();
  return v;
}

BitVector BitVector::from_string(const std::string& zeros_and_ones) {
  BitVector v;
  for (char c : zeros_and_ones) {
    if (c == '0') {
      v.push_back(false);
    } else if (c == '1') {
      v.push_back(true);
    } else {
      throw std::invalid_argument("BitVector::from_string: expected 0/1");
    }
  }
  return v;
}

bool BitVector::get(std::size_t i) const {
  if (i >= nbits_) throw std::out_of_range("BitVector::get");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1ULL;
}

void BitVector::set(std::size_t i, bool v) {
  if (i >= nbits_) throw std::out_of_range("BitVector::set");
  const std::uint64_t mask = 1ULL << (i % kWordBits);
  if (v) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  if (i >= nbits_) throw std::out_of_range("BitVector::flip");
  words_[i / kWordBits] ^= 1ULL << (i % kWordBits);
}

void BitVector::push_back(bool v) {
  if (nbits_ % kWordBits == 0) words_.push_back(0);
  ++nbits_;
  if (v) set(nbits_ - 1, true);
}

void BitVector::append(const BitVector& other) {
  for (std::size_t i = 0; i < other.size(); ++i) push_back(other.get(i));
}

BitVector BitVector::slice(std::size_t first, std::size_t count) const {
  if (first + count > nbits_) throw std::out_of_range("BitVector::slice");
  BitVector out(count);
  for (std::size_t i = 0; i < count; ++i) out.set(i, get(first + i));
  return out;
}

void BitVector::xor_with(const BitVector& other) {
  if (other.nbits_ != nbits_) {
    throw std::invalid_argument("BitVector::xor_with: length mismatch");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
}

bool BitVector::parity() const {
  std::uint64_t acc = 0;
  for (auto word : words_) acc ^= word;
  return std::popcount(acc) & 1;
}

std::size_t BitVector::count_ones() const {
  std::size_t n = 0;
  for (auto word : words_) n += static_cast<std::size_t>(std::popcount(word));
  return n;
}

std::size_t BitVector::hamming_distance(const BitVector& other) const {
  if (other.nbits_ != nbits_) {
    throw std::invalid_argument("BitVector::hamming_distance: length mismatch");
  }
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    n += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  }
  return n;
}

std::vector<std::size_t> BitVector::mismatch_positions(const BitVector& other) const {
  if (other.nbits_ != nbits_) {
    throw std::invalid_argument("BitVector::mismatch_positions: length mismatch");
  }
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t diff = words_[w] ^ other.words_[w];
    while (diff) {
      const int bit = std::countr_zero(diff);
      out.push_back(w * kWordBits + static_cast<std::size_t>(bit));
      diff &= diff - 1;
    }
  }
  return out;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
  std::vector<std::uint8_t> out((nbits_ + 7) / 8, 0);
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<std::uint8_t>((words_[b / 8] >> ((b % 8) * 8)) & 0xff);
  }
  return out;
}

bool BitVector::operator==(const BitVector& other) const {
  return nbits_ == other.nbits_ && words_ == other.words_;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(nbits_);
  for (std::size_t i = 0; i < nbits_; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

void BitVector::mask_tail() {
  const std::size_t tail = nbits_ % kWordBits;
  if (tail != 0 && !words_.empty()) {
    words_.back() &= (~0ULL) >> (kWordBits - tail);
  }
}

}  // namespace qkdnet
