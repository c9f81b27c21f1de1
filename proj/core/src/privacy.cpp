#include "qkdnet/privacy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qkdnet/rng.hpp"

namespace qkdnet {

namespace {

// 64 bits of `words` starting at bit offset `off`; bits past the end read 0.
std::uint64_t extract_word(const std::vector<std::uint64_t>& words,
                           std::size_t off) {
  const std::size_t wi = off / 64;
  const std::size_t shift = off % 64;
  std::uint64_t out = wi < words.size() ? words[wi] >> shift : 0;
  if (shift != 0 && wi + 1 < words.size()) {
    out |= words[wi + 1] << (64 - shift);
  }
  return out;
}

}  // namespace

BitVector toeplitz_hash(const BitVector& input, const BitVector& seed,
                        std::size_t out_len) {
  const std::size_t n = input.size();
  if (out_len == 0) return BitVector{};
  if (seed.size() != n + out_len - 1) {
    throw std::invalid_argument(
        "toeplitz_hash: seed must hold input + output - 1 bits");
  }

  // Output bit i is the GF(2) convolution (input (*) seed)[n - 1 + i].
  // With the seed reversed, that is a dot product of the input against a
  // sliding window: out[i] = parity( input & reversed_seed >> (m - 1 - i) ).
  BitVector reversed(seed.size());
  for (std::size_t t = 0; t < seed.size(); ++t) {
    reversed.set(t, seed.get(seed.size() - 1 - t));
  }

  const auto& x_words = input.words();
  const auto& s_words = reversed.words();
  BitVector out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t base = out_len - 1 - i;
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < x_words.size(); ++w) {
      acc ^= x_words[w] & extract_word(s_words, base + 64 * w);
    }
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

SecretKeyBlock privacy_amplify(const BitVector& bits,
                               const BitVector& hash_seed,
                               std::size_t out_len) {
  if (out_len > bits.size()) {
    throw std::invalid_argument(
        "privacy_amplify: output cannot exceed the input length");
  }
  SecretKeyBlock block;
  block.bits = toeplitz_hash(bits, hash_seed, out_len);
  return block;
}

std::uint64_t final_length(std::uint64_t n_sifted_signal,
                           const RateEstimate& estimate,
                           const ObservedStatistics& stats,
                           const ProtocolParams& params) {
  if (!estimate.secure) return 0;
  const double fraction =
      -params.f_ec * binary_entropy(stats.signal.qber) +
      (estimate.q1_lower / stats.signal.gain) *
          (1.0 - binary_entropy(estimate.e1_upper));
  if (!(fraction > 0.0)) return 0;
  return static_cast<std::uint64_t>(
      std::floor(static_cast<double>(n_sifted_signal) * fraction));
}

VerifyResult verify_keys(const BitVector& a, const BitVector& b,
                         std::uint64_t seed, bool full_compare) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("verify_keys: length mismatch");
  }
  VerifyResult result;
  constexpr std::size_t kHashBits = 64;
  Rng rng(derive_seed(seed, 0x6b766679ULL));
  const BitVector hash_seed = BitVector::random(a.size() + kHashBits - 1, rng);
  result.hash_match =
      toeplitz_hash(a, hash_seed, kHashBits) ==
      toeplitz_hash(b, hash_seed, kHashBits);
  if (full_compare) {
    result.mismatch_positions = a.mismatch_positions(b);
    result.equal = result.mismatch_positions.empty();
  } else {
    result.equal = result.hash_match;
  }
  return result;
}

}  // namespace qkdnet
