#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkdnet/bits.hpp"
#include "qkdnet/estimator.hpp"

namespace qkdnet {

/// Toeplitz-matrix universal hash over GF(2).
///
/// The matrix T (out_len rows, input.size() columns) is defined by the seed
/// via T[i][j] = seed[input.size() - 1 + i - j], the standard first-column /
/// first-row construction; the seed must hold exactly
/// input.size() + out_len - 1 bits. The map is linear in the input and the
/// family is 2-universal: distinct inputs collide with probability 2^-out_len
/// over a uniform seed.
BitVector toeplitz_hash(const BitVector& input, const BitVector& seed,
                        std::size_t out_len);

/// Distilled secret-key block.
struct SecretKeyBlock {
  BitVector bits;
  std::string source_pair;  // canonical pair label, e.g. "A-B"
  std::uint64_t block_id = 0;
};

/// Privacy amplification: compress to out_len bits with the Toeplitz hash.
/// Requires out_len <= bits.size().
SecretKeyBlock privacy_amplify(const BitVector& bits,
                               const BitVector& hash_seed,
                               std::size_t out_len);

/// Length the rate formula grants a reconciled block of n sifted signal
/// bits: floor(n [ -f H2(Emu) + (Q1/Qmu)(1 - H2(e1)) ]), clamped at zero.
/// Uses the nominal error-correction efficiency f; the live pipeline
/// additionally subtracts the leakage actually measured.
std::uint64_t final_length(std::uint64_t n_sifted_signal,
                           const RateEstimate& estimate,
                           const ObservedStatistics& stats,
                           const ProtocolParams& params);

struct VerifyResult {
  bool equal = false;       // authoritative outcome
  bool hash_match = false;  // the short universal-hash exchange
  std::vector<std::size_t> mismatch_positions;  // full compare only
};

/// Equality check used after reconciliation: a 64-bit universal hash
/// exchange, plus a position-exact full comparison in test mode.
VerifyResult verify_keys(const BitVector& a, const BitVector& b,
                         std::uint64_t seed, bool full_compare = true);

}  // namespace qkdnet
