#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkdnet/bits.hpp"
#include "qkdnet/sift.hpp"

namespace qkdnet {

struct CascadeConfig {
  int passes = 4;                    // block size doubles each pass
  std::size_t verify_hash_bits = 64; // final confirmation hash width
};

/// One block-parity comparison between the two parties: both parities over
/// the permuted index range [offset, offset + length) of pass `pass`.
/// Each comparison discloses one bit about the reference key (the noisy
/// side's parity adds only channel-noise information), so the leakage
/// ledger counts one bit per record.
struct ParityRecord {
  std::uint8_t pass = 0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
  std::uint8_t alice_parity = 0;
  std::uint8_t bob_parity = 0;
};

/// Full parity-exchange transcript of one reconciliation session.
///
/// Binary framing (little endian): magic "QCTR", u16 version = 1,
/// u32 record count, then per record u8 pass, u32 offset, u32 length,
/// u8 parities (bit 0 = reference side, bit 1 = noisy side).
struct Transcript {
  std::vector<ParityRecord> records;

  std::vector<std::uint8_t> serialize() const;
  static Transcript deserialize(const std::vector<std::uint8_t>& bytes);
};

struct ReconciliationResult {
  BitVector corrected_bits;       // the noisy side's key after reconciliation
  std::uint64_t bits_leaked = 0;  // parity bits disclosed (= transcript size)
  int passes_run = 0;
  bool verified = false;          // final hash comparison outcome
  std::string diagnostic;         // set when residual errors were detected
  Transcript transcript;
};

/// Cascade error reconciliation, original variant: first-pass block size
/// ceil(0.73 / estimated QBER), size doubling per pass, a fresh seeded
/// permutation from pass two on, binary-search error localization, and full
/// backtracking of discovered errors through every earlier pass.
///
/// Only the receiver's copy converges; the sender's key is never modified.
/// The session ends with a verify_hash_bits universal-hash comparison; on
/// mismatch the result carries verified = false plus a diagnostic and the
/// caller is expected to discard the block. When the first pass finds no
/// mismatch at all, the hash comparison runs immediately and a match ends
/// the session after pass one.
///
/// Requires estimated_qber in (0, 0.15] and at least two bits of key.
ReconciliationResult cascade_reconcile(const SiftedKeyPair& pair,
                                       std::uint64_t seed,
                                       const CascadeConfig& config = {});

}  // namespace qkdnet
