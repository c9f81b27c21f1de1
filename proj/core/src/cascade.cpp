#include "qkdnet/cascade.hpp"

#include <cmath>
#include <cstring>
#include <deque>
#include <stdexcept>

#include "qkdnet/privacy.hpp"
#include "qkdnet/rng.hpp"

namespace qkdnet {

namespace {

constexpr char kTranscriptMagic[4] = {'Q', 'C', 'T', 'R'};
constexpr std::uint16_t kTranscriptVersion = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> Transcript::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(4 + 2 + 4 + records.size() * 10);
  out.insert(out.end(), kTranscriptMagic, kTranscriptMagic + 4);
  put_u16(out, kTranscriptVersion);
  put_u32(out, static_cast<std::uint32_t>(records.size()));
  for (const auto& r : records) {
    out.push_back(r.pass);
    put_u32(out, r.offset);
    put_u32(out, r.length);
    out.push_back(static_cast<std::uint8_t>((r.alice_parity & 1) |
                                            ((r.bob_parity & 1) << 1)));
  }
  return out;
}

Transcript Transcript::deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 10 || std::memcmp(bytes.data(), kTranscriptMagic, 4) != 0) {
    throw std::invalid_argument("Transcript: bad magic");
  }
  const std::uint16_t version =
      static_cast<std::uint16_t>(bytes[4]) |
      (static_cast<std::uint16_t>(bytes[5]) << 8);
  if (version != kTranscriptVersion) {
    throw std::invalid_argument("Transcript: unsupported version");
  }
  const std::uint32_t count = get_u32(bytes.data() + 6);
  if (bytes.size() != 10 + static_cast<std::size_t>(count) * 10) {
    throw std::invalid_argument("Transcript: truncated");
  }
  Transcript t;
  t.records.reserve(count);
  const std::uint8_t* p = bytes.data() + 10;
  for (std::uint32_t i = 0; i < count; ++i, p += 10) {
    ParityRecord r;
    r.pass = p[0];
    r.offset = get_u32(p + 1);
    r.length = get_u32(p + 5);
    r.alice_parity = p[9] & 1;
    r.bob_parity = (p[9] >> 1) & 1;
    t.records.push_back(r);
  }
  return t;
}

namespace {

// Plays both parties of the pairwise exchange; every parity comparison goes
// through compare_range so the transcript is the single source of truth for
// leakage accounting.
class CascadeSession {
 public:
  CascadeSession(const std::vector<std::uint8_t>& alice,
                 std::vector<std::uint8_t>& bob, Transcript& transcript)
      : alice_(alice), bob_(bob), transcript_(transcript), n_(alice.size()) {}

  struct Pass {
    std::size_t block_size = 0;
    std::vector<std::uint32_t> perm;  // permuted position -> bit index
    std::vector<std::uint32_t> pos;   // bit index -> permuted position
    std::vector<std::uint8_t> diff;   // known parity mismatch per block
    std::deque<std::uint32_t> pending;
  };

  // Exchanges all top-level block parities of a new pass. Returns the
  // number of mismatched blocks.
  std::size_t run_pass(std::size_t block_size, std::uint64_t perm_seed,
                       bool permute) {
    Pass pass;
    pass.block_size = block_size;
    pass.perm.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) pass.perm[i] = i;
    if (permute) {
      Rng rng(perm_seed);
      deterministic_shuffle(pass.perm, rng);
    }
    pass.pos.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) pass.pos[pass.perm[i]] = i;

    const std::size_t blocks = (n_ + block_size - 1) / block_size;
    pass.diff.assign(blocks, 0);
    passes_.push_back(std::move(pass));
    const auto p = static_cast<std::uint8_t>(passes_.size() - 1);

    std::size_t mismatched = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::uint32_t off = static_cast<std::uint32_t>(b * block_size);
      const auto len = static_cast<std::uint32_t>(
          std::min(block_size, n_ - off));
      if (compare_range(p, off, len)) {
        passes_[p].diff[b] = 1;
        passes_[p].pending.push_back(static_cast<std::uint32_t>(b));
        ++mismatched;
      }
    }
    return mismatched;
  }

  // Resolves every known mismatched block, smallest block size first, and
  // cascades each correction through all passes exchanged so far.
  std::size_t drain() {
    std::size_t corrected = 0;
    for (;;) {
      Pass* pass = nullptr;
      std::uint8_t pass_idx = 0;
      for (std::size_t p = 0; p < passes_.size(); ++p) {
        if (!passes_[p].pending.empty()) {
          pass = &passes_[p];
          pass_idx = static_cast<std::uint8_t>(p);
          break;
        }
      }
      if (!pass) return corrected;

      const std::uint32_t b = pass->pending.front();
      pass->pending.pop_front();
      if (!pass->diff[b]) continue;  // resolved by an earlier cascade

      const auto off = static_cast<std::uint32_t>(b * pass->block_size);
      const auto len =
          static_cast<std::uint32_t>(std::min(pass->block_size, n_ - off));
      const std::uint32_t bit = binary_search(pass_idx, off, len);
      bob_[bit] ^= 1;
      ++corrected;

      for (std::size_t p = 0; p < passes_.size(); ++p) {
        Pass& other = passes_[p];
        const std::uint32_t ob = other.pos[bit] /
                                 static_cast<std::uint32_t>(other.block_size);
        other.diff[ob] ^= 1;
        if (other.diff[ob]) other.pending.push_back(ob);
      }
    }
  }

 private:
  bool compare_range(std::uint8_t pass_idx, std::uint32_t off,
                     std::uint32_t len) {
    const Pass& pass = passes_[pass_idx];
    std::uint8_t pa = 0;
    std::uint8_t pb = 0;
    for (std::uint32_t i = off; i < off + len; ++i) {
      pa ^= alice_[pass.perm[i]];
      pb ^= bob_[pass.perm[i]];
    }
    transcript_.records.push_back(ParityRecord{pass_idx, off, len, pa, pb});
    return pa != pb;
  }

  // Locates one error inside a range whose parities are known to differ.
  std::uint32_t binary_search(std::uint8_t pass_idx, std::uint32_t off,
                              std::uint32_t len) {
    while (len > 1) {
      const std::uint32_t half = len / 2;
      if (compare_range(pass_idx, off, half)) {
        len = half;
      } else {
        off += half;
        len -= half;
      }
    }
    return passes_[pass_idx].perm[off];
  }

  const std::vector<std::uint8_t>& alice_;
  std::vector<std::uint8_t>& bob_;
  Transcript& transcript_;
  std::size_t n_;
  std::vector<Pass> passes_;
};

bool hashes_match(const BitVector& a, const BitVector& b, std::uint64_t seed,
                  std::size_t hash_bits) {
  Rng rng(derive_seed(seed, 0x76657269ULL));
  const BitVector hash_seed =
      BitVector::random(a.size() + hash_bits - 1, rng);
  return toeplitz_hash(a, hash_seed, hash_bits) ==
         toeplitz_hash(b, hash_seed, hash_bits);
}

}  // namespace

ReconciliationResult cascade_reconcile(const SiftedKeyPair& pair,
                                       std::uint64_t seed,
                                       const CascadeConfig& config) {
  const std::size_t n = pair.sender_bits.size();
  if (pair.receiver_bits.size() != n) {
    throw std::invalid_argument("cascade_reconcile: key length mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("cascade_reconcile: key too short");
  }
  if (!(pair.estimated_qber > 0.0 && pair.estimated_qber <= 0.15)) {
    throw std::invalid_argument(
        "cascade_reconcile: estimated QBER must be in (0, 0.15]");
  }

  std::vector<std::uint8_t> alice(n);
  std::vector<std::uint8_t> bob(n);
  for (std::size_t i = 0; i < n; ++i) {
    alice[i] = pair.sender_bits.get(i);
    bob[i] = pair.receiver_bits.get(i);
  }

  ReconciliationResult result;
  CascadeSession session(alice, bob, result.transcript);

  std::size_t k = static_cast<std::size_t>(
      std::ceil(0.73 / pair.estimated_qber));
  k = std::min(std::max<std::size_t>(k, 1), n);

  std::size_t total_corrected = 0;
  bool verified_early = false;
  for (int p = 0; p < config.passes; ++p) {
    const std::size_t mismatched =
        session.run_pass(k, derive_seed(seed, 0x70617373ULL + p), p > 0);
    total_corrected += session.drain();
    result.passes_run = p + 1;

    if (p == 0 && mismatched == 0 && total_corrected == 0 &&
        hashes_match(pair.sender_bits, pair.receiver_bits, seed,
                     config.verify_hash_bits)) {
      verified_early = true;
      break;
    }
    k = std::min(k * 2, n);
  }

  BitVector corrected(n);
  for (std::size_t i = 0; i < n; ++i) corrected.set(i, bob[i]);
  result.corrected_bits = std::move(corrected);
  result.bits_leaked = result.transcript.records.size();

  result.verified =
      verified_early || hashes_match(pair.sender_bits, result.corrected_bits,
                                     seed, config.verify_hash_bits);
  if (!result.verified) {
    result.diagnostic =
        "residual errors detected by the verification hash; discard block";
  }
  return result;
}

}  // namespace qkdnet
