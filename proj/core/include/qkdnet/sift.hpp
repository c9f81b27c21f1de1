#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qkdnet/bits.hpp"

namespace qkdnet {

class Rng;

/// One prepared pulse on the sender side.
struct SenderEvent {
  std::uint8_t basis = 0;  // 0 or 1
  std::uint8_t bit = 0;
};

/// One gated detection slot on the receiver side.
struct ReceiverEvent {
  bool detected = false;
  std::uint8_t basis = 0;
  std::uint8_t bit = 0;
};

/// Basis-sifted, still error-laden key pair. estimated_qber is an external
/// estimate (from the decoy statistics in the live pipeline); it seeds the
/// reconciliation block size.
struct SiftedKeyPair {
  BitVector sender_bits;
  BitVector receiver_bits;
  double estimated_qber = 0.0;
};

/// Keeps positions that were detected and where the bases agree. Streams
/// must be index aligned (throws std::invalid_argument otherwise). For
/// uniform random bases the kept fraction is 1/2 of the detections.
SiftedKeyPair sift(std::span<const SenderEvent> sender,
                   std::span<const ReceiverEvent> receiver);

/// Synthesizes index-aligned event streams for n detected pulses with
/// uniform bases/bits and a receiver bit-flip probability of qber.
void generate_correlated_events(std::size_t n_detections, double qber,
                                Rng& rng, std::vector<SenderEvent>& sender,
                                std::vector<ReceiverEvent>& receiver);

}  // namespace qkdnet
