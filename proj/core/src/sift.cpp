#include "qkdnet/sift.hpp"

#include <stdexcept>

#include "qkdnet/rng.hpp"

namespace qkdnet {

SiftedKeyPair sift(std::span<const SenderEvent> sender,
                   std::span<const ReceiverEvent> receiver) {
  if (sender.size() != receiver.size()) {
    throw std::invalid_argument("sift: event streams are not index aligned");
  }
  SiftedKeyPair pair;
  for (std::size_t i = 0; i < sender.size(); ++i) {
    if (!receiver[i].detected) continue;
    if (sender[i].basis != receiver[i].basis) continue;
    pair.sender_bits.push_back(sender[i].bit & 1);
    pair.receiver_bits.push_back(receiver[i].bit & 1);
  }
  return pair;
}

void generate_correlated_events(std::size_t n_detections, double qber,
                                Rng& rng, std::vector<SenderEvent>& sender,
                                std::vector<ReceiverEvent>& receiver) {
  sender.resize(n_detections);
  receiver.resize(n_detections);
  for (std::size_t i = 0; i < n_detections; ++i) {
    const std::uint64_t r = rng();
    const auto bit = static_cast<std::uint8_t>(r & 1);
    const auto basis_s = static_cast<std::uint8_t>((r >> 1) & 1);
    const auto basis_r = static_cast<std::uint8_t>((r >> 2) & 1);
    sender[i] = SenderEvent{basis_s, bit};
    const bool flip = bernoulli(rng, qber);
    receiver[i] = ReceiverEvent{true, basis_r,
                                static_cast<std::uint8_t>(bit ^ (flip ? 1 : 0))};
  }
}

}  // namespace qkdnet
