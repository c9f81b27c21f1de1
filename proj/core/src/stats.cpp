#include "qkdnet/stats.hpp"

#include <sstream>
#include <stdexcept>

namespace qkdnet {

double MixRatio::share(StateKind k) const {
  switch (k) {
    case StateKind::Signal: return signal / total();
    case StateKind::Decoy: return decoy / total();
    case StateKind::Vacuum: return vacuum / total();
  }
  return 0.0;
}

void ProtocolParams::validate() const {
  if (!(nu > 0.0 && nu < mu)) {
    throw std::invalid_argument("ProtocolParams: requires 0 < nu < mu");
  }
  if (!(q_sift > 0.0 && q_sift <= 1.0)) {
    throw std::invalid_argument("ProtocolParams: requires 0 < q_sift <= 1");
  }
  if (!(f_ec >= 1.0)) {
    throw std::invalid_argument("ProtocolParams: requires f_ec >= 1");
  }
  if (!(mix.signal > 0.0 && mix.decoy >= 0.0 && mix.vacuum >= 0.0) ||
      !(mix.total() > 0.0)) {
    throw std::invalid_argument("ProtocolParams: mix components must be >= 0 with signal > 0");
  }
}

const IntensityStats& ObservedStatistics::state(StateKind k) const {
  switch (k) {
    case StateKind::Signal: return signal;
    case StateKind::Decoy: return decoy;
    case StateKind::Vacuum: return vacuum;
  }
  return signal;
}

IntensityStats& ObservedStatistics::state(StateKind k) {
  switch (k) {
    case StateKind::Signal: return signal;
    case StateKind::Decoy: return decoy;
    case StateKind::Vacuum: return vacuum;
  }
  return signal;
}

std::vector<std::string> ObservedStatistics::validate() const {
  auto check_state = [](const IntensityStats& s, const char* name) {
    if (!(s.pulses > 0.0)) {
      throw std::invalid_argument(std::string("ObservedStatistics: ") + name +
                                  " pulse count must be > 0");
    }
    if (!(s.gain > 0.0 && s.gain <= 1.0)) {
      throw std::invalid_argument(std::string("ObservedStatistics: ") + name +
                                  " gain must be in (0, 1]");
    }
    if (!(s.qber >= 0.0 && s.qber <= 1.0)) {
      throw std::invalid_argument(std::string("ObservedStatistics: ") + name +
                                  " QBER must be in [0, 1]");
    }
  };
  check_state(signal, "signal");
  check_state(decoy, "decoy");
  check_state(vacuum, "vacuum");
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("ObservedStatistics: duration must be > 0");
  }

  std::vector<std::string> warnings;
  if (!(signal.gain > decoy.gain && decoy.gain > vacuum.gain)) {
    std::ostringstream os;
    os << "gains not ordered signal > decoy > vacuum (" << signal.gain << ", "
       << decoy.gain << ", " << vacuum.gain << ")";
    warnings.push_back(os.str());
  }
  return warnings;
}

}  // namespace qkdnet
