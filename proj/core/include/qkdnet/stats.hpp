#pragma once

#include <string>
#include <vector>

namespace qkdnet {

enum class StateKind { Signal, Decoy, Vacuum };

/// Intensity selection ratio signal : decoy : vacuum.
struct MixRatio {
  double signal = 6.0;
  double decoy = 3.0;
  double vacuum = 1.0;

  double total() const { return signal + decoy + vacuum; }
  double share(StateKind k) const;
};

/// Protocol constants of the weak+vacuum decoy BB84 link.
///
/// q_sift is the protocol efficiency entering the key-rate formula; for
/// basis sifting it is 1/2. f_ec is the bidirectional error-correction
/// efficiency (>= 1, nominal 1.2).
struct ProtocolParams {
  double mu = 0.6;      // signal mean photon number
  double nu = 0.2;      // decoy mean photon number
  double q_sift = 0.5;
  double f_ec = 1.2;
  MixRatio mix{};

  /// Throws std::invalid_argument on violated invariants
  /// (0 < nu < mu, 0 < q_sift <= 1, f_ec >= 1, positive mix).
  void validate() const;
};

/// Per-intensity measurement aggregate for one state.
struct IntensityStats {
  double pulses = 0.0;  // pulses sent at this intensity
  double gain = 0.0;    // detection probability Q
  double qber = 0.0;    // error fraction E
};

/// One measured link record: counts, gains and QBERs for the signal,
/// decoy and vacuum states plus the wall time of the measurement.
struct ObservedStatistics {
  IntensityStats signal;
  IntensityStats decoy;
  IntensityStats vacuum;
  double duration_s = 0.0;

  const IntensityStats& state(StateKind k) const;
  IntensityStats& state(StateKind k);

  double signal_pulse_rate_hz() const { return signal.pulses / duration_s; }

  /// Hard invariant violations (gain outside (0,1], QBER outside [0,1],
  /// non-positive counts or duration) throw std::invalid_argument.
  /// Physically odd but admissible records -- gains not strictly ordered
  /// signal > decoy > vacuum -- come back as warnings.
  std::vector<std::string> validate() const;
};

}  // namespace qkdnet
