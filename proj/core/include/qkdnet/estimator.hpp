#pragma once

#include <optional>
#include <string>

#include "qkdnet/stats.hpp"

namespace qkdnet {

/// Binary entropy H2(x) = -x log2 x - (1-x) log2 (1-x), with 0 log2 0 = 0.
/// Throws std::domain_error outside [0, 1].
double binary_entropy(double x);

/// 10-sigma statistical bounds on a measured gain: Q (1 +- 10 / sqrt(N Q)),
/// lower clamped at zero.
struct GainBounds {
  double lower = 0.0;
  double upper = 0.0;
};
GainBounds finite_statistic_bounds(double gain, double n_pulses);

/// Lower bound on the single-photon gain from the weak+vacuum decoy
/// measurements:
///
///   Q1 >= mu^2 e^(-mu) / (mu nu - nu^2)
///         * (Qv e^nu - Qmu e^mu nu^2/mu^2 - (mu^2 - nu^2)/mu^2 Qvac)
///
/// Returns nullopt (no secure estimate) when the bracketed term is not
/// positive: the record is too noisy or internally inconsistent. The bound
/// is capped at the signal gain, which the single-photon gain cannot exceed.
std::optional<double> q1_lower_bound(const ObservedStatistics& stats,
                                     const ProtocolParams& params);

/// Upper bound on the single-photon error rate, estimated from the decoy
/// state (tighter than the vacuum term when the source extinction is finite):
///
///   e1 <= mu e^(-mu) / (mu - nu) * (Emu Qmu e^mu - Ev Qv e^nu) / Q1_lower
///
/// Returns nullopt when the numerator is negative or the bound exceeds 1/2.
std::optional<double> e1_upper_bound(const ObservedStatistics& stats,
                                     const ProtocolParams& params,
                                     double q1_lower);

/// Whether key_rate folds the 10-sigma gain bounds into the estimate.
/// Ignore uses measured gains directly (valid at field data sizes where the
/// bound spread is O(1e-2) of the gain); Pessimistic substitutes the
/// worst-case bound for every term: decoy gain low and signal/vacuum gains
/// high in the Q1 bound, signal error rate high and decoy error rate low in
/// the e1 bound.
enum class FluctuationMode { Ignore, Pessimistic };

struct RateEstimate {
  bool secure = false;
  std::string diagnostic;  // set when no secure key can be distilled

  double q1_lower = 0.0;            // Q1 lower bound (per emitted signal pulse)
  double e1_upper = 0.0;            // single-photon error upper bound
  double r_per_signal_pulse = 0.0;  // secure fraction per emitted signal pulse
  double signal_pulse_rate_hz = 0.0;
  double final_rate_bps = 0.0;
  double sifted_rate_bps = 0.0;
};

/// Full secure-rate estimate for one measured record:
///
///   R = q { -Qmu f H2(Emu) + Q1_lower [1 - H2(e1_upper)] }
///
/// final_rate_bps scales R by the measured signal pulse rate; sifted_rate_bps
/// is q Qmu times the same rate. A no-secure-estimate outcome is reported as
/// final rate zero with a diagnostic rather than thrown: noisy field records
/// are data, not programming errors.
RateEstimate key_rate(const ObservedStatistics& stats,
                      const ProtocolParams& params,
                      FluctuationMode mode = FluctuationMode::Ignore);

}  // namespace qkdnet
