#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qkdnet/stats.hpp"

namespace qkdnet {

enum class FiberScheme { FourFiber, SingleFiber };

/// Lossy fiber channel. crosstalk_noise_prob models Raman scattering and
/// direct crosstalk of the single-fiber WDM scheme as a flat extra
/// background click probability per gate; it must be zero for four-fiber.
struct ChannelModel {
  double length_km = 0.0;
  double attenuation_db = 0.0;  // total insertion loss
  FiberScheme scheme = FiberScheme::FourFiber;
  double crosstalk_noise_prob = 0.0;

  void validate() const;
};

struct DetectorModel {
  double efficiency = 0.10;
  double dark_count_prob = 1e-6;  // per-gate click probability
  double vacuum_error_rate = 0.5; // error rate assigned to noise clicks
};

struct InterferometerModel {
  double visibility = 0.9867;
  double misalignment_error() const { return (1.0 - visibility) / 2.0; }
};

/// Per-intensity behaviour the Monte Carlo core draws from: probability of
/// a click per pulse and probability of a bit error given a click.
struct ClickProfile {
  double click = 0.0;
  double error_given_click = 0.0;
};

struct SessionProfile {
  ClickProfile signal;
  ClickProfile decoy;
  ClickProfile vacuum;

  const ClickProfile& state(StateKind k) const;
};

struct LinkModel {
  ChannelModel channel;
  DetectorModel detector;
  InterferometerModel interferometer;

  /// Models the finite (25 dB) extinction ratio of the intensity modulator:
  /// the vacuum state carries a residual intensity mu * 10^-2.5. Off by
  /// default.
  bool vacuum_leakage = false;

  /// Emitted pulse clock over all intensities.
  double pulse_rate_hz = 5.0e6;
  /// Measured signal pulse rate of a calibrated link; overrides the clock
  /// when deriving session durations so that rate estimates reproduce the
  /// source record.
  std::optional<double> measured_signal_rate_hz;

  /// Calibrated per-intensity click/error probabilities taken verbatim from
  /// the source record. When present these drive sessions instead of the
  /// analytic channel model; the analytic fit cannot reproduce decoy-state
  /// gains field data disagrees with (see calibrate_link).
  std::optional<SessionProfile> measured_profile;

  /// Channel transmittance x detector efficiency.
  double eta() const;
  /// Background click probability Y0 = dark counts + crosstalk.
  double background_click_prob() const;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// dB insertion loss to linear transmittance, 10^(-dB/10).
double transmittance(double attenuation_db);

/// Analytic per-intensity profile of the weak-coherent-pulse channel model:
///
///   Q_x = Y0 + 1 - e^(-eta x)
///   E_x Q_x = vacuum_error_rate * Y0 + e_mis (1 - e^(-eta x))
///
/// Ignores any calibrated overrides on the link.
SessionProfile analytic_profile(const LinkModel& link,
                                const ProtocolParams& params);

/// Profile a session actually samples from: the calibrated per-intensity
/// probabilities when present, the analytic model otherwise.
SessionProfile session_profile(const LinkModel& link,
                               const ProtocolParams& params);

/// Expected ObservedStatistics of a session of n_pulses (no sampling).
ObservedStatistics expected_statistics(const LinkModel& link,
                                       const ProtocolParams& params,
                                       double n_pulses = 1e9);

/// Monte Carlo session: per pulse, draws the intensity by the mix ratio,
/// a detection event with the profile's click probability and an error flag
/// given a click; aggregates counts into gains and QBERs. Bit-identical for
/// a fixed seed.
ObservedStatistics simulate_session(const LinkModel& link,
                                    const ProtocolParams& params,
                                    std::uint64_t n_pulses,
                                    std::uint64_t seed);

/// Inverts the analytic model on a measured record:
///
///   Y0 = Q_vac,  eta = -ln(1 - (Q_mu - Y0)) / mu,
///   e_mis = (E_mu Q_mu - vacuum_error_rate * Y0) / (Q_mu - Y0)
///
/// and keeps the full record as the link's calibrated per-intensity profile
/// so simulated sessions reproduce all of its rate-relevant observables.
/// Throws CalibrationError when Q_mu <= Q_vac.
LinkModel calibrate_link(const ObservedStatistics& target,
                         const ProtocolParams& params,
                         FiberScheme scheme = FiberScheme::FourFiber);

}  // namespace qkdnet
