#include "qkdnet/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkdnet {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

GainBounds finite_statistic_bounds(double gain, double n_pulses) {
  if (!(gain > 0.0) || !(n_pulses > 0.0)) {
    throw std::invalid_argument("finite_statistic_bounds: gain and pulses must be > 0");
  }
  const double half_width = 10.0 / std::sqrt(n_pulses * gain);
  return GainBounds{std::max(0.0, gain * (1.0 - half_width)),
                    gain * (1.0 + half_width)};
}

namespace {

std::optional<double> q1_from_gains(double q_mu, double q_nu, double q_vac,
                                    const ProtocolParams& p) {
  const double mu = p.mu;
  const double nu = p.nu;
  const double bracket = q_nu * std::exp(nu) -
                         q_mu * std::exp(mu) * (nu * nu) / (mu * mu) -
                         (mu * mu - nu * nu) / (mu * mu) * q_vac;
  if (!(bracket > 0.0)) return std::nullopt;
  const double q1 = mu * mu * std::exp(-mu) / (mu * nu - nu * nu) * bracket;
  return std::min(q1, q_mu);
}

std::optional<double> e1_from_error_gains(double eq_mu, double eq_nu,
                                          double q1_lower,
                                          const ProtocolParams& p) {
  const double numerator = eq_mu * std::exp(p.mu) - eq_nu * std::exp(p.nu);
  if (numerator < 0.0) return std::nullopt;
  const double e1 = p.mu * std::exp(-p.mu) / (p.mu - p.nu) * numerator / q1_lower;
  if (e1 > 0.5) return std::nullopt;
  return e1;
}

}  // namespace

std::optional<double> q1_lower_bound(const ObservedStatistics& stats,
                                     const ProtocolParams& params) {
  params.validate();
  return q1_from_gains(stats.signal.gain, stats.decoy.gain, stats.vacuum.gain,
                       params);
}

std::optional<double> e1_upper_bound(const ObservedStatistics& stats,
                                     const ProtocolParams& params,
                                     double q1_lower) {
  params.validate();
  if (!(q1_lower > 0.0)) {
    throw std::invalid_argument("e1_upper_bound: requires q1_lower > 0");
  }
  return e1_from_error_gains(stats.signal.qber * stats.signal.gain,
                             stats.decoy.qber * stats.decoy.gain, q1_lower,
                             params);
}

RateEstimate key_rate(const ObservedStatistics& stats,
                      const ProtocolParams& params, FluctuationMode mode) {
  params.validate();

  RateEstimate est;
  est.signal_pulse_rate_hz = stats.signal_pulse_rate_hz();
  est.sifted_rate_bps =
      params.q_sift * stats.signal.gain * est.signal_pulse_rate_hz;

  double q_mu = stats.signal.gain;
  double q_nu = stats.decoy.gain;
  double q_vac = stats.vacuum.gain;
  double eq_mu = stats.signal.qber * stats.signal.gain;
  double eq_nu = stats.decoy.qber * stats.decoy.gain;
  if (mode == FluctuationMode::Pessimistic) {
    q_mu = finite_statistic_bounds(q_mu, stats.signal.pulses).upper;
    q_nu = finite_statistic_bounds(q_nu, stats.decoy.pulses).lower;
    q_vac = finite_statistic_bounds(q_vac, stats.vacuum.pulses).upper;
    if (eq_mu > 0.0) {
      eq_mu = finite_statistic_bounds(eq_mu, stats.signal.pulses).upper;
    }
    if (eq_nu > 0.0) {
      eq_nu = finite_statistic_bounds(eq_nu, stats.decoy.pulses).lower;
    }
  }

  const auto q1 = q1_from_gains(q_mu, q_nu, q_vac, params);
  if (!q1) {
    est.diagnostic =
        "no secure estimate: single-photon gain bound is not positive";
    return est;
  }
  est.q1_lower = *q1;

  const auto e1 = e1_from_error_gains(eq_mu, eq_nu, *q1, params);
  if (!e1) {
    est.diagnostic =
        "no secure estimate: single-photon error bound is negative or above 1/2";
    return est;
  }
  est.e1_upper = *e1;

  const double r = params.q_sift *
                   (-stats.signal.gain * params.f_ec *
                        binary_entropy(stats.signal.qber) +
                    est.q1_lower * (1.0 - binary_entropy(est.e1_upper)));
  if (!(r > 0.0)) {
    est.diagnostic = "no secure estimate: rate formula is not positive";
    return est;
  }

  est.secure = true;
  est.r_per_signal_pulse = r;
  est.final_rate_bps = r * est.signal_pulse_rate_hz;
  return est;
}

}  // namespace qkdnet
