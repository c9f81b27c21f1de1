#include "qkdnet/link.hpp"

#include <cmath>

#include "qkdnet/rng.hpp"

namespace qkdnet {

namespace {
// 25 dB modulator extinction, expressed as a fraction of the signal intensity.
constexpr double kExtinctionRatio = 3.1622776601683794e-3;  // 10^-2.5
}  // namespace

void ChannelModel::validate() const {
  if (!(attenuation_db >= 0.0)) {
    throw std::invalid_argument("ChannelModel: attenuation must be >= 0 dB");
  }
  if (scheme == FiberScheme::FourFiber && crosstalk_noise_prob != 0.0) {
    throw std::invalid_argument(
        "ChannelModel: four-fiber scheme carries no crosstalk noise");
  }
  if (!(crosstalk_noise_prob >= 0.0 && crosstalk_noise_prob <= 1.0)) {
    throw std::invalid_argument("ChannelModel: crosstalk_noise_prob in [0, 1]");
  }
}

const ClickProfile& SessionProfile::state(StateKind k) const {
  switch (k) {
    case StateKind::Signal: return signal;
    case StateKind::Decoy: return decoy;
    case StateKind::Vacuum: return vacuum;
  }
  return signal;
}

double LinkModel::eta() const {
  return transmittance(channel.attenuation_db) * detector.efficiency;
}

double LinkModel::background_click_prob() const {
  return detector.dark_count_prob + channel.crosstalk_noise_prob;
}

double transmittance(double attenuation_db) {
  if (!(attenuation_db >= 0.0)) {
    throw std::invalid_argument("transmittance: attenuation must be >= 0 dB");
  }
  return std::pow(10.0, -attenuation_db / 10.0);
}

namespace {

ClickProfile analytic_state(const LinkModel& link, double intensity) {
  const double y0 = link.background_click_prob();
  const double transmitted = 1.0 - std::exp(-link.eta() * intensity);
  const double q = y0 + transmitted;
  const double eq = link.detector.vacuum_error_rate * y0 +
                    link.interferometer.misalignment_error() * transmitted;
  return ClickProfile{q, q > 0.0 ? eq / q : 0.0};
}

}  // namespace

SessionProfile analytic_profile(const LinkModel& link,
                                const ProtocolParams& params) {
  link.channel.validate();
  const double vacuum_intensity =
      link.vacuum_leakage ? params.mu * kExtinctionRatio : 0.0;
  return SessionProfile{analytic_state(link, params.mu),
                        analytic_state(link, params.nu),
                        analytic_state(link, vacuum_intensity)};
}

SessionProfile session_profile(const LinkModel& link,
                               const ProtocolParams& params) {
  if (link.measured_profile) return *link.measured_profile;
  return analytic_profile(link, params);
}

namespace {

double session_duration(const LinkModel& link, double n_signal,
                        double n_total) {
  if (link.measured_signal_rate_hz) {
    return n_signal / *link.measured_signal_rate_hz;
  }
  return n_total / link.pulse_rate_hz;
}

}  // namespace

ObservedStatistics expected_statistics(const LinkModel& link,
                                       const ProtocolParams& params,
                                       double n_pulses) {
  params.validate();
  const SessionProfile profile = session_profile(link, params);

  ObservedStatistics stats;
  for (StateKind k : {StateKind::Signal, StateKind::Decoy, StateKind::Vacuum}) {
    auto& s = stats.state(k);
    s.pulses = params.mix.share(k) * n_pulses;
    s.gain = profile.state(k).click;
    s.qber = profile.state(k).error_given_click;
  }
  stats.duration_s =
      session_duration(link, stats.signal.pulses, n_pulses);
  return stats;
}

ObservedStatistics simulate_session(const LinkModel& link,
                                    const ProtocolParams& params,
                                    std::uint64_t n_pulses,
                                    std::uint64_t seed) {
  params.validate();
  if (n_pulses == 0) {
    throw std::invalid_argument("simulate_session: n_pulses must be > 0");
  }
  const SessionProfile profile = session_profile(link, params);

  // One uniform draw decides intensity and click jointly; the error draw
  // only happens on the rare click path. Boundaries partition [0, 1):
  //   [0, b0)         signal + click     [b0, b1)  signal, no click
  //   [b1, b2)        decoy + click      [b2, b3)  decoy, no click
  //   [b3, b4)        vacuum + click     [b4, 1)   vacuum, no click
  const double share_sig = params.mix.share(StateKind::Signal);
  const double share_dec = params.mix.share(StateKind::Decoy);
  const double b0 = share_sig * profile.signal.click;
  const double b1 = share_sig;
  const double b2 = b1 + share_dec * profile.decoy.click;
  const double b3 = b1 + share_dec;
  const double b4 = b3 + (1.0 - b1 - share_dec) * profile.vacuum.click;

  std::uint64_t sent[3] = {0, 0, 0};
  std::uint64_t clicks[3] = {0, 0, 0};
  std::uint64_t errors[3] = {0, 0, 0};

  Rng rng(seed);
  for (std::uint64_t i = 0; i < n_pulses; ++i) {
    const double u = uniform01(rng);
    int state;
    bool click;
    if (u < b1) {
      state = 0;
      click = u < b0;
    } else if (u < b3) {
      state = 1;
      click = u < b2;
    } else {
      state = 2;
      click = u < b4;
    }
    ++sent[state];
    if (click) {
      ++clicks[state];
      const double err_p = (state == 0)   ? profile.signal.error_given_click
                           : (state == 1) ? profile.decoy.error_given_click
                                          : profile.vacuum.error_given_click;
      if (uniform01(rng) < err_p) ++errors[state];
    }
  }

  ObservedStatistics stats;
  const StateKind kinds[3] = {StateKind::Signal, StateKind::Decoy,
                              StateKind::Vacuum};
  for (int s = 0; s < 3; ++s) {
    auto& out = stats.state(kinds[s]);
    out.pulses = static_cast<double>(sent[s]);
    out.gain = sent[s] ? static_cast<double>(clicks[s]) / sent[s] : 0.0;
    out.qber = clicks[s] ? static_cast<double>(errors[s]) / clicks[s] : 0.0;
  }
  stats.duration_s = session_duration(link, stats.signal.pulses,
                                      static_cast<double>(n_pulses));
  return stats;
}

LinkModel calibrate_link(const ObservedStatistics& target,
                         const ProtocolParams& params, FiberScheme scheme) {
  params.validate();
  const double q_mu = target.signal.gain;
  const double q_vac = target.vacuum.gain;
  if (!(q_mu > q_vac)) {
    throw CalibrationError(
        "calibrate_link: signal gain does not exceed vacuum gain");
  }

  LinkModel link;
  const double y0 = q_vac;
  const double eta = -std::log(1.0 - (q_mu - y0)) / params.mu;
  const double transmitted = q_mu - y0;
  const double e_mis =
      (target.signal.qber * q_mu - link.detector.vacuum_error_rate * y0) /
      transmitted;

  link.channel.scheme = scheme;
  if (scheme == FiberScheme::SingleFiber) {
    // Background above the nominal dark-count floor is attributed to
    // crosstalk in the shared fiber.
    link.channel.crosstalk_noise_prob =
        std::max(0.0, y0 - link.detector.dark_count_prob);
    link.detector.dark_count_prob =
        std::min(y0, link.detector.dark_count_prob);
  } else {
    link.detector.dark_count_prob = y0;
  }
  link.channel.attenuation_db =
      -10.0 * std::log10(eta / link.detector.efficiency);
  link.interferometer.visibility = 1.0 - 2.0 * e_mis;

  link.measured_signal_rate_hz = target.signal_pulse_rate_hz();
  link.pulse_rate_hz =
      (target.signal.pulses + target.decoy.pulses + target.vacuum.pulses) /
      target.duration_s;

  SessionProfile profile;
  profile.signal = ClickProfile{target.signal.gain, target.signal.qber};
  profile.decoy = ClickProfile{target.decoy.gain, target.decoy.qber};
  profile.vacuum =
      ClickProfile{target.vacuum.gain, link.detector.vacuum_error_rate};
  link.measured_profile = profile;
  return link;
}

}  // namespace qkdnet
