#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace cellsim {

struct OutageThreshold {
  double gamma_db = 0.0;
  double gamma_linear = 1.0;
  static OutageThreshold from_db(double db);
};

// Linear SINR: s0 / (sum of interferer powers + noise).
double sinr(double s0_w, std::span<const double> interferer_powers_w, double n0_w);

// Shannon capacity log2(1 + sinr), bits/s/Hz.
double capacity_bps_hz(double sinr_linear);

// Outage probability 1 - exp(-(gamma/S) * sum I_i): the collapsed form of the
// per-interferer exponential product, exact under exponential fading of the
// serving signal with deterministic interference.
double outage_closed_form(const OutageThreshold& threshold, double s_w,
                          std::span<const double> interferer_powers_w);

// Monte-Carlo estimate of Pr(SINR < gamma) with the serving power drawn
// exponentially with mean s_w. noise_w = 0 reproduces the closed form; a
// positive noise term gives the noise-inclusive variant.
double outage_monte_carlo(const OutageThreshold& threshold, double s_w,
                          std::span<const double> interferer_powers_w, std::size_t samples,
                          std::uint64_t seed, double noise_w = 0.0);

}  // namespace cellsim
