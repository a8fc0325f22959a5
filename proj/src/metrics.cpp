#include "cellsim/metrics.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cellsim {

OutageThreshold OutageThreshold::from_db(double db) {
  return OutageThreshold{db, std::pow(10.0, db / 10.0)};
}

double sinr(double s0_w, std::span<const double> interferer_powers_w, double n0_w) {
  if (s0_w <= 0.0) throw std::invalid_argument("s0_w must be positive");
  if (n0_w < 0.0) throw std::invalid_argument("n0_w must be >= 0");
  double denom = n0_w;
  for (double p : interferer_powers_w) {
    if (p < 0.0) throw std::invalid_argument("interferer power must be >= 0");
    denom += p;
  }
  if (denom <= 0.0) throw std::domain_error("SINR denominator is zero");
  return s0_w / denom;
}

double capacity_bps_hz(double sinr_linear) {
  if (sinr_linear < 0.0) throw std::invalid_argument("sinr_linear must be >= 0");
  return std::log2(1.0 + sinr_linear);
}

double outage_closed_form(const OutageThreshold& threshold, double s_w,
                          std::span<const double> interferer_powers_w) {
  if (s_w <= 0.0) throw std::invalid_argument("s_w must be positive");
  if (threshold.gamma_linear <= 0.0) throw std::invalid_argument("gamma must be positive");
  double total = 0.0;
  for (double p : interferer_powers_w) {
    if (p < 0.0) throw std::invalid_argument("interferer power must be >= 0");
    total += p;
  }
  return -std::expm1(-threshold.gamma_linear / s_w * total);
}

double outage_monte_carlo(const OutageThreshold& threshold, double s_w,
                          std::span<const double> interferer_powers_w, std::size_t samples,
                          std::uint64_t seed, double noise_w) {
  if (s_w <= 0.0) throw std::invalid_argument("s_w must be positive");
  if (samples < 10000) throw std::invalid_argument("samples must be >= 10000");
  if (noise_w < 0.0) throw std::invalid_argument("noise_w must be >= 0");
  const double denom =
      std::accumulate(interferer_powers_w.begin(), interferer_powers_w.end(), noise_w);
  if (denom <= 0.0) return 0.0;  // no interference, no noise: outage impossible

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double cutoff = threshold.gamma_linear * denom;
  const double n = static_cast<double>(samples);
  std::size_t below = 0;
  // stratified inverse-CDF draw of the faded serving power
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = (static_cast<double>(i) + uni(rng)) / n;
    const double s_inst = -s_w * std::log1p(-u);
    if (s_inst < cutoff) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(samples);
}

}  // namespace cellsim
