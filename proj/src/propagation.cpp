#include "cellsim/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace cellsim {

namespace {

void validate(const PropagationParams& params) {
  if (params.fc_mhz <= 0.0) throw std::invalid_argument("fc_mhz must be positive");
  if (params.bs_height_m <= 0.0) throw std::invalid_argument("bs_height_m must be positive");
  if (params.mobile_height_m < 0.0) throw std::invalid_argument("mobile_height_m must be >= 0");
}

}  // namespace

double mobile_correction_db(const PropagationParams& params) {
  validate(params);
  const double lf = std::log10(params.fc_mhz);
  return 1.1 * (lf - 0.7) * params.mobile_height_m - (1.56 * lf - 0.8);
}

double path_loss_db(const PropagationParams& params, double d_km) {
  validate(params);
  if (d_km <= 0.0) throw std::invalid_argument("d_km must be positive");
  const double lf = std::log10(params.fc_mhz);
  const double lhb = std::log10(params.bs_height_m);
  return 69.55 + 26.16 * lf - 13.82 * lhb - mobile_correction_db(params) +
         (44.9 - 6.55 * lhb) * std::log10(d_km);
}

double received_power_w(double tx_power_w, double loss_db) {
  if (tx_power_w <= 0.0) throw std::invalid_argument("tx_power_w must be positive");
  return tx_power_w * std::pow(10.0, -loss_db / 10.0);
}

}  // namespace cellsim
