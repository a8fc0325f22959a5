#pragma once

namespace cellsim {

// Okumura-Hata inputs: carrier in MHz, antenna heights in meters.
struct PropagationParams {
  double fc_mhz = 1800.0;
  double bs_height_m = 100.0;
  double mobile_height_m = 5.0;
};

// Mobile antenna height correction a(h_m), in dB.
double mobile_correction_db(const PropagationParams& params);

// Okumura-Hata path loss in dB; d_km is the BS-user distance in kilometers.
double path_loss_db(const PropagationParams& params, double d_km);

// tx_power_w attenuated by loss_db, in watts.
double received_power_w(double tx_power_w, double loss_db);

}  // namespace cellsim
