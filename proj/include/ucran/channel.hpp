#pragma once

#include <utility>

namespace ucran {

// Air-to-ground and terrestrial channel parameters. Defaults are the urban
// sigmoid LoS-probability set (a=9.61, b=0.16, 1/20 dB excess, 2 GHz).
struct ChannelEnv {
  double s_curve_a = 9.61;
  double s_curve_b = 0.16;
  double excess_los_db = 1.0;
  double excess_nlos_db = 20.0;
  double carrier_hz = 2.0e9;
  double terrestrial_exponent = 3.5;
  double noise_dbm = -101.0;
};

struct LinkBudget {
  double path_loss_db = 0.0;
  double sinr_db = 0.0;
  double spectral_eff = 0.0;  // bits/s/Hz
  double rate_bps = 0.0;
};

// 64-QAM rate-3/4 ceiling and Shannon attenuation used by link_rate.
inline constexpr double kSpectralEffMax = 4.5;
inline constexpr double kShannonAttenuation = 0.75;
inline constexpr double kDecodeFloorDb = -6.0;

// Free-space path loss at range r (meters), carrier f (Hz).
double free_space_loss_db(double range_m, double carrier_hz);

// LoS probability for elevation angle theta (degrees).
double los_probability(double theta_deg, const ChannelEnv& env);

// P(LoS)-weighted air-to-ground path loss. altitude must be > 0.
double atg_path_loss(double ground_distance_m, double altitude_m,
                     const ChannelEnv& env);

// Log-distance ground path loss (1 m reference).
double terrestrial_path_loss(double distance_m, const ChannelEnv& env);

// Altitude in [bounds.first, bounds.second] minimizing atg_path_loss,
// by golden-section search.
double optimal_altitude(double ground_distance_m, const ChannelEnv& env,
                        std::pair<double, double> bounds);

// SINR / spectral efficiency / rate for a link budget. Spectral efficiency
// is 0 below the decode floor and capped at the 64-QAM ceiling.
LinkBudget link_rate(double tx_power_dbm, double path_loss_db,
                     double bandwidth_hz, const ChannelEnv& env);

// LTE resource-grid size for a supported carrier bandwidth.
int prbs_for(double bandwidth_hz);

}  // namespace ucran
