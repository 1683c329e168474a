#include "ucran/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ucran {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLightSpeed = 299792458.0;
}  // namespace

double free_space_loss_db(double range_m, double carrier_hz) {
  return 20.0 * std::log10(4.0 * kPi * carrier_hz * range_m / kLightSpeed);
}

double los_probability(double theta_deg, const ChannelEnv& env) {
  return 1.0 / (1.0 + env.s_curve_a *
                          std::exp(-env.s_curve_b *
                                   (theta_deg - env.s_curve_a)));
}

double atg_path_loss(double ground_distance_m, double altitude_m,
                     const ChannelEnv& env) {
  if (altitude_m <= 0.0)
    throw std::domain_error("atg_path_loss: altitude must be > 0");
  if (ground_distance_m < 0.0)
    throw std::domain_error("atg_path_loss: ground distance must be >= 0");
  const double range = std::hypot(ground_distance_m, altitude_m);
  const double theta =
      std::atan2(altitude_m, ground_distance_m) * 180.0 / kPi;
  const double p_los = los_probability(theta, env);
  return free_space_loss_db(range, env.carrier_hz) +
         p_los * env.excess_los_db + (1.0 - p_los) * env.excess_nlos_db;
}

double terrestrial_path_loss(double distance_m, const ChannelEnv& env) {
  const double d = std::max(distance_m, 1.0);
  return free_space_loss_db(1.0, env.carrier_hz) +
         10.0 * env.terrestrial_exponent * std::log10(d);
}

double optimal_altitude(double ground_distance_m, const ChannelEnv& env,
                        std::pair<double, double> bounds) {
  if (bounds.first <= 0.0)
    throw std::invalid_argument("optimal_altitude: lower bound must be > 0");
  if (bounds.second <= bounds.first)
    throw std::invalid_argument("optimal_altitude: bounds inverted");

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = bounds.first, hi = bounds.second;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = atg_path_loss(ground_distance_m, x1, env);
  double f2 = atg_path_loss(ground_distance_m, x2, env);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = atg_path_loss(ground_distance_m, x1, env);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = atg_path_loss(ground_distance_m, x2, env);
    }
  }
  return 0.5 * (lo + hi);
}

LinkBudget link_rate(double tx_power_dbm, double path_loss_db,
                     double bandwidth_hz, const ChannelEnv& env) {
  if (bandwidth_hz <= 0.0)
    throw std::invalid_argument("link_rate: bandwidth must be > 0");
  LinkBudget b;
  b.path_loss_db = path_loss_db;
  b.sinr_db = tx_power_dbm - path_loss_db - env.noise_dbm;
  if (b.sinr_db < kDecodeFloorDb) {
    b.spectral_eff = 0.0;
    b.rate_bps = 0.0;
    return b;
  }
  const double sinr_lin = std::pow(10.0, b.sinr_db / 10.0);
  b.spectral_eff = std::min(
      kShannonAttenuation * std::log2(1.0 + sinr_lin), kSpectralEffMax);
  b.rate_bps = b.spectral_eff * bandwidth_hz;
  return b;
}

int prbs_for(double bandwidth_hz) {
  const double mhz = bandwidth_hz / 1e6;
  auto near = [&](double v) { return std::abs(mhz - v) < 1e-6; };
  if (near(1.4)) return 6;
  if (near(3.0)) return 15;
  if (near(5.0)) return 25;
  if (near(10.0)) return 50;
  if (near(15.0)) return 75;
  if (near(20.0)) return 100;
  throw std::invalid_argument("prbs_for: unsupported LTE bandwidth");
}

}  // namespace ucran
