#pragma once

#include <map>

#include "ucran/topology.hpp"

namespace ucran {

enum class FrrhFlightState : int;  // defined in controller.hpp

// Static + load-proportional power model. tx_w is the transmit power rating
// in watts; slope scales the load-dependent part.
struct PowerProfile {
  double static_w = 0.0;
  double slope = 0.0;
  double tx_w = 0.0;
  double hover_w = 0.0;  // 0 for ground nodes
};

struct BatteryState {
  double remaining_wh = 0.0;
  double capacity_wh = 0.0;

  bool empty() const { return remaining_wh <= 0.0; }
};

// Default profiles; magnitudes follow a large-static ground BS vs a small
// aerial BS.
PowerProfile macro_power_profile();   // 130 W static, slope 4.7, 20 W tx
PowerProfile srrh_power_profile();    // 50 W static, slope 4.7, 20 W tx
PowerProfile frrh_power_profile();    // 5 W static, slope 8, 1 W tx, 150 W hover

double dbm_to_watts(double dbm);

// static + slope*tx*load (+ hover when flying). load_fraction in [0, 1].
double node_power(const PowerProfile& profile, double load_fraction,
                  bool flying);

// Integrates draw over dt. Clamps at zero; the controller reacts to empty().
BatteryState battery_step(const BatteryState& state, double draw_w,
                          double dt_s);

BatteryState battery_charge(const BatteryState& state, double charge_w,
                            double dt_s);

struct PowerConfig {
  PowerProfile macro = macro_power_profile();
  PowerProfile srrh = srrh_power_profile();
  PowerProfile frrh = frrh_power_profile();
  double bbu_static_w = 100.0;
  double bbu_per_srrh_w = 20.0;
  double standby_draw_w = 2.0;
  double charge_rate_w = 300.0;
  double battery_capacity_wh = 300.0;
  bool include_hover = true;
};

// Sum over nodes: serving nodes at their load fraction, BBU static plus a
// per-attached-S-RRH processing share, Standby/Charging F-RRHs at the
// standby draw, flying F-RRHs with hover power (unless disabled).
double total_power(const Topology& topology,
                   const std::map<int, double>& load_fractions,
                   const std::map<int, FrrhFlightState>& frrh_states,
                   const PowerConfig& cfg);

}  // namespace ucran
