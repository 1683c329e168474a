#include "ucran/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ucran/controller.hpp"

namespace ucran {

PowerProfile macro_power_profile() { return {130.0, 4.7, 20.0, 0.0}; }
PowerProfile srrh_power_profile() { return {50.0, 4.7, 20.0, 0.0}; }
PowerProfile frrh_power_profile() { return {5.0, 8.0, 1.0, 150.0}; }

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

double node_power(const PowerProfile& profile, double load_fraction,
                  bool flying) {
  if (load_fraction < 0.0 || load_fraction > 1.0)
    throw std::domain_error("node_power: load fraction outside [0,1]");
  return profile.static_w + profile.slope * profile.tx_w * load_fraction +
         (flying ? profile.hover_w : 0.0);
}

BatteryState battery_step(const BatteryState& state, double draw_w,
                          double dt_s) {
  if (dt_s <= 0.0) throw std::domain_error("battery_step: dt must be > 0");
  BatteryState next = state;
  next.remaining_wh =
      std::max(0.0, state.remaining_wh - draw_w * dt_s / 3600.0);
  return next;
}

BatteryState battery_charge(const BatteryState& state, double charge_w,
                            double dt_s) {
  if (dt_s <= 0.0) throw std::domain_error("battery_charge: dt must be > 0");
  BatteryState next = state;
  next.remaining_wh =
      std::min(state.capacity_wh, state.remaining_wh + charge_w * dt_s / 3600.0);
  return next;
}

double total_power(const Topology& topology,
                   const std::map<int, double>& load_fractions,
                   const std::map<int, FrrhFlightState>& frrh_states,
                   const PowerConfig& cfg) {
  double total = 0.0;
  int attached_srrhs = 0;
  for (const auto& n : topology.nodes) {
    const auto lf_it = load_fractions.find(n.id);
    const double lf = lf_it != load_fractions.end() ? lf_it->second : 0.0;
    switch (n.kind) {
      case NodeKind::MacroBS:
        total += node_power(cfg.macro, lf, false);
        break;
      case NodeKind::SRRH:
        total += node_power(cfg.srrh, lf, false);
        ++attached_srrhs;
        break;
      case NodeKind::BBUPool:
        total += cfg.bbu_static_w;
        break;
      case NodeKind::FRRHPassive:
      case NodeKind::FRRHActive: {
        const auto st_it = frrh_states.find(n.id);
        const FrrhFlightState st = st_it != frrh_states.end()
                                       ? st_it->second
                                       : FrrhFlightState::Standby;
        switch (st) {
          case FrrhFlightState::Standby:
          case FrrhFlightState::Charging:
            total += cfg.standby_draw_w;
            break;
          case FrrhFlightState::EnRoute:
          case FrrhFlightState::Returning:
            total += node_power(cfg.frrh, 0.0, cfg.include_hover);
            break;
          case FrrhFlightState::Deployed:
            total += node_power(cfg.frrh, lf, cfg.include_hover);
            break;
        }
        break;
      }
    }
  }
  total += cfg.bbu_per_srrh_w * attached_srrhs *
           (topology.architecture == Architecture::MacroOnly ? 0 : 1);
  return total;
}

}  // namespace ucran
