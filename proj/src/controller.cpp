#include "ucran/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ucran {

double utilization_factor(int load_prbs, int capacity_prbs) {
  if (capacity_prbs <= 0)
    throw std::domain_error("utilization_factor: capacity must be > 0");
  return 100.0 * static_cast<double>(load_prbs) /
         static_cast<double>(capacity_prbs);
}

UtilizationSample make_sample(int node, double time_s, int load_prbs,
                              int capacity_prbs) {
  return {node, time_s, load_prbs, capacity_prbs,
          utilization_factor(load_prbs, capacity_prbs)};
}

const char* to_string(FrrhFlightState s) {
  switch (s) {
    case FrrhFlightState::Standby: return "standby";
    case FrrhFlightState::Charging: return "charging";
    case FrrhFlightState::EnRoute: return "enroute";
    case FrrhFlightState::Deployed: return "deployed";
    case FrrhFlightState::Returning: return "returning";
  }
  return "?";
}

std::pair<ControllerState, std::vector<ControlAction>> control_step(
    ControllerState state, const std::vector<UtilizationSample>& samples,
    double now_s) {
  if (state.recall_threshold >= state.deploy_threshold)
    throw std::invalid_argument("control_step: hysteresis band inverted");
  std::vector<ControlAction> actions;
  state.history = samples;

  for (const auto& s : samples) {
    const auto cell_it = state.node_cell.find(s.node);
    const int cell = cell_it != state.node_cell.end() ? cell_it->second : 0;

    if (s.uf_percent >= state.deploy_threshold) {
      // Airframes already committed to this cell count against the need.
      int committed = 0;
      for (const auto& [frrh, tgt] : state.deployed_cell)
        if (tgt == cell) ++committed;
      const double excess_prbs =
          (s.uf_percent - state.deploy_threshold) / 100.0 * s.capacity_prbs;
      int need = static_cast<int>(
          std::ceil(excess_prbs / state.frrh_capacity_prbs));
      need = std::max(need, 1) - committed;

      int dispatched = 0;
      for (auto& [frrh, fs] : state.frrh_states) {
        if (need <= 0) break;
        if (fs != FrrhFlightState::Standby) continue;
        const auto b = state.batteries.find(frrh);
        if (b != state.batteries.end() &&
            b->second.remaining_wh < state.min_deploy_charge_wh)
          continue;
        fs = FrrhFlightState::EnRoute;
        state.deployed_cell[frrh] = cell;
        actions.push_back({ControlAction::Kind::Deploy, frrh, cell});
        --need;
        ++dispatched;
      }
      if (need > 0 && dispatched == 0)
        actions.push_back({ControlAction::Kind::Alert, -1, cell});
    } else if (s.uf_percent <= state.recall_threshold) {
      for (auto& [frrh, fs] : state.frrh_states) {
        if (fs != FrrhFlightState::Deployed) continue;
        const auto tgt = state.deployed_cell.find(frrh);
        if (tgt == state.deployed_cell.end() || tgt->second != cell) continue;
        fs = FrrhFlightState::Returning;
        state.deployed_cell.erase(frrh);
        actions.push_back({ControlAction::Kind::Recall, frrh, cell});
      }
    }
  }
  (void)now_s;
  return {std::move(state), std::move(actions)};
}

std::optional<int> admit_ue(
    const UeSession& ue,
    const std::vector<std::pair<int, int>>& candidates) {
  int best_node = -1, best_free = -1;
  for (const auto& [node, free] : candidates) {
    if (free > best_free || (free == best_free && node < best_node)) {
      best_node = node;
      best_free = free;
    }
  }
  if (best_node >= 0 && best_free >= ue.demand_prbs) return best_node;
  return std::nullopt;
}

}  // namespace ucran
