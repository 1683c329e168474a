#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ucran/power.hpp"
#include "ucran/traffic.hpp"

namespace ucran {

struct UtilizationSample {
  int node = 0;
  double time_s = 0.0;
  int load_prbs = 0;
  int capacity_prbs = 0;
  double uf_percent = 0.0;
};

// UF = 100 * load / capacity; may exceed 100 under overload.
double utilization_factor(int load_prbs, int capacity_prbs);

UtilizationSample make_sample(int node, double time_s, int load_prbs,
                              int capacity_prbs);

enum class FrrhFlightState : int {
  Standby,
  Charging,
  EnRoute,
  Deployed,
  Returning
};

const char* to_string(FrrhFlightState s);

struct ControlAction {
  enum class Kind { Deploy, Recall, Alert };
  Kind kind = Kind::Alert;
  int frrh = -1;  // -1 for Alert
  int cell = 0;
};

struct ControllerState {
  double deploy_threshold = 85.0;  // percent
  double recall_threshold = 60.0;  // percent; must be < deploy_threshold
  int frrh_capacity_prbs = 100;
  double min_deploy_charge_wh = 60.0;

  std::map<int, FrrhFlightState> frrh_states;
  std::map<int, BatteryState> batteries;
  std::map<int, int> deployed_cell;       // frrh -> target cell (EnRoute/Deployed)
  std::map<int, int> frrh_home_cell;      // standby platform cell
  std::map<int, int> node_cell;           // monitored S-RRH -> cell
  std::vector<UtilizationSample> history;  // most recent control period
};

// One control period: deploy toward overloaded cells (up to
// ceil(excess / F-RRH capacity) airframes, standby + charged only), recall
// from cells back under the recall threshold. Infeasible deploys raise an
// Alert. Flight-state transitions EnRoute->Deployed and Returning->Charging
// are driven by the kernel's travel events, not here.
std::pair<ControllerState, std::vector<ControlAction>> control_step(
    ControllerState state, const std::vector<UtilizationSample>& samples,
    double now_s);

// Admission: candidate with most free PRBs (ties -> lowest node id) if it
// fits the demand; otherwise no assignment and the UE stays pending until
// the admission timeout expires.
std::optional<int> admit_ue(const UeSession& ue,
                            const std::vector<std::pair<int, int>>& candidates);

}  // namespace ucran
