#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ucran/topology.hpp"

namespace ucran {

enum class UeOrigin { Local, Handover };
enum class UeStatus { Pending, Admitted, Blocked };

struct UeSession {
  int id = 0;
  int cell = 0;
  double arrival_time_s = 0.0;
  double holding_time_s = 0.0;
  int demand_prbs = 1;
  double demand_rate_bps = 0.0;
  UeOrigin origin = UeOrigin::Local;
  UeStatus status = UeStatus::Pending;
  int serving_node = -1;  // valid when Admitted
};

struct LoadSchedule {
  std::vector<double> fractions;  // strictly increasing, in [0.1, 1.0]
  int max_ues = 0;

  int ues_at(double fraction) const;
};

LoadSchedule default_load_schedule(int max_ues);

struct TrafficParams {
  double mean_holding_s = 120.0;
  int demand_prbs = 2;
  double demand_rate_bps = 0.0;
  int hard_cap = 100000;
};

// Poisson arrivals with rate target_count/mean_holding (offered load of
// target_count Erlangs), exponential holding times, sorted by arrival time.
// Deterministic in (cell, target_count, duration, seed).
std::vector<UeSession> generate_arrivals(const Cell& cell, int target_count,
                                         double duration_s,
                                         std::uint64_t seed,
                                         const TrafficParams& params,
                                         int first_id = 1);

// Handover sessions into to_cell, arrival times uniform in [window.first,
// window.second]; stacked on top of local traffic to create the hotspot.
std::vector<UeSession> generate_handover_wave(
    const Cell& from_cell, const Cell& to_cell, int count,
    std::pair<double, double> window, std::uint64_t seed,
    const TrafficParams& params, int first_id = 1);

struct SweepPoint {
  double fraction = 0.0;
  int ue_count = 0;
};

// One generation parameter set per schedule fraction.
std::vector<SweepPoint> schedule_sweep(const LoadSchedule& schedule);

// Line-oriented event export: "ARRIVE time ue cell origin" per session.
std::string serialize_sessions(const std::vector<UeSession>& sessions);

}  // namespace ucran
