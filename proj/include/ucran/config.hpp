#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucran/channel.hpp"
#include "ucran/power.hpp"
#include "ucran/topology.hpp"
#include "ucran/traffic.hpp"

namespace ucran {

enum class Scenario { Hotspot, Disaster, ComplexTerrain };

const char* to_string(Scenario s);

struct ControllerConfig {
  double deploy_threshold = 85.0;
  double recall_threshold = 60.0;
  double control_period_s = 1.0;      // 0 disables the control loop
  double admission_timeout_s = 1.0;
  double uav_speed_mps = 10.0;
  double min_deploy_charge_frac = 0.2;
};

struct WorkloadConfig {
  double task_rate_hz = 0.1;         // per admitted UE
  double task_payload_bits = 1e5;
  double ue_distance_frac = 0.667;   // representative UE distance / radius
  double small_cell_radius_m = 200.0;
  double disaster_task_period_s = 0.1;
  double disaster_hop_distance_m = 500.0;
  int terrain_members = 3;
  int terrain_fan_out = 3;
  double terrain_member_spacing_m = 400.0;
  double terrain_ue_radius_m = 1200.0;
};

struct ScenarioConfig {
  Architecture architecture = Architecture::UCRAN;
  Scenario scenario = Scenario::Hotspot;
  double duration_s = 900.0;
  double warmup_frac = 0.1;
  std::uint64_t seed = 1;
  double metrics_period_s = 1.0;     // 0 disables power sampling

  TopologyParams topology;
  TrafficParams traffic;
  int ue_count = 1000;               // offered Erlangs in the hotspot cell(s)
  int handover_count = 200;          // extra sessions into the hotspot cell
  int hotspot_cell = 2;
  double handover_window_start_s = -1.0;  // -1: warmup end
  double handover_window_end_s = -1.0;    // -1: duration
  ChannelEnv channel;
  double bandwidth_hz = 20e6;
  ControllerConfig controller;
  PowerConfig power;
  WorkloadConfig workload;

  std::vector<double> sweep_fractions;      // empty: default 0.1..1.0
  std::vector<std::uint64_t> sweep_seeds;   // empty: {seed}

  double warmup_s() const { return warmup_frac * duration_s; }
  int max_ues_per_cell() const {
    return topology.srrh_capacity_prbs / traffic.demand_prbs;
  }
};

struct ConfigError {
  int line = 0;
  std::string message;
};

// Parses the key-value/section config format; applies defaults for omitted
// fields; rejects unknown keys. Throws std::runtime_error carrying a
// line-numbered message on failure.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text);

// Invariant checks over a resolved config; empty means valid.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

// Resolved-config dump for the run record.
std::string describe_config(const ScenarioConfig& cfg);

}  // namespace ucran
