#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucran/config.hpp"
#include "ucran/report.hpp"
#include "ucran/topology.hpp"
#include "ucran/trace.hpp"

namespace ucran {

enum class EventKind {
  UeArrival,
  UeDeparture,
  UeTimeout,
  ControlTick,
  FrrhArrived,
  FrrhReturned,
  TaskArrival,
  TaskHop,
  TaskDone,
  MetricsSample,
  End
};

// Kernel event. Dequeue order is (time, class, seq): departures sort ahead
// of same-instant arrivals so released PRBs are reusable; remaining ties go
// by insertion order.
struct Event {
  double time_s = 0.0;
  int cls = 1;  // 0 = departure-like, 1 = everything else
  std::uint64_t seq = 0;
  EventKind kind = EventKind::End;
  int a = 0;  // payload: ue/frrh/task id
  int b = 0;  // payload: stage/cell
};

struct RunResult {
  Trace trace;
  Topology topology;
  RunMetrics metrics;
  std::string run_record;
};

// Runs one deterministic single-threaded simulation of the configured
// scenario. Identical config+seed gives identical trace bytes.
RunResult run(const ScenarioConfig& config);

struct SweepRun {
  Architecture architecture = Architecture::CRAN;
  double fraction = 0.0;
  int ue_count = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct SweepResult {
  MetricsReport report;
  std::vector<SweepRun> runs;
};

// One run per (load point, seed, architecture); per-point aggregation with
// 95% confidence half-widths.
SweepResult run_sweep(const ScenarioConfig& base,
                      const std::vector<double>& fractions,
                      const std::vector<std::uint64_t>& seeds,
                      const std::vector<Architecture>& architectures);

// Scenario topology builders (hotspot uses build_topology directly).
Topology build_disaster_topology(const ScenarioConfig& cfg);
Topology build_terrain_topology(const ScenarioConfig& cfg);

}  // namespace ucran
