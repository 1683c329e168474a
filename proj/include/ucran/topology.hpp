#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ucran {

enum class NodeKind { MacroBS, SRRH, FRRHPassive, FRRHActive, BBUPool };
enum class LinkKind {
  OpticalFronthaul,
  WirelessFronthaul,
  MicrowaveBackhaul,
  RFAccess
};
enum class Architecture { MacroOnly, CRAN, UCRAN };

const char* to_string(NodeKind k);
const char* to_string(LinkKind k);
const char* to_string(Architecture a);

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // altitude, meters
};

struct NodeSpec {
  int id = 0;
  NodeKind kind = NodeKind::SRRH;
  Position position;
  double tx_power_dbm = 0.0;
  int capacity_prbs = 0;
  double proc_rate = 0.0;  // tasks/s; 0 for passive F-RRH
  std::optional<double> battery_wh;  // F-RRH only

  bool is_frrh() const {
    return kind == NodeKind::FRRHPassive || kind == NodeKind::FRRHActive;
  }
};

struct LinkSpec {
  int id = 0;
  int from = 0;
  int to = 0;
  LinkKind kind = LinkKind::OpticalFronthaul;
  double fixed_latency_s = 0.0;
  double capacity_bps = 0.0;
};

struct Cell {
  int id = 0;
  std::vector<int> serving_nodes;
  double area_km2 = 3.0;
  int max_ues = 0;  // load at which aggregate PRB demand equals capacity
  Position center;
  double radius_m = 0.0;
};

struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<Cell> cells;
  Architecture architecture = Architecture::CRAN;

  const NodeSpec* find_node(int id) const;
  const Cell* find_cell(int id) const;
};

// Parameters needed to lay out the three architectures. Filled from the
// scenario config by the engine.
struct TopologyParams {
  Architecture architecture = Architecture::UCRAN;
  int num_cells = 2;
  double area_km2 = 3.0;
  double bs_height_m = 30.48;      // 100 ft
  double frrh_altitude_m = 30.48;  // 100 ft
  int frrh_count = 4;
  int srrh_capacity_prbs = 2000;
  int frrh_capacity_prbs = 100;
  int demand_prbs = 2;
  double macro_tx_dbm = 43.0;
  double srrh_tx_dbm = 43.0;
  double frrh_tx_dbm = 30.0;
  double bbu_proc_rate = 2000.0;
  double macro_proc_rate = 1000.0;
  double frrh_proc_rate = 200.0;
  double battery_wh = 300.0;
  double optical_latency_s = 1e-4;
  double optical_rate_bps = 10e9;
  double backhaul_latency_s = 2e-4;
  double backhaul_rate_bps = 1e9;
};

// Builds the per-architecture layout: MacroOnly = one macro per cell;
// CRAN = one S-RRH per cell plus a shared BBU pool on optical fronthaul;
// UCRAN = CRAN plus F-RRHs parked at cell 1's S-RRH standby platform.
Topology build_topology(const TopologyParams& params);

// Extended-star cluster rooted at an MEC-enabled head. Members attach
// breadth-first under the fan-out limit; any member is at most two wireless
// hops from the head. The head gets a microwave backhaul link (to node id
// `backhaul_target`, conventionally the BBU pool).
Topology build_cluster_topology(const NodeSpec& head,
                                const std::vector<NodeSpec>& members,
                                int fan_out = 3, int backhaul_target = -1);

struct Violation {
  std::string subject;  // "node 3", "link 7", "topology"
  std::string rule;
};

std::vector<Violation> validate_topology(const Topology& t);

// Serializes nodes/links/cells for the run-record file.
std::string describe_topology(const Topology& t);

}  // namespace ucran
