#include "ucran/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ucran {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::MacroBS: return "MacroBS";
    case NodeKind::SRRH: return "SRRH";
    case NodeKind::FRRHPassive: return "FRRHPassive";
    case NodeKind::FRRHActive: return "FRRHActive";
    case NodeKind::BBUPool: return "BBUPool";
  }
  return "?";
}

const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::OpticalFronthaul: return "OpticalFronthaul";
    case LinkKind::WirelessFronthaul: return "WirelessFronthaul";
    case LinkKind::MicrowaveBackhaul: return "MicrowaveBackhaul";
    case LinkKind::RFAccess: return "RFAccess";
  }
  return "?";
}

const char* to_string(Architecture a) {
  switch (a) {
    case Architecture::MacroOnly: return "macro";
    case Architecture::CRAN: return "cran";
    case Architecture::UCRAN: return "ucran";
  }
  return "?";
}

const NodeSpec* Topology::find_node(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const Cell* Topology::find_cell(int id) const {
  for (const auto& c : cells)
    if (c.id == id) return &c;
  return nullptr;
}

Topology build_topology(const TopologyParams& p) {
  if (p.num_cells < 1)
    throw std::invalid_argument("build_topology: need at least one cell");
  if (p.srrh_capacity_prbs <= 0 || p.demand_prbs <= 0)
    throw std::invalid_argument("build_topology: zero capacity or demand");
  if (p.architecture == Architecture::UCRAN && p.frrh_count < 1)
    throw std::invalid_argument("build_topology: UCRAN needs >= 1 F-RRH");

  Topology t;
  t.architecture = p.architecture;

  // Circle of area_km2; centers on a line, 2*radius apart.
  const double radius_m = std::sqrt(p.area_km2 * 1e6 / kPi);
  int next_node = 1, next_link = 1;

  std::vector<int> serving_ids;
  for (int c = 0; c < p.num_cells; ++c) {
    Cell cell;
    cell.id = c + 1;
    cell.area_km2 = p.area_km2;
    cell.radius_m = radius_m;
    cell.center = {2.0 * radius_m * c, 0.0, 0.0};
    cell.max_ues = p.srrh_capacity_prbs / p.demand_prbs;

    NodeSpec bs;
    bs.id = next_node++;
    bs.position = {cell.center.x, cell.center.y, p.bs_height_m};
    bs.capacity_prbs = p.srrh_capacity_prbs;
    if (p.architecture == Architecture::MacroOnly) {
      bs.kind = NodeKind::MacroBS;
      bs.tx_power_dbm = p.macro_tx_dbm;
      bs.proc_rate = p.macro_proc_rate;
    } else {
      bs.kind = NodeKind::SRRH;
      bs.tx_power_dbm = p.srrh_tx_dbm;
      bs.proc_rate = 0.0;
    }
    cell.serving_nodes.push_back(bs.id);
    serving_ids.push_back(bs.id);
    t.nodes.push_back(bs);
    t.cells.push_back(cell);
  }

  if (p.architecture != Architecture::MacroOnly) {
    NodeSpec bbu;
    bbu.id = next_node++;
    bbu.kind = NodeKind::BBUPool;
    // Midway between the cells, at ground level.
    bbu.position = {radius_m * (p.num_cells - 1), 0.0, 0.0};
    bbu.capacity_prbs = 0;
    bbu.proc_rate = p.bbu_proc_rate;
    t.nodes.push_back(bbu);

    for (int srrh_id : serving_ids) {
      LinkSpec l;
      l.id = next_link++;
      l.from = srrh_id;
      l.to = bbu.id;
      l.kind = LinkKind::OpticalFronthaul;
      l.fixed_latency_s = p.optical_latency_s;
      l.capacity_bps = p.optical_rate_bps;
      t.links.push_back(l);
    }

    if (p.architecture == Architecture::UCRAN) {
      // F-RRHs parked on the standby platform at cell 1's S-RRH.
      const Position park = t.cells.front().center;
      for (int u = 0; u < p.frrh_count; ++u) {
        NodeSpec f;
        f.id = next_node++;
        f.kind = NodeKind::FRRHPassive;
        f.position = {park.x, park.y, 0.0};
        f.tx_power_dbm = p.frrh_tx_dbm;
        f.capacity_prbs = p.frrh_capacity_prbs;
        f.proc_rate = 0.0;
        f.battery_wh = p.battery_wh;
        t.nodes.push_back(f);

        LinkSpec l;
        l.id = next_link++;
        l.from = f.id;
        l.to = bbu.id;
        l.kind = LinkKind::MicrowaveBackhaul;
        l.fixed_latency_s = p.backhaul_latency_s;
        l.capacity_bps = p.backhaul_rate_bps;
        t.links.push_back(l);
      }
    }
  }
  return t;
}

Topology build_cluster_topology(const NodeSpec& head,
                                const std::vector<NodeSpec>& members,
                                int fan_out, int backhaul_target) {
  if (head.kind != NodeKind::FRRHActive)
    throw std::invalid_argument("cluster-head must be MEC-enabled");
  for (const auto& m : members)
    if (!m.is_frrh())
      throw std::invalid_argument("cluster members must be F-RRHs");
  if (fan_out < 1)
    throw std::invalid_argument("fan-out must be >= 1");
  const int limit = fan_out + fan_out * fan_out;
  if (static_cast<int>(members.size()) > limit)
    throw std::invalid_argument(
        "too many members for depth-2 extended star at this fan-out");

  Topology t;
  t.architecture = Architecture::UCRAN;
  t.nodes.push_back(head);
  int max_id = head.id;
  for (const auto& m : members) {
    t.nodes.push_back(m);
    max_id = std::max(max_id, m.id);
  }

  int next_link = 1;
  // Breadth-first attachment: first fan_out members at depth 1, the rest
  // round-robin under depth-1 members.
  std::vector<int> depth1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    LinkSpec l;
    l.id = next_link++;
    l.kind = LinkKind::WirelessFronthaul;
    l.fixed_latency_s = 1e-4;
    l.capacity_bps = 100e6;
    l.to = members[i].id;
    if (static_cast<int>(i) < fan_out) {
      l.from = head.id;
      depth1.push_back(members[i].id);
    } else {
      l.from = depth1[(i - fan_out) % depth1.size()];
    }
    t.links.push_back(l);
  }

  NodeSpec bbu;
  if (backhaul_target < 0) {
    bbu.id = ++max_id;
    bbu.kind = NodeKind::BBUPool;
    bbu.proc_rate = 2000.0;
    t.nodes.push_back(bbu);
    backhaul_target = bbu.id;
  }
  LinkSpec bh;
  bh.id = next_link++;
  bh.from = head.id;
  bh.to = backhaul_target;
  bh.kind = LinkKind::MicrowaveBackhaul;
  bh.fixed_latency_s = 2e-4;
  bh.capacity_bps = 1e9;
  t.links.push_back(bh);

  Cell cell;
  cell.id = 1;
  cell.area_km2 = 3.0;
  cell.radius_m = std::sqrt(cell.area_km2 * 1e6 / kPi);
  cell.center = head.position;
  cell.center.z = 0.0;
  cell.max_ues = 0;
  cell.serving_nodes.push_back(head.id);
  for (const auto& m : members) cell.serving_nodes.push_back(m.id);
  const int demand = 2;
  int cap = head.capacity_prbs;
  for (const auto& m : members) cap += m.capacity_prbs;
  cell.max_ues = cap / demand;
  t.cells.push_back(cell);
  return t;
}

std::vector<Violation> validate_topology(const Topology& t) {
  std::vector<Violation> v;
  auto node_tag = [](int id) { return "node " + std::to_string(id); };
  auto link_tag = [](int id) { return "link " + std::to_string(id); };

  std::set<int> node_ids;
  int frrh_count = 0;
  for (const auto& n : t.nodes) {
    if (!node_ids.insert(n.id).second)
      v.push_back({node_tag(n.id), "duplicate node id"});
    if (n.kind == NodeKind::FRRHPassive && n.proc_rate != 0.0)
      v.push_back({node_tag(n.id), "passive F-RRH must have proc_rate 0"});
    if (n.kind == NodeKind::FRRHActive && n.proc_rate <= 0.0)
      v.push_back({node_tag(n.id), "active F-RRH must have proc_rate > 0"});
    if (n.position.z < 0.0)
      v.push_back({node_tag(n.id), "altitude must be >= 0"});
    if (n.is_frrh()) ++frrh_count;
  }
  for (const auto& n : t.nodes) {
    if (!n.is_frrh()) continue;
    for (const auto& g : t.nodes) {
      if ((g.kind == NodeKind::MacroBS || g.kind == NodeKind::SRRH) &&
          n.tx_power_dbm > g.tx_power_dbm) {
        v.push_back({node_tag(n.id),
                     "F-RRH tx power exceeds ground BS tx power"});
        break;
      }
    }
  }

  std::set<int> link_ids;
  for (const auto& l : t.links) {
    if (!link_ids.insert(l.id).second)
      v.push_back({link_tag(l.id), "duplicate link id"});
    const NodeSpec* a = t.find_node(l.from);
    const NodeSpec* b = t.find_node(l.to);
    if (!a || !b) {
      v.push_back({link_tag(l.id), "endpoint references unknown node"});
      continue;
    }
    if (l.fixed_latency_s < 0.0)
      v.push_back({link_tag(l.id), "fixed latency must be >= 0"});
    if (l.capacity_bps <= 0.0)
      v.push_back({link_tag(l.id), "capacity must be > 0"});
    if (l.kind == LinkKind::OpticalFronthaul) {
      const bool ok = (a->kind == NodeKind::SRRH && b->kind == NodeKind::BBUPool) ||
                      (b->kind == NodeKind::SRRH && a->kind == NodeKind::BBUPool);
      if (!ok)
        v.push_back({link_tag(l.id),
                     "optical fronthaul only between S-RRH and BBU pool"});
    }
    if (l.kind == LinkKind::WirelessFronthaul) {
      const bool ok =
          (a->is_frrh() && (b->kind == NodeKind::SRRH || b->is_frrh())) ||
          (b->is_frrh() && (a->kind == NodeKind::SRRH || a->is_frrh()));
      if (!ok)
        v.push_back({link_tag(l.id),
                     "wireless fronthaul only between F-RRH and S-RRH/F-RRH"});
    }
  }

  for (const auto& c : t.cells) {
    if (c.area_km2 <= 0.0)
      v.push_back({"cell " + std::to_string(c.id), "area must be > 0"});
    if (c.max_ues <= 0)
      v.push_back({"cell " + std::to_string(c.id), "max_ues must be > 0"});
    for (int id : c.serving_nodes)
      if (!t.find_node(id))
        v.push_back({"cell " + std::to_string(c.id),
                     "serving node " + std::to_string(id) + " unknown"});
  }

  if (t.architecture == Architecture::UCRAN && frrh_count == 0)
    v.push_back({"topology", "UCRAN requires at least one F-RRH"});
  if (t.architecture != Architecture::UCRAN && frrh_count > 0)
    v.push_back({"topology", "non-UCRAN topology contains F-RRHs"});

  // Connectivity: every serving node must reach a BBU pool over links,
  // except macro BSs which are self-contained.
  std::map<int, std::vector<int>> adj;
  for (const auto& l : t.links) {
    adj[l.from].push_back(l.to);
    adj[l.to].push_back(l.from);
  }
  for (const auto& c : t.cells) {
    for (int id : c.serving_nodes) {
      const NodeSpec* n = t.find_node(id);
      if (!n || n->kind == NodeKind::MacroBS) continue;
      std::set<int> seen{id};
      std::vector<int> stack{id};
      bool reached = false;
      while (!stack.empty() && !reached) {
        int cur = stack.back();
        stack.pop_back();
        const NodeSpec* cn = t.find_node(cur);
        if (cn && cn->kind == NodeKind::BBUPool) {
          reached = true;
          break;
        }
        for (int nb : adj[cur])
          if (seen.insert(nb).second) stack.push_back(nb);
      }
      if (!reached)
        v.push_back({node_tag(id), "serving node cannot reach a BBU pool"});
    }
  }
  return v;
}

std::string describe_topology(const Topology& t) {
  std::ostringstream os;
  os << "architecture " << to_string(t.architecture) << "\n";
  for (const auto& n : t.nodes) {
    os << "node " << n.id << " " << to_string(n.kind) << " pos=("
       << n.position.x << "," << n.position.y << "," << n.position.z
       << ") tx_dbm=" << n.tx_power_dbm << " cap_prbs=" << n.capacity_prbs
       << " proc_rate=" << n.proc_rate;
    if (n.battery_wh) os << " battery_wh=" << *n.battery_wh;
    os << "\n";
  }
  for (const auto& l : t.links)
    os << "link " << l.id << " " << to_string(l.kind) << " " << l.from
       << "->" << l.to << " lat_s=" << l.fixed_latency_s
       << " cap_bps=" << l.capacity_bps << "\n";
  for (const auto& c : t.cells) {
    os << "cell " << c.id << " area_km2=" << c.area_km2
       << " max_ues=" << c.max_ues << " serving=[";
    for (std::size_t i = 0; i < c.serving_nodes.size(); ++i)
      os << (i ? "," : "") << c.serving_nodes[i];
    os << "]\n";
  }
  return os.str();
}

}  // namespace ucran
