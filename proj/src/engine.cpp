#include "ucran/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ucran/analytic.hpp"
#include "ucran/channel.hpp"
#include "ucran/controller.hpp"
#include "ucran/latency.hpp"
#include "ucran/power.hpp"
#include "ucran/rng.hpp"
#include "ucran/traffic.hpp"

namespace ucran {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct EventCmp {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_s != b.time_s) return a.time_s > b.time_s;
    if (a.cls != b.cls) return a.cls > b.cls;
    return a.seq > b.seq;
  }
};

double distance(const Position& a, const Position& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

// One pipeline step: a queue plus the deterministic serialization time and
// the post-queue propagation latency.
struct RouteStep {
  int queue = -1;
  double service_s = 0.0;
  double fixed_s = 0.0;
};

struct TaskRec {
  long id = 0;
  double gen_t = 0.0;
  double comm_s = 0.0;
  ProcSite site = ProcSite::BBUPool;
  int next_step = 0;
  std::vector<RouteStep> steps;
  int proc_queue = -1;
  double proc_rate = 0.0;
};

struct UeRec {
  UeSession s;
  double depart_t = 0.0;
  bool in_service = false;
  bool in_pending = false;
};

struct NodeRt {
  int id = 0;
  int cell = 0;
  NodeKind kind = NodeKind::SRRH;
  int capacity_prbs = 0;
  int free_prbs = 0;
  bool serving = false;  // F-RRHs serve only while Deployed
  int access_q = -1;
  double access_service_s = 0.0;
  bool access_usable = true;
  int transport_q = -1;  // -1: no transport hop (macro)
  double transport_service_s = 0.0;
  double transport_fixed_s = 0.0;
  int proc_q = -1;  // processor reached after transport (BBU or local)
  double proc_rate = 0.0;
  Position position;
};

struct FrrhRt {
  int id = 0;
  Position park;
  Position deploy_pos;
  int target_cell = 0;
};

class Kernel {
 public:
  explicit Kernel(const ScenarioConfig& cfg) : cfg_(cfg), rng_(substream_seed(cfg.seed, 0x5EED)) {}

  RunResult run();

 private:
  // --- infrastructure ---
  void schedule(double t, int cls, EventKind kind, int a = 0, int b = 0) {
    queue_.push({t, cls, seq_++, kind, a, b});
  }
  void line(std::string l) { trace_.add(std::move(l)); }
  int new_queue() {
    queues_.emplace_back();
    return static_cast<int>(queues_.size()) - 1;
  }

  void setup_hotspot();
  void setup_disaster();
  void setup_terrain();
  void generate_hotspot_traffic();
  void main_loop();

  // --- event handlers ---
  void on_ue_arrival(int ue);
  void on_ue_departure(int ue);
  void on_ue_timeout(int ue);
  void on_control_tick();
  void on_frrh_arrived(int frrh);
  void on_frrh_returned(int frrh);
  void on_task_gen(int ue);
  void on_task_hop(int task);
  void on_task_done(int task);
  void on_metrics_sample();

  // --- helpers ---
  std::vector<std::pair<int, int>> candidates_for(const UeRec& ue) const;
  void admit(int ue_id, int node_id);
  void block(int ue_id, double at);
  void try_pending(int cell);
  void handback_ues(int frrh_node);
  void start_return(int frrh, const char* reason);
  void make_task_for_ue(const UeRec& ue);
  double estimate_steps(const std::vector<RouteStep>& steps);
  void launch_task(TaskRec task);
  double travel_time(const Position& a, const Position& b) const;
  std::map<int, double> current_loads() const;
  NodeRt& node(int id) { return nodes_.at(id); }

  const ScenarioConfig& cfg_;
  Rng rng_;
  Trace trace_;
  Topology topo_;
  std::priority_queue<Event, std::vector<Event>, EventCmp> queue_;
  std::uint64_t seq_ = 0;
  double now_ = 0.0;

  std::vector<FifoQueue> queues_;
  std::map<int, NodeRt> nodes_;
  std::vector<UeRec> ues_;  // index = id - 1
  std::map<int, std::deque<int>> pending_;  // cell -> ue ids (FIFO)
  std::unordered_map<int, TaskRec> tasks_;
  int next_task_id_ = 1;

  ControllerState ctrl_;
  std::map<int, FrrhRt> frrhs_;
  int bbu_q_ = -1;

  // disaster chain state
  struct DisasterChain {
    std::vector<RouteStep> to_edge;   // source -> F-RRH4
    std::vector<RouteStep> to_bbu;    // continuation F-RRH4 -> BBU
    int edge_q = -1;
    double edge_rate = 0.0;
    int bbu_proc_q = -1;
    double bbu_rate = 0.0;
    bool edge_available = false;
  } chain_;

  // terrain per-UE attachment and routes
  std::map<int, int> terrain_attach_;  // ue -> strongest cluster node
  std::map<int, std::vector<RouteStep>> terrain_route_;  // node -> steps to head
  int terrain_head_ = -1;
  int head_proc_q_ = -1;
  double head_proc_rate_ = 0.0;
  std::vector<RouteStep> head_backhaul_;

  long generated_ = 0, admitted_ = 0, blocked_ = 0;
};

double Kernel::travel_time(const Position& a, const Position& b) const {
  return distance(a, b) / cfg_.controller.uav_speed_mps;
}

std::map<int, double> Kernel::current_loads() const {
  std::map<int, double> loads;
  for (const auto& [id, n] : nodes_)
    if (n.capacity_prbs > 0)
      loads[id] = static_cast<double>(n.capacity_prbs - n.free_prbs) /
                  static_cast<double>(n.capacity_prbs);
  return loads;
}

void Kernel::setup_hotspot() {
  TopologyParams tp = cfg_.topology;
  tp.architecture = cfg_.architecture;
  tp.demand_prbs = cfg_.traffic.demand_prbs;
  topo_ = build_topology(tp);
  const auto violations = validate_topology(topo_);
  if (!violations.empty())
    throw std::runtime_error("internal: built topology invalid: " +
                             violations.front().subject + ": " +
                             violations.front().rule);

  if (cfg_.architecture != Architecture::MacroOnly) bbu_q_ = new_queue();

  const double radius = topo_.cells.front().radius_m;
  const double ue_dist = cfg_.workload.ue_distance_frac * radius;
  const double ground_pl = terrestrial_path_loss(ue_dist, cfg_.channel);

  for (const auto& n : topo_.nodes) {
    if (n.kind == NodeKind::BBUPool) continue;
    NodeRt rt;
    rt.id = n.id;
    rt.kind = n.kind;
    rt.capacity_prbs = n.capacity_prbs;
    rt.free_prbs = n.capacity_prbs;
    rt.position = n.position;
    if (n.kind == NodeKind::MacroBS || n.kind == NodeKind::SRRH) {
      for (const auto& c : topo_.cells)
        for (int sid : c.serving_nodes)
          if (sid == n.id) rt.cell = c.id;
      rt.serving = true;
      const auto budget = link_rate(n.tx_power_dbm, ground_pl,
                                    cfg_.bandwidth_hz, cfg_.channel);
      rt.access_usable = budget.rate_bps > 0.0;
      rt.access_q = new_queue();
      rt.access_service_s = rt.access_usable
                                ? cfg_.workload.task_payload_bits / budget.rate_bps
                                : 0.0;
      if (n.kind == NodeKind::MacroBS) {
        rt.proc_q = new_queue();
        rt.proc_rate = cfg_.topology.macro_proc_rate;
      } else {
        rt.transport_q = new_queue();
        rt.transport_service_s =
            cfg_.workload.task_payload_bits / cfg_.topology.optical_rate_bps;
        rt.transport_fixed_s = cfg_.topology.optical_latency_s;
        rt.proc_q = bbu_q_;
        rt.proc_rate = cfg_.topology.bbu_proc_rate;
      }
    } else {
      // F-RRH on the standby platform; becomes a serving small cell when
      // deployed to the hotspot.
      rt.serving = false;
      const double pl =
          atg_path_loss(cfg_.workload.ue_distance_frac *
                            cfg_.workload.small_cell_radius_m,
                        std::max(cfg_.topology.frrh_altitude_m, 1.0),
                        cfg_.channel);
      const auto budget =
          link_rate(n.tx_power_dbm, pl, cfg_.bandwidth_hz, cfg_.channel);
      rt.access_usable = budget.rate_bps > 0.0;
      rt.access_q = new_queue();
      rt.access_service_s = rt.access_usable
                                ? cfg_.workload.task_payload_bits / budget.rate_bps
                                : 0.0;
      rt.transport_q = new_queue();
      rt.transport_service_s =
          cfg_.workload.task_payload_bits / cfg_.topology.backhaul_rate_bps;
      rt.transport_fixed_s = cfg_.topology.backhaul_latency_s;
      rt.proc_q = bbu_q_;
      rt.proc_rate = cfg_.topology.bbu_proc_rate;

      FrrhRt fr;
      fr.id = n.id;
      fr.park = n.position;
      frrhs_[n.id] = fr;
      ctrl_.frrh_states[n.id] = FrrhFlightState::Standby;
      ctrl_.batteries[n.id] = {cfg_.power.battery_capacity_wh,
                               cfg_.power.battery_capacity_wh};
      ctrl_.frrh_home_cell[n.id] = topo_.cells.front().id;
    }
    nodes_[n.id] = rt;
  }

  ctrl_.deploy_threshold = cfg_.controller.deploy_threshold;
  ctrl_.recall_threshold = cfg_.controller.recall_threshold;
  ctrl_.frrh_capacity_prbs = cfg_.topology.frrh_capacity_prbs;
  ctrl_.min_deploy_charge_wh =
      cfg_.controller.min_deploy_charge_frac * cfg_.power.battery_capacity_wh;
  for (const auto& c : topo_.cells)
    for (int sid : c.serving_nodes)
      if (topo_.find_node(sid)->kind == NodeKind::SRRH)
        ctrl_.node_cell[sid] = c.id;
}

void Kernel::generate_hotspot_traffic() {
  int first_id = 1;
  std::vector<UeSession> all;
  for (const auto& cell : topo_.cells) {
    auto local = generate_arrivals(cell, cfg_.ue_count, cfg_.duration_s,
                                   cfg_.seed, cfg_.traffic, first_id);
    first_id += static_cast<int>(local.size());
    all.insert(all.end(), local.begin(), local.end());
  }
  if (cfg_.handover_count > 0 && topo_.cells.size() >= 2) {
    const Cell* to = topo_.find_cell(cfg_.hotspot_cell);
    if (to) {
      const Cell& from = topo_.cells.front();
      double w0 = cfg_.handover_window_start_s >= 0.0
                      ? cfg_.handover_window_start_s
                      : cfg_.warmup_s();
      double w1 = cfg_.handover_window_end_s >= 0.0
                      ? cfg_.handover_window_end_s
                      : cfg_.duration_s;
      auto wave = generate_handover_wave(from, *to, cfg_.handover_count,
                                         {w0, w1}, cfg_.seed, cfg_.traffic,
                                         first_id);
      first_id += static_cast<int>(wave.size());
      all.insert(all.end(), wave.begin(), wave.end());
    }
  }
  ues_.resize(all.size());
  for (const auto& s : all) {
    ues_[s.id - 1].s = s;
    schedule(s.arrival_time_s, 1, EventKind::UeArrival, s.id);
  }
}

std::vector<std::pair<int, int>> Kernel::candidates_for(const UeRec& ue) const {
  std::vector<std::pair<int, int>> out;
  if (cfg_.scenario == Scenario::ComplexTerrain) {
    // Terrain UEs only reach the node they can decode.
    const auto it = terrain_attach_.find(ue.s.id);
    if (it != terrain_attach_.end()) {
      const NodeRt& n = nodes_.at(it->second);
      if (n.capacity_prbs > 0) out.emplace_back(n.id, n.free_prbs);
    }
    return out;
  }
  for (const auto& [id, n] : nodes_) {
    if (!n.serving || n.cell != ue.s.cell || n.capacity_prbs <= 0) continue;
    out.emplace_back(id, n.free_prbs);
  }
  return out;
}

void Kernel::admit(int ue_id, int node_id) {
  UeRec& ue = ues_[ue_id - 1];
  NodeRt& n = node(node_id);
  if (n.free_prbs < ue.s.demand_prbs)
    throw std::runtime_error("internal: admit without capacity");
  n.free_prbs -= ue.s.demand_prbs;
  const bool first_admission = ue.s.status != UeStatus::Admitted;
  ue.s.status = UeStatus::Admitted;
  ue.s.serving_node = node_id;
  ue.in_service = true;
  ue.in_pending = false;
  line("ADM " + fmt(now_) + " " + std::to_string(ue_id) + " " +
       std::to_string(node_id));
  if (first_admission) {
    ++admitted_;
    ue.depart_t = now_ + ue.s.holding_time_s;
    schedule(ue.depart_t, 0, EventKind::UeDeparture, ue_id);
    if (cfg_.workload.task_rate_hz > 0.0)
      schedule(now_ + rng_.exponential(cfg_.workload.task_rate_hz), 1,
               EventKind::TaskArrival, ue_id);
  }
}

void Kernel::block(int ue_id, double at) {
  UeRec& ue = ues_[ue_id - 1];
  ue.s.status = UeStatus::Blocked;
  ue.in_pending = false;
  ++blocked_;
  line("BLK " + fmt(at) + " " + std::to_string(ue_id));
}

void Kernel::on_ue_arrival(int ue_id) {
  UeRec& ue = ues_[ue_id - 1];
  ++generated_;
  line("A " + fmt(now_) + " " + std::to_string(ue_id) + " " +
       std::to_string(ue.s.cell) + " " +
       (ue.s.origin == UeOrigin::Local ? "local" : "handover"));
  if (cfg_.scenario == Scenario::ComplexTerrain &&
      terrain_attach_.find(ue_id) == terrain_attach_.end()) {
    block(ue_id, now_);  // outside every node's decode range
    return;
  }
  const auto choice = admit_ue(ue.s, candidates_for(ue));
  if (choice) {
    admit(ue_id, *choice);
  } else if (cfg_.controller.admission_timeout_s <= 0.0) {
    block(ue_id, now_);
  } else {
    ue.in_pending = true;
    pending_[ue.s.cell].push_back(ue_id);
    schedule(now_ + cfg_.controller.admission_timeout_s, 1,
             EventKind::UeTimeout, ue_id);
  }
}

void Kernel::on_ue_timeout(int ue_id) {
  UeRec& ue = ues_[ue_id - 1];
  if (ue.s.status != UeStatus::Pending || !ue.in_pending) return;
  block(ue_id, now_);
}

void Kernel::on_ue_departure(int ue_id) {
  UeRec& ue = ues_[ue_id - 1];
  if (ue.s.status != UeStatus::Admitted || !ue.in_service) return;
  if (now_ != ue.depart_t) return;  // superseded by a handback
  NodeRt& n = node(ue.s.serving_node);
  n.free_prbs += ue.s.demand_prbs;
  if (n.free_prbs > n.capacity_prbs)
    throw std::runtime_error("internal: double release at event seq " +
                             std::to_string(seq_));
  ue.in_service = false;
  line("DEP " + fmt(now_) + " " + std::to_string(ue_id) + " " +
       std::to_string(ue.s.serving_node));
  try_pending(n.cell);
}

void Kernel::try_pending(int cell) {
  auto it = pending_.find(cell);
  if (it == pending_.end()) return;
  auto& q = it->second;
  while (!q.empty()) {
    const int ue_id = q.front();
    UeRec& ue = ues_[ue_id - 1];
    if (!ue.in_pending || ue.s.status != UeStatus::Pending) {
      q.pop_front();
      continue;
    }
    const auto choice = admit_ue(ue.s, candidates_for(ue));
    if (!choice) break;
    q.pop_front();
    admit(ue_id, *choice);
  }
}

void Kernel::handback_ues(int frrh_node) {
  // UEs served by a departing F-RRH go back through admission. Their
  // original classification (admitted) stands; a failed handback is traced
  // but not recounted as blocking.
  std::vector<int> victims;
  for (const auto& ue : ues_)
    if (ue.in_service && ue.s.status == UeStatus::Admitted &&
        ue.s.serving_node == frrh_node)
      victims.push_back(ue.s.id);
  NodeRt& f = node(frrh_node);
  for (int ue_id : victims) {
    UeRec& ue = ues_[ue_id - 1];
    f.free_prbs += ue.s.demand_prbs;
    ue.in_service = false;
    std::vector<std::pair<int, int>> cands;
    for (const auto& c : candidates_for(ue))
      if (c.first != frrh_node) cands.push_back(c);
    const auto choice = admit_ue(ue.s, cands);
    if (choice) {
      NodeRt& n = node(*choice);
      n.free_prbs -= ue.s.demand_prbs;
      ue.s.serving_node = *choice;
      ue.in_service = true;
      line("HND " + fmt(now_) + " " + std::to_string(ue_id) + " " +
           std::to_string(*choice));
    } else {
      line("HND " + fmt(now_) + " " + std::to_string(ue_id) + " lost");
    }
  }
}

void Kernel::start_return(int frrh, const char* reason) {
  ctrl_.frrh_states[frrh] = FrrhFlightState::Returning;
  ctrl_.deployed_cell.erase(frrh);
  NodeRt& n = node(frrh);
  handback_ues(frrh);
  n.serving = false;
  line(std::string("FRRH ") + fmt(now_) + " " + std::to_string(frrh) +
       " returning " + reason);
  schedule(now_ + travel_time(n.position, frrhs_[frrh].park), 1,
           EventKind::FrrhReturned, frrh);
}

void Kernel::on_control_tick() {
  const double dt = cfg_.controller.control_period_s;

  // Battery integration and charging.
  for (auto& [id, st] : ctrl_.frrh_states) {
    auto& batt = ctrl_.batteries[id];
    if (st == FrrhFlightState::EnRoute || st == FrrhFlightState::Returning ||
        st == FrrhFlightState::Deployed) {
      double load = 0.0;
      if (st == FrrhFlightState::Deployed) {
        const NodeRt& n = node(id);
        load = n.capacity_prbs > 0
                   ? static_cast<double>(n.capacity_prbs - n.free_prbs) /
                         n.capacity_prbs
                   : 0.0;
      }
      batt = battery_step(batt, node_power(cfg_.power.frrh, load, true), dt);
      if (st == FrrhFlightState::Deployed && batt.empty()) {
        line("CTRL " + fmt(now_) + " alert " + std::to_string(id) +
             " battery");
        start_return(id, "battery");
      }
    } else if (st == FrrhFlightState::Charging) {
      batt = battery_charge(batt, cfg_.power.charge_rate_w, dt);
      if (batt.remaining_wh >= batt.capacity_wh) {
        st = FrrhFlightState::Standby;
        line("FRRH " + fmt(now_) + " " + std::to_string(id) + " standby");
      }
    }
  }

  // Utilization samples for every monitored S-RRH.
  std::vector<UtilizationSample> samples;
  for (const auto& [nid, cell] : ctrl_.node_cell) {
    const NodeRt& n = node(nid);
    samples.push_back(
        make_sample(nid, now_, n.capacity_prbs - n.free_prbs, n.capacity_prbs));
  }
  auto [next, actions] = control_step(std::move(ctrl_), samples, now_);
  ctrl_ = std::move(next);
  for (const auto& act : actions) {
    switch (act.kind) {
      case ControlAction::Kind::Deploy: {
        FrrhRt& fr = frrhs_[act.frrh];
        fr.target_cell = act.cell;
        const Cell* target = topo_.find_cell(act.cell);
        // Small cells on a ring at half radius inside the hotspot cell.
        const double ang =
            2.0 * kPi * (act.frrh % std::max<int>(1, (int)frrhs_.size())) /
            std::max<int>(1, (int)frrhs_.size());
        fr.deploy_pos = {target->center.x + 0.5 * target->radius_m * std::cos(ang),
                         target->center.y + 0.5 * target->radius_m * std::sin(ang),
                         cfg_.topology.frrh_altitude_m};
        line("CTRL " + fmt(now_) + " deploy " + std::to_string(act.frrh) +
             " " + std::to_string(act.cell));
        schedule(now_ + travel_time(frrhs_[act.frrh].park, fr.deploy_pos), 1,
                 EventKind::FrrhArrived, act.frrh, act.cell);
        break;
      }
      case ControlAction::Kind::Recall:
        line("CTRL " + fmt(now_) + " recall " + std::to_string(act.frrh) +
             " " + std::to_string(act.cell));
        start_return(act.frrh, "recall");
        break;
      case ControlAction::Kind::Alert:
        line("CTRL " + fmt(now_) + " alert -1 " + std::to_string(act.cell));
        break;
    }
  }

  if (now_ + dt <= cfg_.duration_s)
    schedule(now_ + dt, 1, EventKind::ControlTick);
}

void Kernel::on_frrh_arrived(int frrh) {
  if (ctrl_.frrh_states[frrh] != FrrhFlightState::EnRoute) return;
  ctrl_.frrh_states[frrh] = FrrhFlightState::Deployed;
  FrrhRt& fr = frrhs_[frrh];
  NodeRt& n = node(frrh);
  n.position = fr.deploy_pos;
  n.cell = fr.target_cell;
  n.serving = true;
  line("FRRH " + fmt(now_) + " " + std::to_string(frrh) + " deployed " +
       std::to_string(fr.target_cell));
  try_pending(fr.target_cell);
}

void Kernel::on_frrh_returned(int frrh) {
  if (ctrl_.frrh_states[frrh] != FrrhFlightState::Returning) return;
  NodeRt& n = node(frrh);
  n.position = frrhs_[frrh].park;
  auto& batt = ctrl_.batteries[frrh];
  if (batt.remaining_wh >= batt.capacity_wh) {
    ctrl_.frrh_states[frrh] = FrrhFlightState::Standby;
    line("FRRH " + fmt(now_) + " " + std::to_string(frrh) + " standby");
  } else {
    ctrl_.frrh_states[frrh] = FrrhFlightState::Charging;
    line("FRRH " + fmt(now_) + " " + std::to_string(frrh) + " charging");
  }
}

void Kernel::make_task_for_ue(const UeRec& ue) {
  const NodeRt& n = node(ue.s.serving_node);
  if (!n.access_usable) {
    line("DROP " + fmt(now_) + " " + std::to_string(next_task_id_++) +
         " no_link");
    return;
  }
  TaskRec t;
  t.id = next_task_id_++;
  t.gen_t = now_;
  t.site = ProcSite::BBUPool;
  t.steps.push_back({n.access_q, n.access_service_s, 0.0});

  if (cfg_.scenario == Scenario::ComplexTerrain) {
    const auto& uplink = terrain_route_.at(n.id);
    t.steps.insert(t.steps.end(), uplink.begin(), uplink.end());
    const double comm_shared = estimate_steps(t.steps);
    std::optional<SiteEstimate> edge, bbu;
    if (head_proc_rate_ > 0.0)
      edge = SiteEstimate{
          comm_shared,
          (queues_[head_proc_q_].in_system(now_) + 1) / head_proc_rate_};
    if (!head_backhaul_.empty())
      bbu = SiteEstimate{
          comm_shared + estimate_steps(head_backhaul_),
          (queues_[bbu_q_].in_system(now_) + 1) / cfg_.topology.bbu_proc_rate};
    const auto site = processing_site_decision(edge, bbu);
    if (!site) {
      line("DROP " + fmt(now_) + " " + std::to_string(t.id) + " no_processor");
      return;
    }
    line("DEC " + fmt(now_) + " " + std::to_string(t.id) + " " +
         (edge ? fmt(edge->comm_s + edge->proc_s) : "na") + " " +
         (bbu ? fmt(bbu->comm_s + bbu->proc_s) : "na") + " " +
         to_string(*site));
    t.site = *site;
    if (*site == ProcSite::EdgeFRRH) {
      t.proc_queue = head_proc_q_;
      t.proc_rate = head_proc_rate_;
    } else {
      t.steps.insert(t.steps.end(), head_backhaul_.begin(),
                     head_backhaul_.end());
      t.proc_queue = bbu_q_;
      t.proc_rate = cfg_.topology.bbu_proc_rate;
    }
    launch_task(std::move(t));
    return;
  }

  if (n.transport_q >= 0)
    t.steps.push_back({n.transport_q, n.transport_service_s, n.transport_fixed_s});
  t.proc_queue = n.proc_q;
  t.proc_rate = n.proc_rate;
  launch_task(std::move(t));
}

double Kernel::estimate_steps(const std::vector<RouteStep>& steps) {
  double total = 0.0;
  for (const auto& s : steps)
    total += queues_[s.queue].predicted_wait(now_) + s.service_s + s.fixed_s;
  return total;
}

void Kernel::launch_task(TaskRec task) {
  const int id = static_cast<int>(task.id);
  tasks_[id] = std::move(task);
  schedule(now_, 1, EventKind::TaskHop, id);
}

void Kernel::on_task_gen(int ue_id) {
  UeRec& ue = ues_[ue_id - 1];
  if (!ue.in_service || ue.s.status != UeStatus::Admitted) return;
  make_task_for_ue(ue);
  schedule(now_ + rng_.exponential(cfg_.workload.task_rate_hz), 1,
           EventKind::TaskArrival, ue_id);
}

void Kernel::on_task_hop(int task_id) {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) return;
  TaskRec& t = it->second;
  if (t.next_step < static_cast<int>(t.steps.size())) {
    const RouteStep& step = t.steps[t.next_step++];
    const double done = queues_[step.queue].enqueue(now_, step.service_s);
    schedule(done + step.fixed_s, 1, EventKind::TaskHop, task_id);
  } else {
    t.comm_s = now_ - t.gen_t;
    const double service = rng_.exponential(t.proc_rate);
    const double done = queues_[t.proc_queue].enqueue(now_, service);
    schedule(done, 1, EventKind::TaskDone, task_id);
  }
}

void Kernel::on_task_done(int task_id) {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) return;
  TaskRec& t = it->second;
  const DelayBreakdown d =
      total_delay(t.comm_s, now_ - t.gen_t - t.comm_s, t.site);
  line("TASK " + fmt(now_) + " " + std::to_string(task_id) + " " +
       to_string(d.site) + " " + fmt(d.comm_s) + " " + fmt(d.proc_s) + " " +
       fmt(d.total_s) + " " + fmt(t.gen_t));
  tasks_.erase(it);
}

void Kernel::on_metrics_sample() {
  const double w =
      total_power(topo_, current_loads(), ctrl_.frrh_states, cfg_.power);
  line("PWR " + fmt(now_) + " " + fmt(w));
  if (now_ + cfg_.metrics_period_s <= cfg_.duration_s)
    schedule(now_ + cfg_.metrics_period_s, 1, EventKind::MetricsSample);
}

void Kernel::setup_disaster() {
  topo_ = build_disaster_topology(cfg_);

  // Hop rates: UAV-to-UAV wireless links at the configured hop distance.
  const double hop = cfg_.workload.disaster_hop_distance_m;
  const double pl_uav =
      free_space_loss_db(hop, cfg_.channel.carrier_hz) +
      cfg_.channel.excess_los_db;
  const auto uav_budget = link_rate(cfg_.topology.frrh_tx_dbm, pl_uav,
                                    cfg_.bandwidth_hz, cfg_.channel);
  const double payload = cfg_.workload.task_payload_bits;
  const double uav_service =
      uav_budget.rate_bps > 0.0 ? payload / uav_budget.rate_bps : -1.0;
  const double prop = hop / 299792458.0;

  chain_.edge_available = cfg_.topology.frrh_proc_rate > 0.0;
  const int q23 = new_queue();
  const int q34 = new_queue();
  const int q4s = new_queue();
  const int qsb = new_queue();
  chain_.to_edge = {{q23, uav_service, prop}, {q34, uav_service, prop}};
  chain_.to_bbu = {
      {q4s, payload / cfg_.topology.backhaul_rate_bps,
       cfg_.topology.backhaul_latency_s},
      {qsb, payload / cfg_.topology.optical_rate_bps,
       cfg_.topology.optical_latency_s}};
  chain_.edge_q = new_queue();
  chain_.edge_rate = cfg_.topology.frrh_proc_rate;
  chain_.bbu_proc_q = new_queue();
  chain_.bbu_rate = cfg_.topology.bbu_proc_rate;

  if (uav_service < 0.0)
    throw std::runtime_error("disaster: relay link below decode floor");

  // Periodic survey reports from F-RRH2.
  for (double t = cfg_.workload.disaster_task_period_s; t < cfg_.duration_s;
       t += cfg_.workload.disaster_task_period_s)
    schedule(t, 1, EventKind::TaskArrival, 0, 1 /* disaster source */);
}

void Kernel::setup_terrain() {
  topo_ = build_terrain_topology(cfg_);
  bbu_q_ = new_queue();
  terrain_head_ = topo_.cells.front().serving_nodes.front();
  head_proc_q_ = new_queue();
  head_proc_rate_ = cfg_.topology.frrh_proc_rate;

  // Routes from each cluster node up to the head, walking fronthaul links.
  std::map<int, std::pair<int, LinkSpec>> parent;  // child -> (parent, link)
  for (const auto& l : topo_.links) {
    if (l.kind != LinkKind::WirelessFronthaul) continue;
    parent[l.to] = {l.from, l};
  }
  const double payload = cfg_.workload.task_payload_bits;
  for (const auto& n : topo_.nodes) {
    if (!n.is_frrh()) continue;
    std::vector<RouteStep> steps;
    int cur = n.id;
    while (cur != terrain_head_) {
      const auto& [par, link] = parent.at(cur);
      const int q = new_queue();
      steps.push_back({q, payload / link.capacity_bps, link.fixed_latency_s});
      cur = par;
    }
    terrain_route_[n.id] = steps;
  }
  for (const auto& l : topo_.links)
    if (l.kind == LinkKind::MicrowaveBackhaul && l.from == terrain_head_) {
      const int q = new_queue();
      head_backhaul_ = {{q, payload / l.capacity_bps, l.fixed_latency_s}};
    }

  // UEs uniform over the terrain disc, attached to the strongest node.
  Rng pos_rng(substream_seed(cfg_.seed, 0x7E44A1));
  auto arrivals = generate_arrivals(topo_.cells.front(), cfg_.ue_count,
                                    cfg_.duration_s, cfg_.seed, cfg_.traffic);
  ues_.resize(arrivals.size());
  long covered = 0;
  for (auto& s : arrivals) {
    const double r = cfg_.workload.terrain_ue_radius_m * std::sqrt(pos_rng.uniform());
    const double ang = pos_rng.uniform(0.0, 2.0 * kPi);
    const Position pos{r * std::cos(ang), r * std::sin(ang), 0.0};
    int best = -1;
    double best_rate = 0.0;
    for (const auto& n : topo_.nodes) {
      if (!n.is_frrh()) continue;
      const double d = std::hypot(n.position.x - pos.x, n.position.y - pos.y);
      const double pl = atg_path_loss(d, std::max(n.position.z, 1.0), cfg_.channel);
      const auto b = link_rate(n.tx_power_dbm, pl, cfg_.bandwidth_hz, cfg_.channel);
      if (b.rate_bps > best_rate) {
        best_rate = b.rate_bps;
        best = n.id;
      }
    }
    UeRec rec;
    rec.s = s;
    rec.s.serving_node = -1;
    ues_[s.id - 1] = rec;
    if (best >= 0) {
      ++covered;
      // Terrain UEs can only reach their strongest cluster node.
      ues_[s.id - 1].s.demand_rate_bps = best_rate;
      ues_[s.id - 1].s.cell = 1;
      terrain_attach_[s.id] = best;
    }
    schedule(s.arrival_time_s, 1, EventKind::UeArrival, s.id);
  }
  line("COV " + fmt(arrivals.empty()
                        ? 0.0
                        : static_cast<double>(covered) / arrivals.size()) +
       " " + std::to_string(covered) + " " + std::to_string(arrivals.size()));

  for (const auto& n : topo_.nodes) {
    if (!n.is_frrh()) continue;
    NodeRt rt;
    rt.id = n.id;
    rt.kind = n.kind;
    rt.cell = 1;
    rt.capacity_prbs = n.capacity_prbs;
    rt.free_prbs = n.capacity_prbs;
    rt.serving = true;
    rt.access_q = new_queue();
    const double pl = atg_path_loss(0.5 * cfg_.workload.terrain_member_spacing_m,
                                    std::max(n.position.z, 1.0), cfg_.channel);
    const auto b = link_rate(n.tx_power_dbm, pl, cfg_.bandwidth_hz, cfg_.channel);
    rt.access_usable = b.rate_bps > 0.0;
    rt.access_service_s =
        rt.access_usable ? cfg_.workload.task_payload_bits / b.rate_bps : 0.0;
    rt.position = n.position;
    nodes_[n.id] = rt;
  }
}

void Kernel::main_loop() {
  while (!queue_.empty()) {
    const Event ev = queue_.top();
    queue_.pop();
    if (ev.time_s < now_)
      throw std::runtime_error("internal: causality violation at seq " +
                               std::to_string(ev.seq));
    now_ = ev.time_s;
    if (ev.kind == EventKind::End) break;
    switch (ev.kind) {
      case EventKind::UeArrival: on_ue_arrival(ev.a); break;
      case EventKind::UeDeparture: on_ue_departure(ev.a); break;
      case EventKind::UeTimeout: on_ue_timeout(ev.a); break;
      case EventKind::ControlTick: on_control_tick(); break;
      case EventKind::FrrhArrived: on_frrh_arrived(ev.a); break;
      case EventKind::FrrhReturned: on_frrh_returned(ev.a); break;
      case EventKind::TaskArrival:
        if (ev.b == 1) {
          // disaster survey source
          TaskRec t;
          t.id = next_task_id_++;
          t.gen_t = now_;
          std::optional<SiteEstimate> edge, bbu;
          double comm_shared = 0.0;
          for (const auto& s : chain_.to_edge)
            comm_shared += queues_[s.queue].predicted_wait(now_) + s.service_s +
                           s.fixed_s;
          if (chain_.edge_available) {
            const double backlog =
                queues_[chain_.edge_q].in_system(now_) + 1;
            edge = SiteEstimate{comm_shared, backlog / chain_.edge_rate};
          }
          double comm_bbu = comm_shared;
          for (const auto& s : chain_.to_bbu)
            comm_bbu += queues_[s.queue].predicted_wait(now_) + s.service_s +
                        s.fixed_s;
          const double bbu_backlog =
              queues_[chain_.bbu_proc_q].in_system(now_) + 1;
          bbu = SiteEstimate{comm_bbu, bbu_backlog / chain_.bbu_rate};
          const auto site = processing_site_decision(edge, bbu);
          if (!site) {
            line("DROP " + fmt(now_) + " " + std::to_string(t.id) +
                 " no_processor");
            break;
          }
          line("DEC " + fmt(now_) + " " + std::to_string(t.id) + " " +
               (edge ? fmt(edge->comm_s + edge->proc_s) : "na") + " " +
               fmt(bbu->comm_s + bbu->proc_s) + " " + to_string(*site));
          t.site = *site;
          t.steps = chain_.to_edge;
          if (*site == ProcSite::BBUPool) {
            t.steps.insert(t.steps.end(), chain_.to_bbu.begin(),
                           chain_.to_bbu.end());
            t.proc_queue = chain_.bbu_proc_q;
            t.proc_rate = chain_.bbu_rate;
          } else {
            t.proc_queue = chain_.edge_q;
            t.proc_rate = chain_.edge_rate;
          }
          launch_task(std::move(t));
        } else {
          on_task_gen(ev.a);
        }
        break;
      case EventKind::TaskHop: on_task_hop(ev.a); break;
      case EventKind::TaskDone: on_task_done(ev.a); break;
      case EventKind::MetricsSample: on_metrics_sample(); break;
      case EventKind::End: break;
    }
  }
}

RunResult Kernel::run() {
  line("RUN arch=" + std::string(to_string(cfg_.architecture)) +
       " scenario=" + to_string(cfg_.scenario) +
       " duration=" + fmt(cfg_.duration_s) + " warmup=" + fmt(cfg_.warmup_s()) +
       " seed=" + std::to_string(cfg_.seed) +
       " ue_count=" + std::to_string(cfg_.ue_count));

  if (cfg_.duration_s > 0.0) {
    switch (cfg_.scenario) {
      case Scenario::Hotspot:
        setup_hotspot();
        generate_hotspot_traffic();
        break;
      case Scenario::Disaster:
        setup_disaster();
        break;
      case Scenario::ComplexTerrain:
        setup_terrain();
        break;
    }
    if (cfg_.scenario == Scenario::Hotspot &&
        cfg_.architecture == Architecture::UCRAN &&
        cfg_.controller.control_period_s > 0.0)
      schedule(cfg_.controller.control_period_s, 1, EventKind::ControlTick);
    if (cfg_.metrics_period_s > 0.0 && cfg_.scenario != Scenario::Disaster)
      schedule(cfg_.metrics_period_s, 1, EventKind::MetricsSample);
    schedule(cfg_.duration_s, 2, EventKind::End);
    main_loop();
    now_ = cfg_.duration_s;
    // Unresolved pending sessions at the end of the run count as blocked.
    for (auto& [cell, q] : pending_) {
      for (int ue_id : q) {
        UeRec& ue = ues_[ue_id - 1];
        if (ue.in_pending && ue.s.status == UeStatus::Pending)
          block(ue_id, now_);
      }
      q.clear();
    }
    for (auto& q : queues_) q.finalize(cfg_.duration_s);
  }

  if (generated_ != admitted_ + blocked_)
    throw std::runtime_error(
        "internal: session conservation violated (generated=" +
        std::to_string(generated_) + " admitted=" + std::to_string(admitted_) +
        " blocked=" + std::to_string(blocked_) + ")");

  line("END " + fmt(cfg_.duration_s) + " generated=" +
       std::to_string(generated_) + " admitted=" + std::to_string(admitted_) +
       " blocked=" + std::to_string(blocked_));

  RunResult res;
  res.topology = topo_;
  res.trace = std::move(trace_);
  res.metrics = compute_metrics(res.trace);

  std::ostringstream rec;
  rec << "# run record\n" << describe_config(cfg_) << "\n"
      << describe_topology(res.topology)
      << "trace_digest=" << res.trace.digest() << "\n"
      << "power_accounting="
      << (cfg_.power.include_hover ? "hover_included" : "hover_excluded")
      << "\n";
  res.run_record = rec.str();
  return res;
}

}  // namespace

Topology build_disaster_topology(const ScenarioConfig& cfg) {
  if (cfg.architecture != Architecture::UCRAN)
    throw std::invalid_argument("disaster scenario requires UCRAN");
  Topology t;
  t.architecture = Architecture::UCRAN;
  const double hop = cfg.workload.disaster_hop_distance_m;
  const double alt = cfg.topology.frrh_altitude_m;
  const bool edge = cfg.topology.frrh_proc_rate > 0.0;

  NodeSpec f2{1, NodeKind::FRRHPassive, {0, 0, alt}, cfg.topology.frrh_tx_dbm,
              cfg.topology.frrh_capacity_prbs, 0.0,
              cfg.power.battery_capacity_wh};
  NodeSpec f3{2, NodeKind::FRRHPassive, {hop, 0, alt},
              cfg.topology.frrh_tx_dbm, cfg.topology.frrh_capacity_prbs, 0.0,
              cfg.power.battery_capacity_wh};
  NodeSpec f4{3, edge ? NodeKind::FRRHActive : NodeKind::FRRHPassive,
              {2 * hop, 0, alt}, cfg.topology.frrh_tx_dbm,
              cfg.topology.frrh_capacity_prbs,
              edge ? cfg.topology.frrh_proc_rate : 0.0,
              cfg.power.battery_capacity_wh};
  NodeSpec srrh{4, NodeKind::SRRH, {3 * hop, 0, cfg.topology.bs_height_m},
                cfg.topology.srrh_tx_dbm, cfg.topology.srrh_capacity_prbs,
                0.0, std::nullopt};
  NodeSpec bbu{5, NodeKind::BBUPool, {3 * hop + 100, 0, 0}, 0.0, 0,
               cfg.topology.bbu_proc_rate, std::nullopt};
  t.nodes = {f2, f3, f4, srrh, bbu};
  t.links = {
      {1, 1, 2, LinkKind::WirelessFronthaul, hop / 299792458.0, 100e6},
      {2, 2, 3, LinkKind::WirelessFronthaul, hop / 299792458.0, 100e6},
      {3, 3, 4, LinkKind::WirelessFronthaul, cfg.topology.backhaul_latency_s,
       cfg.topology.backhaul_rate_bps},
      {4, 4, 5, LinkKind::OpticalFronthaul, cfg.topology.optical_latency_s,
       cfg.topology.optical_rate_bps}};
  Cell c;
  c.id = 1;
  c.area_km2 = cfg.topology.area_km2;
  c.max_ues = cfg.max_ues_per_cell();
  c.serving_nodes = {1, 2, 3};
  t.cells = {c};
  return t;
}

Topology build_terrain_topology(const ScenarioConfig& cfg) {
  if (cfg.architecture != Architecture::UCRAN)
    throw std::invalid_argument("terrain scenario requires UCRAN");
  const double alt = cfg.topology.frrh_altitude_m;
  NodeSpec head;
  head.id = 1;
  head.kind = NodeKind::FRRHActive;
  head.position = {0, 0, alt};
  head.tx_power_dbm = cfg.topology.frrh_tx_dbm;
  head.capacity_prbs = cfg.topology.frrh_capacity_prbs;
  head.proc_rate = std::max(cfg.topology.frrh_proc_rate, 1.0);
  head.battery_wh = cfg.power.battery_capacity_wh;

  std::vector<NodeSpec> members;
  for (int i = 0; i < cfg.workload.terrain_members; ++i) {
    NodeSpec m = head;
    m.id = 2 + i;
    m.kind = NodeKind::FRRHPassive;
    m.proc_rate = 0.0;
    const double ang = 2.0 * kPi * i /
                       std::max(1, cfg.workload.terrain_members);
    m.position = {cfg.workload.terrain_member_spacing_m * std::cos(ang),
                  cfg.workload.terrain_member_spacing_m * std::sin(ang), alt};
    members.push_back(m);
  }
  return build_cluster_topology(head, members, cfg.workload.terrain_fan_out);
}

RunResult run(const ScenarioConfig& config) {
  Kernel k(config);
  return k.run();
}

SweepResult run_sweep(const ScenarioConfig& base,
                      const std::vector<double>& fractions,
                      const std::vector<std::uint64_t>& seeds,
                      const std::vector<Architecture>& architectures) {
  if (seeds.empty()) throw std::invalid_argument("run_sweep: need >= 1 seed");
  if (fractions.empty())
    throw std::invalid_argument("run_sweep: need >= 1 load fraction");

  LoadSchedule schedule;
  schedule.fractions = fractions;
  schedule.max_ues = base.max_ues_per_cell();
  const auto points = schedule_sweep(schedule);

  SweepResult result;
  for (Architecture arch : architectures) {
    for (const auto& pt : points) {
      std::vector<RunMetrics> runs;
      for (std::uint64_t seed : seeds) {
        ScenarioConfig cfg = base;
        cfg.architecture = arch;
        cfg.topology.architecture = arch;
        cfg.seed = seed;
        cfg.ue_count = pt.ue_count;
        cfg.handover_count = static_cast<int>(
            std::lround(pt.fraction * base.handover_count));
        RunResult r;
        try {
          r = run(cfg);
        } catch (const std::exception& e) {
          throw std::runtime_error(
              "sweep run failed (arch=" + std::string(to_string(arch)) +
              " ues=" + std::to_string(pt.ue_count) +
              " seed=" + std::to_string(seed) + "): " + e.what());
        }
        runs.push_back(r.metrics);
        result.runs.push_back({arch, pt.fraction, pt.ue_count, seed, r.metrics});
      }
      result.report.rows.push_back(aggregate_runs(arch, pt.ue_count, runs));
    }
  }
  return result;
}

}  // namespace ucran
