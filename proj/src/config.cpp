#include "ucran/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ucran {

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Hotspot: return "hotspot";
    case Scenario::Disaster: return "disaster";
    case Scenario::ComplexTerrain: return "terrain";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
}

double to_double(int line, const std::string& v) {
  try {
    std::size_t pos;
    double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const std::invalid_argument&) {
    fail(line, "expected a number, got '" + v + "'");
  } catch (const std::out_of_range&) {
    fail(line, "number out of range: '" + v + "'");
  }
}

int to_int(int line, const std::string& v) {
  double d = to_double(line, v);
  if (d != std::floor(d)) fail(line, "expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

bool to_bool(int line, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "run" && section != "topology" && section != "traffic" &&
          section != "channel" && section != "controller" &&
          section != "power" && section != "workload" && section != "sweep")
        fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key outside any section");

    auto d = [&] { return to_double(line_no, val); };
    auto i = [&] { return to_int(line_no, val); };
    auto b = [&] { return to_bool(line_no, val); };

    if (section == "run") {
      if (key == "architecture") {
        if (val == "macro") cfg.architecture = Architecture::MacroOnly;
        else if (val == "cran") cfg.architecture = Architecture::CRAN;
        else if (val == "ucran") cfg.architecture = Architecture::UCRAN;
        else fail(line_no, "unknown architecture '" + val + "'");
      } else if (key == "scenario") {
        if (val == "hotspot") cfg.scenario = Scenario::Hotspot;
        else if (val == "disaster") cfg.scenario = Scenario::Disaster;
        else if (val == "terrain") cfg.scenario = Scenario::ComplexTerrain;
        else fail(line_no, "unknown scenario '" + val + "'");
      } else if (key == "duration_s") cfg.duration_s = d();
      else if (key == "warmup_frac") cfg.warmup_frac = d();
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(i());
      else if (key == "metrics_period_s") cfg.metrics_period_s = d();
      else fail(line_no, "unknown key '" + key + "' in [run]");
    } else if (section == "topology") {
      auto& t = cfg.topology;
      if (key == "cells") t.num_cells = i();
      else if (key == "area_km2") t.area_km2 = d();
      else if (key == "bs_height_m") t.bs_height_m = d();
      else if (key == "frrh_altitude_m") t.frrh_altitude_m = d();
      else if (key == "frrh_count") t.frrh_count = i();
      else if (key == "srrh_capacity_prbs") t.srrh_capacity_prbs = i();
      else if (key == "frrh_capacity_prbs") t.frrh_capacity_prbs = i();
      else if (key == "macro_tx_dbm") t.macro_tx_dbm = d();
      else if (key == "srrh_tx_dbm") t.srrh_tx_dbm = d();
      else if (key == "frrh_tx_dbm") t.frrh_tx_dbm = d();
      else if (key == "bbu_proc_rate") t.bbu_proc_rate = d();
      else if (key == "macro_proc_rate") t.macro_proc_rate = d();
      else if (key == "frrh_proc_rate") t.frrh_proc_rate = d();
      else if (key == "optical_latency_s") t.optical_latency_s = d();
      else if (key == "optical_rate_bps") t.optical_rate_bps = d();
      else if (key == "backhaul_latency_s") t.backhaul_latency_s = d();
      else if (key == "backhaul_rate_bps") t.backhaul_rate_bps = d();
      else fail(line_no, "unknown key '" + key + "' in [topology]");
    } else if (section == "traffic") {
      if (key == "mean_holding_s") cfg.traffic.mean_holding_s = d();
      else if (key == "demand_prbs") cfg.traffic.demand_prbs = i();
      else if (key == "hard_cap") cfg.traffic.hard_cap = i();
      else if (key == "ue_count") cfg.ue_count = i();
      else if (key == "handover_count") cfg.handover_count = i();
      else if (key == "hotspot_cell") cfg.hotspot_cell = i();
      else if (key == "handover_window_start_s")
        cfg.handover_window_start_s = d();
      else if (key == "handover_window_end_s") cfg.handover_window_end_s = d();
      else fail(line_no, "unknown key '" + key + "' in [traffic]");
    } else if (section == "channel") {
      if (key == "s_curve_a") cfg.channel.s_curve_a = d();
      else if (key == "s_curve_b") cfg.channel.s_curve_b = d();
      else if (key == "excess_los_db") cfg.channel.excess_los_db = d();
      else if (key == "excess_nlos_db") cfg.channel.excess_nlos_db = d();
      else if (key == "carrier_ghz") cfg.channel.carrier_hz = d() * 1e9;
      else if (key == "terrestrial_exponent")
        cfg.channel.terrestrial_exponent = d();
      else if (key == "noise_dbm") cfg.channel.noise_dbm = d();
      else if (key == "bandwidth_mhz") cfg.bandwidth_hz = d() * 1e6;
      else fail(line_no, "unknown key '" + key + "' in [channel]");
    } else if (section == "controller") {
      auto& c = cfg.controller;
      if (key == "deploy_threshold") c.deploy_threshold = d();
      else if (key == "recall_threshold") c.recall_threshold = d();
      else if (key == "control_period_s") c.control_period_s = d();
      else if (key == "admission_timeout_s") c.admission_timeout_s = d();
      else if (key == "uav_speed_mps") c.uav_speed_mps = d();
      else if (key == "min_deploy_charge_frac") c.min_deploy_charge_frac = d();
      else fail(line_no, "unknown key '" + key + "' in [controller]");
    } else if (section == "power") {
      auto& p = cfg.power;
      if (key == "macro_static_w") p.macro.static_w = d();
      else if (key == "macro_slope") p.macro.slope = d();
      else if (key == "srrh_static_w") p.srrh.static_w = d();
      else if (key == "srrh_slope") p.srrh.slope = d();
      else if (key == "frrh_static_w") p.frrh.static_w = d();
      else if (key == "frrh_slope") p.frrh.slope = d();
      else if (key == "frrh_hover_w") p.frrh.hover_w = d();
      else if (key == "bbu_static_w") p.bbu_static_w = d();
      else if (key == "bbu_per_srrh_w") p.bbu_per_srrh_w = d();
      else if (key == "standby_draw_w") p.standby_draw_w = d();
      else if (key == "charge_rate_w") p.charge_rate_w = d();
      else if (key == "battery_capacity_wh") p.battery_capacity_wh = d();
      else if (key == "include_hover") p.include_hover = b();
      else fail(line_no, "unknown key '" + key + "' in [power]");
    } else if (section == "workload") {
      auto& w = cfg.workload;
      if (key == "task_rate_hz") w.task_rate_hz = d();
      else if (key == "task_payload_bits") w.task_payload_bits = d();
      else if (key == "ue_distance_frac") w.ue_distance_frac = d();
      else if (key == "small_cell_radius_m") w.small_cell_radius_m = d();
      else if (key == "disaster_task_period_s") w.disaster_task_period_s = d();
      else if (key == "disaster_hop_distance_m")
        w.disaster_hop_distance_m = d();
      else if (key == "terrain_members") w.terrain_members = i();
      else if (key == "terrain_fan_out") w.terrain_fan_out = i();
      else if (key == "terrain_member_spacing_m")
        w.terrain_member_spacing_m = d();
      else if (key == "terrain_ue_radius_m") w.terrain_ue_radius_m = d();
      else fail(line_no, "unknown key '" + key + "' in [workload]");
    } else if (section == "sweep") {
      if (key == "fractions") {
        cfg.sweep_fractions.clear();
        for (const auto& part : split(val, ','))
          cfg.sweep_fractions.push_back(to_double(line_no, part));
      } else if (key == "seeds") {
        cfg.sweep_seeds.clear();
        const auto dots = val.find("..");
        if (dots != std::string::npos) {
          int lo = to_int(line_no, trim(val.substr(0, dots)));
          int hi = to_int(line_no, trim(val.substr(dots + 2)));
          if (hi < lo) fail(line_no, "seed range inverted");
          for (int s = lo; s <= hi; ++s)
            cfg.sweep_seeds.push_back(static_cast<std::uint64_t>(s));
        } else {
          for (const auto& part : split(val, ','))
            cfg.sweep_seeds.push_back(
                static_cast<std::uint64_t>(to_int(line_no, part)));
        }
      } else {
        fail(line_no, "unknown key '" + key + "' in [sweep]");
      }
    }
  }

  // Transmit power ratings in watts come from the dBm figures.
  cfg.power.macro.tx_w = dbm_to_watts(cfg.topology.macro_tx_dbm);
  cfg.power.srrh.tx_w = dbm_to_watts(cfg.topology.srrh_tx_dbm);
  cfg.power.frrh.tx_w = dbm_to_watts(cfg.topology.frrh_tx_dbm);
  cfg.topology.architecture = cfg.architecture;
  cfg.topology.demand_prbs = cfg.traffic.demand_prbs;
  cfg.topology.battery_wh = cfg.power.battery_capacity_wh;

  const auto problems = validate_config(cfg);
  if (!problems.empty())
    throw std::runtime_error("config invalid: " + problems.front());
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> v;
  if (cfg.duration_s <= 0.0) v.push_back("duration_s must be > 0");
  if (cfg.warmup_frac < 0.0 || cfg.warmup_frac >= 1.0)
    v.push_back("warmup_frac must be in [0,1)");
  if (cfg.topology.num_cells < 1) v.push_back("cells must be >= 1");
  if (cfg.topology.srrh_capacity_prbs <= 0)
    v.push_back("srrh_capacity_prbs must be > 0");
  if (cfg.architecture == Architecture::UCRAN && cfg.topology.frrh_count < 1)
    v.push_back("UCRAN requires frrh_count >= 1");
  if (cfg.traffic.demand_prbs < 1) v.push_back("demand_prbs must be >= 1");
  if (cfg.traffic.mean_holding_s <= 0.0)
    v.push_back("mean_holding_s must be > 0");
  if (cfg.ue_count < 0) v.push_back("ue_count must be >= 0");
  if (cfg.ue_count > cfg.traffic.hard_cap)
    v.push_back("ue_count exceeds hard cap");
  if (cfg.handover_count < 0) v.push_back("handover_count must be >= 0");
  if (cfg.controller.recall_threshold >= cfg.controller.deploy_threshold)
    v.push_back("recall_threshold must be below deploy_threshold");
  if (cfg.controller.admission_timeout_s < 0.0)
    v.push_back("admission_timeout_s must be >= 0");
  if (cfg.channel.s_curve_a <= 0.0) v.push_back("s_curve_a must be > 0");
  if (cfg.channel.excess_nlos_db < cfg.channel.excess_los_db ||
      cfg.channel.excess_los_db < 0.0)
    v.push_back("excess loss terms must satisfy nlos >= los >= 0");
  try {
    (void)prbs_for(cfg.bandwidth_hz);
  } catch (const std::exception&) {
    v.push_back("bandwidth_mhz not in the supported LTE set");
  }
  if (cfg.handover_window_start_s >= 0.0 &&
      cfg.handover_window_start_s > cfg.duration_s)
    v.push_back("handover window starts after the run ends");
  for (double f : cfg.sweep_fractions)
    if (f < 0.1 || f > 1.0) v.push_back("sweep fractions must be in [0.1,1.0]");
  if (cfg.workload.task_rate_hz < 0.0) v.push_back("task_rate_hz must be >= 0");
  return v;
}

std::string describe_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os.precision(12);
  os << "[run]\narchitecture = " << to_string(cfg.architecture)
     << "\nscenario = " << to_string(cfg.scenario)
     << "\nduration_s = " << cfg.duration_s
     << "\nwarmup_frac = " << cfg.warmup_frac << "\nseed = " << cfg.seed
     << "\nmetrics_period_s = " << cfg.metrics_period_s << "\n";
  os << "[topology]\ncells = " << cfg.topology.num_cells
     << "\narea_km2 = " << cfg.topology.area_km2
     << "\nfrrh_count = " << cfg.topology.frrh_count
     << "\nsrrh_capacity_prbs = " << cfg.topology.srrh_capacity_prbs
     << "\nfrrh_capacity_prbs = " << cfg.topology.frrh_capacity_prbs
     << "\nbs_height_m = " << cfg.topology.bs_height_m
     << "\nfrrh_altitude_m = " << cfg.topology.frrh_altitude_m
     << "\nmacro_tx_dbm = " << cfg.topology.macro_tx_dbm
     << "\nsrrh_tx_dbm = " << cfg.topology.srrh_tx_dbm
     << "\nfrrh_tx_dbm = " << cfg.topology.frrh_tx_dbm << "\n";
  os << "[traffic]\nue_count = " << cfg.ue_count
     << "\nhandover_count = " << cfg.handover_count
     << "\nmean_holding_s = " << cfg.traffic.mean_holding_s
     << "\ndemand_prbs = " << cfg.traffic.demand_prbs << "\n";
  os << "# max_ues derived as srrh_capacity_prbs / demand_prbs = "
     << cfg.max_ues_per_cell() << "\n";
  os << "[channel]\nbandwidth_mhz = " << cfg.bandwidth_hz / 1e6
     << "\ns_curve_a = " << cfg.channel.s_curve_a
     << "\ns_curve_b = " << cfg.channel.s_curve_b
     << "\nexcess_los_db = " << cfg.channel.excess_los_db
     << "\nexcess_nlos_db = " << cfg.channel.excess_nlos_db
     << "\ncarrier_ghz = " << cfg.channel.carrier_hz / 1e9
     << "\nnoise_dbm = " << cfg.channel.noise_dbm << "\n";
  os << "[controller]\ndeploy_threshold = " << cfg.controller.deploy_threshold
     << "\nrecall_threshold = " << cfg.controller.recall_threshold
     << "\ncontrol_period_s = " << cfg.controller.control_period_s
     << "\nadmission_timeout_s = " << cfg.controller.admission_timeout_s
     << "\nuav_speed_mps = " << cfg.controller.uav_speed_mps << "\n";
  os << "[power]\ninclude_hover = "
     << (cfg.power.include_hover ? "true" : "false")
     << "\nstandby_draw_w = " << cfg.power.standby_draw_w
     << "\nbattery_capacity_wh = " << cfg.power.battery_capacity_wh << "\n";
  os << "[workload]\ntask_rate_hz = " << cfg.workload.task_rate_hz
     << "\ntask_payload_bits = " << cfg.workload.task_payload_bits << "\n";
  return os.str();
}

}  // namespace ucran
