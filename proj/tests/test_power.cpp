#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ucran/controller.hpp"
#include "ucran/power.hpp"
#include "ucran/topology.hpp"

using namespace ucran;

TEST_CASE("dbm conversion") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(0.0) == doctest::Approx(0.001));
  CHECK(dbm_to_watts(43.0) == doctest::Approx(19.9526).epsilon(1e-4));
}

TEST_CASE("node power arithmetic") {
  PowerProfile p{130.0, 4.7, 20.0, 0.0};
  CHECK(node_power(p, 0.0, false) == doctest::Approx(130.0));
  CHECK(node_power(p, 1.0, false) == doctest::Approx(130.0 + 4.7 * 20.0));
  CHECK(node_power(p, 0.5, false) == doctest::Approx(130.0 + 4.7 * 20.0 * 0.5));
  PowerProfile f{5.0, 8.0, 1.0, 150.0};
  CHECK(node_power(f, 0.0, true) == doctest::Approx(155.0));
  CHECK(node_power(f, 0.0, false) == doctest::Approx(5.0));
  CHECK(node_power(f, 1.0, true) == doctest::Approx(5.0 + 8.0 + 150.0));
}

TEST_CASE("battery drains linearly and clamps at zero") {
  BatteryState b{10.0, 300.0};  // 10 Wh left
  b = battery_step(b, 3600.0, 5.0);  // 3.6 kW for 5 s = 5 Wh
  CHECK(b.remaining_wh == doctest::Approx(5.0));
  CHECK(!b.empty());
  b = battery_step(b, 3600.0, 100.0);
  CHECK(b.remaining_wh == 0.0);
  CHECK(b.empty());
}

TEST_CASE("battery charges and caps at capacity") {
  BatteryState b{0.0, 300.0};
  b = battery_charge(b, 300.0, 1800.0);  // 300 W for half an hour = 150 Wh
  CHECK(b.remaining_wh == doctest::Approx(150.0));
  b = battery_charge(b, 300.0, 7200.0);
  CHECK(b.remaining_wh == doctest::Approx(300.0));
}

TEST_CASE("forced-return horizon equals capacity over draw") {
  // Constant 200 W draw on a 300 Wh pack: empty after exactly 5400 s.
  BatteryState b{300.0, 300.0};
  const double draw = 200.0, dt = 1.0;
  long steps = 0;
  while (!b.empty()) {
    b = battery_step(b, draw, dt);
    ++steps;
  }
  CHECK(std::abs(steps * dt - 300.0 * 3600.0 / draw) <= dt);
}

TEST_CASE("total power sums profiles, standby draw, and bbu share") {
  TopologyParams params;
  params.architecture = Architecture::UCRAN;
  const auto topo = build_topology(params);
  PowerConfig cfg;
  cfg.macro.tx_w = cfg.srrh.tx_w = dbm_to_watts(43.0);
  cfg.frrh.tx_w = dbm_to_watts(30.0);

  std::map<int, double> loads;
  std::map<int, FrrhFlightState> states;
  int srrh_count = 0, frrh_count = 0;
  for (const auto& n : topo.nodes) {
    if (n.kind == NodeKind::SRRH) {
      loads[n.id] = 0.5;
      ++srrh_count;
    } else if (n.is_frrh()) {
      states[n.id] = FrrhFlightState::Standby;
      ++frrh_count;
    }
  }
  REQUIRE(srrh_count == 2);
  REQUIRE(frrh_count == 4);

  const double expected = 2 * node_power(cfg.srrh, 0.5, false) +
                          cfg.bbu_static_w + 2 * cfg.bbu_per_srrh_w +
                          4 * cfg.standby_draw_w;
  CHECK(total_power(topo, loads, states, cfg) == doctest::Approx(expected));

  // one airframe hovering deployed at load 1.0
  auto states2 = states;
  int some_frrh = states2.begin()->first;
  states2[some_frrh] = FrrhFlightState::Deployed;
  auto loads2 = loads;
  loads2[some_frrh] = 1.0;
  const double expected2 = expected - cfg.standby_draw_w +
                           node_power(cfg.frrh, 1.0, true);
  CHECK(total_power(topo, loads2, states2, cfg) == doctest::Approx(expected2));

  // hover excluded from the accounting when disabled
  PowerConfig no_hover = cfg;
  no_hover.include_hover = false;
  const double expected3 = expected - cfg.standby_draw_w +
                           node_power(cfg.frrh, 1.0, false);
  CHECK(total_power(topo, loads2, states2, no_hover) == doctest::Approx(expected3));
}

TEST_CASE("total power is monotone in load") {
  TopologyParams params;
  params.architecture = Architecture::CRAN;
  const auto topo = build_topology(params);
  PowerConfig cfg;
  cfg.srrh.tx_w = dbm_to_watts(43.0);
  double prev = -1.0;
  for (double load = 0.0; load <= 1.0; load += 0.1) {
    std::map<int, double> loads;
    for (const auto& n : topo.nodes)
      if (n.kind == NodeKind::SRRH) loads[n.id] = load;
    const double p = total_power(topo, loads, {}, cfg);
    CHECK(p > prev);
    prev = p;
  }
}
