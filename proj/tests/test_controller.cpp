#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ucran/controller.hpp"
#include "ucran/rng.hpp"

using namespace ucran;

namespace {

ControllerState base_state() {
  ControllerState st;
  st.deploy_threshold = 85.0;
  st.recall_threshold = 60.0;
  st.frrh_capacity_prbs = 100;
  st.min_deploy_charge_wh = 60.0;
  for (int f : {10, 11, 12, 13}) {
    st.frrh_states[f] = FrrhFlightState::Standby;
    st.batteries[f] = {300.0, 300.0};
    st.frrh_home_cell[f] = 1;
  }
  st.node_cell[1] = 1;
  st.node_cell[2] = 2;
  return st;
}

int count(const std::vector<ControlAction>& actions, ControlAction::Kind k) {
  int n = 0;
  for (const auto& a : actions)
    if (a.kind == k) ++n;
  return n;
}

}  // namespace

TEST_CASE("utilization factor is exact and unclamped") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const int cap = 1 + static_cast<int>(rng.uniform(0.0, 5000.0));
    const int load = static_cast<int>(rng.uniform(0.0, 2.0 * cap));
    CHECK(utilization_factor(load, cap) == 100.0 * load / cap);  // exact
  }
  CHECK(utilization_factor(1700, 2000) == doctest::Approx(85.0));
  CHECK(utilization_factor(2400, 2000) == doctest::Approx(120.0));  // > 100 allowed
  CHECK_THROWS(utilization_factor(10, 0));
}

TEST_CASE("deploy fires at the threshold, sized by the excess") {
  auto st = base_state();
  // UF 95% on a 2000-PRB node: excess 10% = 200 PRBs -> 2 F-RRHs
  const auto [next, actions] =
      control_step(st, {make_sample(2, 100.0, 1900, 2000)}, 100.0);
  CHECK(count(actions, ControlAction::Kind::Deploy) == 2);
  int enroute = 0;
  for (const auto& [f, s] : next.frrh_states)
    if (s == FrrhFlightState::EnRoute) ++enroute;
  CHECK(enroute == 2);
  for (const auto& a : actions)
    if (a.kind == ControlAction::Kind::Deploy) CHECK(a.cell == 2);
}

TEST_CASE("exactly at the threshold deploys at least one") {
  const auto [next, actions] =
      control_step(base_state(), {make_sample(2, 1.0, 1700, 2000)}, 1.0);
  CHECK(count(actions, ControlAction::Kind::Deploy) == 1);
}

TEST_CASE("inside the hysteresis band nothing happens") {
  auto st = base_state();
  st.frrh_states[10] = FrrhFlightState::Deployed;
  st.deployed_cell[10] = 2;
  const auto [next, actions] =
      control_step(st, {make_sample(2, 1.0, 1400, 2000)}, 1.0);  // UF 70
  CHECK(actions.empty());
  CHECK(next.frrh_states.at(10) == FrrhFlightState::Deployed);
}

TEST_CASE("committed airframes count against the need") {
  auto st = base_state();
  st.frrh_states[10] = FrrhFlightState::EnRoute;
  st.deployed_cell[10] = 2;
  // UF 95 -> need 2, one already committed -> one more
  const auto [next, actions] =
      control_step(st, {make_sample(2, 1.0, 1900, 2000)}, 1.0);
  CHECK(count(actions, ControlAction::Kind::Deploy) == 1);
}

TEST_CASE("recall fires at or below the recall threshold") {
  auto st = base_state();
  st.frrh_states[10] = FrrhFlightState::Deployed;
  st.deployed_cell[10] = 2;
  st.frrh_states[11] = FrrhFlightState::Deployed;
  st.deployed_cell[11] = 1;  // other cell, must stay
  const auto [next, actions] =
      control_step(st, {make_sample(2, 1.0, 1100, 2000)}, 1.0);  // UF 55
  CHECK(count(actions, ControlAction::Kind::Recall) == 1);
  CHECK(next.frrh_states.at(10) == FrrhFlightState::Returning);
  CHECK(next.frrh_states.at(11) == FrrhFlightState::Deployed);
}

TEST_CASE("no deployable airframe raises an alert") {
  auto st = base_state();
  for (auto& [f, s] : st.frrh_states) s = FrrhFlightState::Charging;
  const auto [next, actions] =
      control_step(st, {make_sample(2, 1.0, 2000, 2000)}, 1.0);
  CHECK(count(actions, ControlAction::Kind::Deploy) == 0);
  CHECK(count(actions, ControlAction::Kind::Alert) == 1);
}

TEST_CASE("undercharged airframes are skipped") {
  auto st = base_state();
  for (int f : {10, 11, 12, 13}) st.batteries[f] = {10.0, 300.0};
  st.batteries[12] = {300.0, 300.0};  // only one flight-ready
  const auto [next, actions] =
      control_step(st, {make_sample(2, 1.0, 1900, 2000)}, 1.0);  // need 2
  CHECK(count(actions, ControlAction::Kind::Deploy) == 1);
  CHECK(next.frrh_states.at(12) == FrrhFlightState::EnRoute);
}

TEST_CASE("inverted hysteresis band is rejected") {
  auto st = base_state();
  st.recall_threshold = 90.0;
  CHECK_THROWS(control_step(st, {make_sample(1, 0.0, 0, 2000)}, 0.0));
}

TEST_CASE("admission picks the emptiest fitting node, lowest id on ties") {
  UeSession ue;
  ue.demand_prbs = 2;
  CHECK(*admit_ue(ue, {{1, 10}, {2, 50}, {3, 50}}) == 2);
  CHECK(*admit_ue(ue, {{3, 50}, {2, 50}}) == 2);
  CHECK(!admit_ue(ue, {{1, 1}, {2, 0}}).has_value());
  CHECK(!admit_ue(ue, {}).has_value());
  ue.demand_prbs = 50;
  CHECK(*admit_ue(ue, {{1, 49}, {2, 50}}) == 2);
}
