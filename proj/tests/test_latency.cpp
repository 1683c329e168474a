#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ucran/analytic.hpp"
#include "ucran/latency.hpp"
#include "ucran/rng.hpp"

using namespace ucran;

TEST_CASE("delay breakdown is a single exact addition") {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double comm = rng.uniform(0.0, 10.0);
    const double proc = rng.uniform(0.0, 10.0);
    const auto d = total_delay(comm, proc, ProcSite::BBUPool);
    CHECK(d.total_s == comm + proc);  // exact, not approximate
    CHECK(d.comm_s == comm);
    CHECK(d.proc_s == proc);
  }
}

TEST_CASE("fifo queue hand-worked completions") {
  FifoQueue q;
  CHECK(q.enqueue(0.0, 2.0) == 2.0);   // idle server
  CHECK(q.enqueue(1.0, 2.0) == 4.0);   // waits 1 s behind job 1
  CHECK(q.enqueue(10.0, 1.0) == 11.0); // server idle again
  CHECK(q.arrivals() == 3);
}

TEST_CASE("fifo queue occupancy and predicted wait") {
  FifoQueue q;
  q.enqueue(0.0, 5.0);
  q.enqueue(0.0, 5.0);
  CHECK(q.in_system(1.0) == 2);
  CHECK(q.predicted_wait(1.0) == doctest::Approx(9.0));
  CHECK(q.in_system(6.0) == 1);
  CHECK(q.in_system(11.0) == 0);
  CHECK(q.predicted_wait(11.0) == 0.0);
  CHECK(q.completions() == 2);
}

TEST_CASE("m/m/1 oracle: sojourn and Little's law within 5%") {
  // Relaxation time 1/(mu-lambda) = 20 ms, negligible against the horizon,
  // so the whole run is effectively stationary.
  const double lambda = 50.0, mu = 100.0;
  FifoQueue measured;
  Rng rng(1234);
  double t = 0.0;
  const long total = 200000;
  double sum_sojourn = 0.0;
  for (long i = 0; i < total; ++i) {
    t += rng.exponential(lambda);
    const double done = measured.enqueue(t, rng.exponential(mu));
    sum_sojourn += done - t;
  }
  measured.finalize(t);
  const double w = sum_sojourn / total;
  CHECK(w == doctest::Approx(mm1_sojourn(lambda, mu)).epsilon(0.05));
  // Little: time-average jobs in system = lambda_observed * W
  const double lambda_obs = total / t;
  CHECK(measured.time_avg_in_system() ==
        doctest::Approx(lambda_obs * w).epsilon(0.01));
  CHECK(measured.time_avg_in_system() ==
        doctest::Approx(mm1_in_system(lambda, mu)).epsilon(0.05));
}

TEST_CASE("analytic helpers agree with closed forms") {
  CHECK(mm1_sojourn(50.0, 100.0) == doctest::Approx(0.02));
  CHECK(mm1_in_system(50.0, 100.0) == doctest::Approx(1.0));
  CHECK_THROWS(mm1_sojourn(100.0, 100.0));
  CHECK(erlang_b(2.0, 4) == doctest::Approx(0.095238095).epsilon(1e-6));
  CHECK(erlang_b(0.0, 4) == doctest::Approx(0.0));
  CHECK(erlang_b(10.0, 1) == doctest::Approx(10.0 / 11.0));
}

TEST_CASE("hop delay: fixed + serialization + queue wait") {
  LinkSpec l{1, 1, 2, LinkKind::OpticalFronthaul, 1e-4, 10e9};
  const auto d = hop_delay(l, 1e5, 10e9, 0.5e-3);
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx(1e-4 + 1e5 / 10e9 + 0.5e-3));
}

TEST_CASE("hop delay refuses a dead link") {
  LinkSpec l{1, 1, 2, LinkKind::WirelessFronthaul, 1e-4, 0.0};
  CHECK(!hop_delay(l, 1e5, 0.0).has_value());
}

TEST_CASE("path delay sums hops and propagates dead links") {
  LinkSpec a{1, 1, 2, LinkKind::WirelessFronthaul, 1e-3, 1e8};
  LinkSpec b{2, 2, 3, LinkKind::OpticalFronthaul, 1e-4, 1e9};
  const auto d = path_delay({a, b}, 1e5, {1e8, 1e9});
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx((1e-3 + 1e-3) + (1e-4 + 1e-4)));
  CHECK(!path_delay({a, b}, 1e5, {1e8, 0.0}).has_value());
}

TEST_CASE("site decision prefers the smaller predicted total, edge on tie") {
  SiteEstimate edge{0.001, 0.004};
  SiteEstimate bbu{0.003, 0.001};
  CHECK(*processing_site_decision(edge, bbu) == ProcSite::BBUPool);
  bbu = {0.004, 0.002};
  CHECK(*processing_site_decision(edge, bbu) == ProcSite::EdgeFRRH);
  bbu = {0.001, 0.004};  // exact tie
  CHECK(*processing_site_decision(edge, bbu) == ProcSite::EdgeFRRH);
  CHECK(*processing_site_decision(std::nullopt, bbu) == ProcSite::BBUPool);
  CHECK(*processing_site_decision(edge, std::nullopt) == ProcSite::EdgeFRRH);
  CHECK(!processing_site_decision(std::nullopt, std::nullopt).has_value());
}
