#include "ucran/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ucran/rng.hpp"

namespace ucran {

int LoadSchedule::ues_at(double fraction) const {
  return static_cast<int>(std::lround(fraction * max_ues));
}

LoadSchedule default_load_schedule(int max_ues) {
  LoadSchedule s;
  s.max_ues = max_ues;
  for (int i = 1; i <= 10; ++i) s.fractions.push_back(0.1 * i);
  return s;
}

std::vector<UeSession> generate_arrivals(const Cell& cell, int target_count,
                                         double duration_s,
                                         std::uint64_t seed,
                                         const TrafficParams& params,
                                         int first_id) {
  if (duration_s <= 0.0)
    throw std::invalid_argument("generate_arrivals: duration must be > 0");
  if (target_count > params.hard_cap)
    throw std::invalid_argument("generate_arrivals: target exceeds hard cap");
  std::vector<UeSession> out;
  if (target_count <= 0) return out;

  // Offered load of target_count Erlangs: arrival rate = target / holding.
  const double lambda = target_count / params.mean_holding_s;
  Rng rng(substream_seed(seed, static_cast<std::uint64_t>(cell.id)));
  double t = 0.0;
  int id = first_id;
  while (true) {
    t += rng.exponential(lambda);
    if (t >= duration_s) break;
    UeSession s;
    s.id = id++;
    s.cell = cell.id;
    s.arrival_time_s = t;
    s.holding_time_s = rng.exponential(1.0 / params.mean_holding_s);
    s.demand_prbs = params.demand_prbs;
    s.demand_rate_bps = params.demand_rate_bps;
    s.origin = UeOrigin::Local;
    out.push_back(s);
  }
  return out;
}

std::vector<UeSession> generate_handover_wave(
    const Cell& from_cell, const Cell& to_cell, int count,
    std::pair<double, double> window, std::uint64_t seed,
    const TrafficParams& params, int first_id) {
  if (count < 0)
    throw std::invalid_argument("generate_handover_wave: negative count");
  if (window.second < window.first)
    throw std::invalid_argument("generate_handover_wave: window inverted");
  std::vector<UeSession> out;
  Rng rng(substream_seed(
      seed, 1000 + static_cast<std::uint64_t>(from_cell.id) * 31 +
                static_cast<std::uint64_t>(to_cell.id)));
  for (int i = 0; i < count; ++i) {
    UeSession s;
    s.id = first_id + i;
    s.cell = to_cell.id;
    s.arrival_time_s = rng.uniform(window.first, window.second);
    s.holding_time_s = rng.exponential(1.0 / params.mean_holding_s);
    s.demand_prbs = params.demand_prbs;
    s.demand_rate_bps = params.demand_rate_bps;
    s.origin = UeOrigin::Handover;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(),
            [](const UeSession& a, const UeSession& b) {
              return a.arrival_time_s < b.arrival_time_s ||
                     (a.arrival_time_s == b.arrival_time_s && a.id < b.id);
            });
  return out;
}

std::vector<SweepPoint> schedule_sweep(const LoadSchedule& schedule) {
  if (schedule.fractions.empty())
    throw std::invalid_argument("schedule_sweep: empty schedule");
  if (schedule.max_ues <= 0)
    throw std::invalid_argument("schedule_sweep: max_ues unknown");
  for (std::size_t i = 1; i < schedule.fractions.size(); ++i)
    if (schedule.fractions[i] <= schedule.fractions[i - 1])
      throw std::invalid_argument(
          "schedule_sweep: fractions must be strictly increasing");
  std::vector<SweepPoint> pts;
  for (double f : schedule.fractions)
    pts.push_back({f, schedule.ues_at(f)});
  return pts;
}

std::string serialize_sessions(const std::vector<UeSession>& sessions) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& s : sessions)
    os << "ARRIVE " << s.arrival_time_s << " " << s.id << " " << s.cell << " "
       << (s.origin == UeOrigin::Local ? "local" : "handover") << "\n";
  return os.str();
}

}  // namespace ucran
