#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "ucran/topology.hpp"

namespace ucran {

enum class ProcSite { EdgeFRRH, BBUPool };

inline const char* to_string(ProcSite s) {
  return s == ProcSite::EdgeFRRH ? "edge" : "bbu";
}

struct DelayBreakdown {
  double comm_s = 0.0;
  double proc_s = 0.0;
  double total_s = 0.0;
  ProcSite site = ProcSite::BBUPool;
};

// total = comm + proc in a single addition; site recorded.
DelayBreakdown total_delay(double comm_s, double proc_s, ProcSite site);

// Single-server FIFO queue with analytic completion-time bookkeeping.
// Service times are supplied per job, so the same class backs deterministic
// link serialization and exponential processing service. Tracks the
// time-integral of jobs-in-system for Little's-law checks.
class FifoQueue {
 public:
  // Enqueues a job arriving at `now` with the given service time and
  // returns its completion time (sojourn = returned - now).
  double enqueue(double now, double service_s);

  // Jobs in system (waiting + in service) at `now`.
  int in_system(double now);

  // Backlog estimate used for site-decision prediction: residual busy time
  // ahead of a job arriving now.
  double predicted_wait(double now) const;

  // Closes the observation window at t_end.
  void finalize(double t_end);

  long arrivals() const { return arrivals_; }
  long completions() const { return completed_; }
  double mean_sojourn() const;
  double time_avg_in_system() const;
  double observed_until() const { return last_t_; }

 private:
  void advance(double now);

  double busy_until_ = 0.0;
  std::deque<double> pending_;  // completion times, ascending
  double area_ = 0.0;
  double last_t_ = 0.0;
  long arrivals_ = 0;
  long completed_ = 0;
  double sum_sojourn_ = 0.0;
};

// Fixed latency + serialization + current transmit-queue wait.
// Returns nothing when the hop is unusable (rate 0): the caller records a
// DropNoLink event instead of propagating an infinite delay.
std::optional<double> hop_delay(const LinkSpec& link, double payload_bits,
                                double rate_bps, double queue_wait_s = 0.0);

// Sum of hop delays over a connected route, in order.
std::optional<double> path_delay(const std::vector<LinkSpec>& route,
                                 double payload_bits,
                                 const std::vector<double>& rates_bps);

struct SiteEstimate {
  double comm_s = 0.0;
  double proc_s = 0.0;
};

// Picks the site minimizing predicted total delay; ties go to the edge.
// No candidate at all -> nullopt (DropNoProcessor).
std::optional<ProcSite> processing_site_decision(
    const std::optional<SiteEstimate>& edge,
    const std::optional<SiteEstimate>& bbu);

}  // namespace ucran
