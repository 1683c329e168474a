#include "ucran/latency.hpp"

#include <algorithm>
#include <stdexcept>

namespace ucran {

DelayBreakdown total_delay(double comm_s, double proc_s, ProcSite site) {
  if (comm_s < 0.0 || proc_s < 0.0)
    throw std::domain_error("total_delay: negative component");
  DelayBreakdown d;
  d.comm_s = comm_s;
  d.proc_s = proc_s;
  d.total_s = comm_s + proc_s;
  d.site = site;
  return d;
}

void FifoQueue::advance(double now) {
  while (!pending_.empty() && pending_.front() <= now) {
    area_ += static_cast<double>(pending_.size()) * (pending_.front() - last_t_);
    last_t_ = pending_.front();
    pending_.pop_front();
    ++completed_;
  }
  if (now > last_t_) {
    area_ += static_cast<double>(pending_.size()) * (now - last_t_);
    last_t_ = now;
  }
}

double FifoQueue::enqueue(double now, double service_s) {
  advance(now);
  const double start = std::max(now, busy_until_);
  busy_until_ = start + service_s;
  pending_.push_back(busy_until_);
  ++arrivals_;
  sum_sojourn_ += busy_until_ - now;
  return busy_until_;
}

int FifoQueue::in_system(double now) {
  advance(now);
  return static_cast<int>(pending_.size());
}

double FifoQueue::predicted_wait(double now) const {
  return std::max(0.0, busy_until_ - now);
}

void FifoQueue::finalize(double t_end) { advance(t_end); }

double FifoQueue::mean_sojourn() const {
  // Completed-plus-in-flight sojourns over arrivals keeps the estimate
  // consistent with the completion-time accounting.
  return arrivals_ > 0 ? sum_sojourn_ / static_cast<double>(arrivals_) : 0.0;
}

double FifoQueue::time_avg_in_system() const {
  return last_t_ > 0.0 ? area_ / last_t_ : 0.0;
}

std::optional<double> hop_delay(const LinkSpec& link, double payload_bits,
                                double rate_bps, double queue_wait_s) {
  if (payload_bits < 0.0)
    throw std::domain_error("hop_delay: negative payload");
  if (rate_bps <= 0.0) return std::nullopt;  // DropNoLink
  return link.fixed_latency_s + payload_bits / rate_bps + queue_wait_s;
}

std::optional<double> path_delay(const std::vector<LinkSpec>& route,
                                 double payload_bits,
                                 const std::vector<double>& rates_bps) {
  if (route.size() != rates_bps.size())
    throw std::invalid_argument("path_delay: route/rate size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    auto h = hop_delay(route[i], payload_bits, rates_bps[i]);
    if (!h) return std::nullopt;
    total += *h;
  }
  return total;
}

std::optional<ProcSite> processing_site_decision(
    const std::optional<SiteEstimate>& edge,
    const std::optional<SiteEstimate>& bbu) {
  if (!edge && !bbu) return std::nullopt;  // DropNoProcessor
  if (!edge) return ProcSite::BBUPool;
  if (!bbu) return ProcSite::EdgeFRRH;
  const double edge_total = edge->comm_s + edge->proc_s;
  const double bbu_total = bbu->comm_s + bbu->proc_s;
  return edge_total <= bbu_total ? ProcSite::EdgeFRRH : ProcSite::BBUPool;
}

}  // namespace ucran
