#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucran/topology.hpp"
#include "ucran/trace.hpp"

namespace ucran {

// Per-run metrics recovered from a trace. Counts are post-warmup (keyed by
// the UE's arrival time); whole-run conservation totals come from the END
// line.
struct RunMetrics {
  long generated = 0;
  long admitted = 0;
  long blocked = 0;
  long total_generated = 0;  // whole run, END line
  long total_admitted = 0;
  long total_blocked = 0;
  double blocking_probability = 0.0;
  bool has_delay = false;
  double avg_e2e_delay_s = 0.0;
  long delay_samples = 0;
  bool has_power = false;
  double total_power_w = 0.0;
  long edge_tasks = 0;
  long bbu_tasks = 0;
  double coverage_fraction = -1.0;  // terrain only
  std::uint64_t digest = 0;
};

// Parses a complete trace (END line present); throws on truncated traces.
RunMetrics compute_metrics(const Trace& trace);

enum class ReportFormat { CSV, StructuredText };

struct ReportRow {
  Architecture architecture = Architecture::MacroOnly;
  int ue_count = 0;
  int seed_count = 0;
  double avg_e2e_delay_s = 0.0;
  double delay_ci = 0.0;
  double blocking_prob = 0.0;
  double blocking_ci = 0.0;
  double total_power_w = 0.0;
  double power_ci = 0.0;
  bool ci_available = false;
  bool delay_available = true;
};

struct MetricsReport {
  std::vector<ReportRow> rows;
};

// Aggregates per-seed run metrics into one row (mean and 95% Student-t
// confidence half-width per metric).
ReportRow aggregate_runs(Architecture arch, int ue_count,
                         const std::vector<RunMetrics>& runs);

// Deterministic rendering; numbers use 6 significant digits. Rows are
// ordered architecture (Macro, CRAN, UCRAN) then ascending ue_count.
std::string emit_results(const MetricsReport& report, ReportFormat format);

// Writes emit_results output to a file; throws on I/O failure.
void write_results(const MetricsReport& report, ReportFormat format,
                   const std::string& path);

// 6-significant-digit rendering shared by the emitters.
std::string format_sig6(double v);

double student_t_975(int df);

}  // namespace ucran
