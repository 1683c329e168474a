#include "ucran/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ucran {

namespace {

double parse_tagged(const std::string& tok, const char* tag) {
  const std::string prefix = std::string(tag) + "=";
  if (tok.rfind(prefix, 0) != 0)
    throw std::runtime_error("trace: expected '" + prefix + "' in '" + tok + "'");
  return std::stod(tok.substr(prefix.size()));
}

int rank(Architecture a) {
  switch (a) {
    case Architecture::MacroOnly: return 0;
    case Architecture::CRAN: return 1;
    case Architecture::UCRAN: return 2;
  }
  return 3;
}

}  // namespace

RunMetrics compute_metrics(const Trace& trace) {
  RunMetrics m;
  m.digest = trace.digest();
  double warmup = 0.0;
  bool saw_run = false, saw_end = false;
  std::unordered_map<int, double> arrival_time;
  double delay_sum = 0.0;
  double power_sum = 0.0;
  long power_samples = 0;

  for (const auto& line : trace.lines) {
    std::istringstream is(line);
    std::string kind;
    is >> kind;
    if (kind == "RUN") {
      std::string tok;
      while (is >> tok)
        if (tok.rfind("warmup=", 0) == 0) warmup = parse_tagged(tok, "warmup");
      saw_run = true;
    } else if (kind == "A") {
      double t;
      int ue;
      is >> t >> ue;
      arrival_time[ue] = t;
      if (t >= warmup) ++m.generated;
    } else if (kind == "ADM") {
      double t;
      int ue;
      is >> t >> ue;
      const auto it = arrival_time.find(ue);
      if (it != arrival_time.end() && it->second >= warmup) ++m.admitted;
    } else if (kind == "BLK") {
      double t;
      int ue;
      is >> t >> ue;
      const auto it = arrival_time.find(ue);
      if (it != arrival_time.end() && it->second >= warmup) ++m.blocked;
    } else if (kind == "TASK") {
      double t, comm, proc, total, gen;
      long id;
      std::string site;
      is >> t >> id >> site >> comm >> proc >> total >> gen;
      if (gen >= warmup) {
        delay_sum += total;
        ++m.delay_samples;
        if (site == "edge") ++m.edge_tasks;
        else ++m.bbu_tasks;
      }
    } else if (kind == "PWR") {
      double t, w;
      is >> t >> w;
      if (t >= warmup) {
        power_sum += w;
        ++power_samples;
      }
    } else if (kind == "COV") {
      is >> m.coverage_fraction;
    } else if (kind == "END") {
      double t;
      std::string tok;
      is >> t;
      while (is >> tok) {
        if (tok.rfind("generated=", 0) == 0)
          m.total_generated = static_cast<long>(parse_tagged(tok, "generated"));
        else if (tok.rfind("admitted=", 0) == 0)
          m.total_admitted = static_cast<long>(parse_tagged(tok, "admitted"));
        else if (tok.rfind("blocked=", 0) == 0)
          m.total_blocked = static_cast<long>(parse_tagged(tok, "blocked"));
      }
      saw_end = true;
    }
  }
  if (!saw_run) throw std::runtime_error("trace: missing RUN header");
  if (!saw_end) throw std::runtime_error("trace: missing END line (truncated)");

  m.blocking_probability =
      m.generated > 0 ? static_cast<double>(m.blocked) /
                            static_cast<double>(m.generated)
                      : 0.0;
  if (m.delay_samples > 0) {
    m.has_delay = true;
    m.avg_e2e_delay_s = delay_sum / static_cast<double>(m.delay_samples);
  }
  if (power_samples > 0) {
    m.has_power = true;
    m.total_power_w = power_sum / static_cast<double>(power_samples);
  }
  return m;
}

double student_t_975(int df) {
  static const double table[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) throw std::domain_error("student_t_975: df must be >= 1");
  if (df <= 30) return table[df - 1];
  return 1.96;
}

namespace {

struct MeanCi {
  double mean = 0.0;
  double ci = 0.0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi r;
  const int n = static_cast<int>(xs.size());
  if (n == 0) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / n;
  if (n < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  const double sd = std::sqrt(ss / (n - 1));
  r.ci = student_t_975(n - 1) * sd / std::sqrt(static_cast<double>(n));
  return r;
}

}  // namespace

ReportRow aggregate_runs(Architecture arch, int ue_count,
                         const std::vector<RunMetrics>& runs) {
  ReportRow row;
  row.architecture = arch;
  row.ue_count = ue_count;
  row.seed_count = static_cast<int>(runs.size());
  std::vector<double> delays, blockings, powers;
  for (const auto& r : runs) {
    if (r.has_delay) delays.push_back(r.avg_e2e_delay_s);
    blockings.push_back(r.blocking_probability);
    if (r.has_power) powers.push_back(r.total_power_w);
  }
  row.delay_available = !delays.empty();
  const auto d = mean_ci(delays);
  const auto b = mean_ci(blockings);
  const auto p = mean_ci(powers);
  row.avg_e2e_delay_s = d.mean;
  row.delay_ci = d.ci;
  row.blocking_prob = b.mean;
  row.blocking_ci = b.ci;
  row.total_power_w = p.mean;
  row.power_ci = p.ci;
  row.ci_available = runs.size() >= 2;
  return row;
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string emit_results(const MetricsReport& report, ReportFormat format) {
  if (report.rows.empty())
    throw std::invalid_argument("emit_results: empty report");
  auto rows = report.rows;
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (rank(a.architecture) != rank(b.architecture))
      return rank(a.architecture) < rank(b.architecture);
    return a.ue_count < b.ue_count;
  });

  std::ostringstream os;
  auto ci_or_na = [](const ReportRow& r, double ci) {
    return r.ci_available ? format_sig6(ci) : std::string("na");
  };
  if (format == ReportFormat::CSV) {
    os << "architecture,ue_count,seed_count,avg_e2e_delay_s,delay_ci,"
          "blocking_prob,blocking_ci,total_power_w,power_ci\n";
    for (const auto& r : rows) {
      os << to_string(r.architecture) << "," << r.ue_count << ","
         << r.seed_count << ","
         << (r.delay_available ? format_sig6(r.avg_e2e_delay_s) : "na") << ","
         << (r.delay_available ? ci_or_na(r, r.delay_ci) : "na") << ","
         << format_sig6(r.blocking_prob) << "," << ci_or_na(r, r.blocking_ci)
         << "," << format_sig6(r.total_power_w) << ","
         << ci_or_na(r, r.power_ci) << "\n";
    }
  } else {
    for (const auto& r : rows) {
      os << "arch=" << to_string(r.architecture) << " ues=" << r.ue_count
         << " seeds=" << r.seed_count << " delay_s="
         << (r.delay_available ? format_sig6(r.avg_e2e_delay_s) : "na")
         << " blocking=" << format_sig6(r.blocking_prob)
         << " power_w=" << format_sig6(r.total_power_w) << "\n";
    }
  }
  return os.str();
}

void write_results(const MetricsReport& report, ReportFormat format,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << emit_results(report, format);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ucran
