#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucran/analytic.hpp"
#include "ucran/config.hpp"
#include "ucran/engine.hpp"
#include "ucran/report.hpp"
#include "ucran/topology.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<ucran::Architecture> parse_arch(const std::string& s) {
  using ucran::Architecture;
  if (s == "macro") return {Architecture::MacroOnly};
  if (s == "cran") return {Architecture::CRAN};
  if (s == "ucran") return {Architecture::UCRAN};
  if (s == "all")
    return {Architecture::MacroOnly, Architecture::CRAN, Architecture::UCRAN};
  throw UsageError("unknown --arch value '" + s +
                   "' (expected macro|cran|ucran|all)");
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos)
    return {static_cast<std::uint64_t>(std::stoull(s))};
  const std::uint64_t lo = std::stoull(s.substr(0, dots));
  const std::uint64_t hi = std::stoull(s.substr(dots + 2));
  if (hi < lo) throw UsageError("--seeds range is inverted: " + s);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

ucran::ScenarioConfig load_or_default(const std::string& path) {
  if (path.empty()) return {};
  auto cfg = ucran::load_config(path);
  const auto problems = ucran::validate_config(cfg);
  if (!problems.empty()) {
    std::string msg = "invalid config " + path + ":";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::runtime_error(msg);
  }
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

int cmd_run(const std::string& config_path, const std::string& arch,
            std::uint64_t seed, bool seed_set, const std::string& out_dir) {
  auto cfg = load_or_default(config_path);
  const auto archs = parse_arch(arch.empty() ? "ucran" : arch);
  if (archs.size() != 1)
    throw UsageError("run takes a single --arch, not 'all'");
  cfg.architecture = archs.front();
  cfg.topology.architecture = archs.front();
  if (seed_set) cfg.seed = seed;

  const auto result = ucran::run(cfg);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_file(out_dir + "/trace.txt", result.trace.text());
    write_file(out_dir + "/run_record.txt", result.run_record);
  }
  std::cout << "arch=" << ucran::to_string(cfg.architecture)
            << " seed=" << cfg.seed
            << " generated=" << result.metrics.total_generated
            << " admitted=" << result.metrics.total_admitted
            << " blocked=" << result.metrics.total_blocked
            << " blocking=" << ucran::format_sig6(result.metrics.blocking_probability)
            << " avg_delay_s="
            << (result.metrics.has_delay
                    ? ucran::format_sig6(result.metrics.avg_e2e_delay_s)
                    : std::string("na"))
            << " power_w="
            << (result.metrics.has_power
                    ? ucran::format_sig6(result.metrics.total_power_w)
                    : std::string("na"))
            << " digest=" << result.metrics.digest << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& arch,
              const std::string& seeds, const std::string& out_dir,
              const std::string& format) {
  auto cfg = load_or_default(config_path);
  const auto archs = parse_arch(arch.empty() ? "all" : arch);
  std::vector<std::uint64_t> seed_list =
      seeds.empty() ? cfg.sweep_seeds : parse_seeds(seeds);
  if (seed_list.empty()) seed_list = {cfg.seed};
  std::vector<double> fractions = cfg.sweep_fractions;
  if (fractions.empty())
    fractions = ucran::default_load_schedule(cfg.max_ues_per_cell()).fractions;

  const auto sweep = ucran::run_sweep(cfg, fractions, seed_list, archs);
  const auto fmt = format == "txt" ? ucran::ReportFormat::StructuredText
                                   : ucran::ReportFormat::CSV;
  const std::string rendered = ucran::emit_results(sweep.report, fmt);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_file(out_dir + (fmt == ucran::ReportFormat::CSV ? "/results.csv"
                                                          : "/results.txt"),
               rendered);
  }
  std::cout << rendered;
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  if (config_path.empty()) throw UsageError("validate requires --config");
  const auto cfg = ucran::load_config(config_path);
  const auto problems = ucran::validate_config(cfg);
  auto params = cfg.topology;
  params.architecture = cfg.architecture;
  const auto topo_problems =
      ucran::validate_topology(ucran::build_topology(params));
  if (problems.empty() && topo_problems.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& p : problems) std::cerr << "config: " << p << "\n";
  for (const auto& v : topo_problems)
    std::cerr << "topology: " << v.subject << ": " << v.rule << "\n";
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RAN architecture comparison simulator"};
  app.require_subcommand(1);

  std::string config_path, arch, seeds, out_dir, format = "csv";
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "single simulation run");
  run->add_option("--config", config_path, "config file");
  run->add_option("--arch", arch, "macro|cran|ucran");
  auto* seed_opt = run->add_option("--seed", seed, "run seed");
  run->add_option("--out", out_dir, "output directory");

  auto* sweep = app.add_subcommand("sweep", "load sweep across architectures");
  sweep->add_option("--config", config_path, "config file");
  sweep->add_option("--arch", arch, "macro|cran|ucran|all");
  sweep->add_option("--seeds", seeds, "seed or range N..M");
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--format", format, "csv|txt");

  auto* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("--config", config_path, "config file");

  auto* oracle = app.add_subcommand("oracle", "analytic calculators");
  double erl_a = -1, mm1_lambda = -1, mm1_mu = -1;
  int erl_c = 0;
  oracle->add_option("--erlang-load", erl_a, "offered load, Erlangs");
  oracle->add_option("--erlang-servers", erl_c, "server count");
  oracle->add_option("--mm1-lambda", mm1_lambda, "arrival rate /s");
  oracle->add_option("--mm1-mu", mm1_mu, "service rate /s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed())
      return cmd_run(config_path, arch, seed, seed_opt->count() > 0, out_dir);
    if (sweep->parsed())
      return cmd_sweep(config_path, arch, seeds, out_dir, format);
    if (validate->parsed()) return cmd_validate(config_path);
    if (oracle->parsed()) {
      if (erl_a >= 0 && erl_c > 0)
        std::cout << "erlang_b=" << ucran::format_sig6(ucran::erlang_b(erl_a, erl_c))
                  << "\n";
      if (mm1_lambda >= 0 && mm1_mu > 0) {
        std::cout << "mm1_sojourn_s="
                  << ucran::format_sig6(ucran::mm1_sojourn(mm1_lambda, mm1_mu))
                  << "\nmm1_in_system="
                  << ucran::format_sig6(ucran::mm1_in_system(mm1_lambda, mm1_mu))
                  << "\n";
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    // load/parse problems mention "config"; everything else is a runtime abort
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.find("config") != std::string::npos ? kExitConfig : kExitRuntime;
  }
  return kExitConfig;
}
