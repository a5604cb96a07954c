#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "incro/cli/presets.hpp"
#include "incro/cli/sweep.hpp"
#include "incro/format.hpp"
#include "incro/instance_io.hpp"
#include "incro/oracle_check.hpp"

using namespace incro;
using namespace incro::cli;

namespace {

void print_verdicts(const RateReport& report, const std::string& prefix = {}) {
  for (const auto& v : report.verdicts) {
    std::cout << prefix << v.claim << ": " << to_string(v.status);
    if (v.status != Verdict::Status::skipped)
      std::cout << " (measured " << shortest(v.measured) << ", bound " << shortest(v.bound)
                << ", tol " << shortest(v.tol) << ')';
    else
      std::cout << " (" << v.note << ')';
    std::cout << '\n';
  }
}

int cmd_run(const std::string& path) {
  ExperimentConfig config;
  try {
    config = load_config(path);
  } catch (const Error& e) {
    std::cerr << "incro: " << e.what() << '\n';
    return status::config_error;
  }
  const RunOutcome outcome = run_experiment(config);
  print_verdicts(outcome.report);
  if (outcome.status != status::pass) std::cerr << "incro: " << outcome.message << '\n';
  return outcome.status;
}

int cmd_preset(const std::string& name, const std::string& out_dir, bool traces) {
  try {
    const auto result = run_preset(name, {out_dir, traces});
    for (const auto& run : result.runs) {
      std::cout << "[" << run.label << "] cycles " << run.cycles << ", fitted exponent "
                << shortest(run.report.fit.exponent) << '\n';
      print_verdicts(run.report, "  ");
    }
    for (const auto& c : result.checks) {
      std::cout << c.verdict.claim;
      if (c.extra.contains("run")) std::cout << " [" << c.extra["run"].get<std::string>() << "]";
      std::cout << ": " << to_string(c.verdict.status) << " (measured "
                << shortest(c.verdict.measured) << ", bound " << shortest(c.verdict.bound) << ")\n";
    }
    return result.status();
  } catch (const ConfigError& e) {
    std::cerr << "incro: " << e.what() << '\n';
    return status::config_error;
  }
}

int cmd_sweep(const std::string& path, const std::vector<double>& Rs,
              const std::vector<double>& ss, const std::string& out_path,
              const std::string& report_path, unsigned threads) {
  try {
    const auto base = load_config(path);
    const auto rows = run_sweep(base, Rs, ss, threads);
    if (out_path.empty()) {
      write_sweep_csv(std::cout, rows);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      write_sweep_csv(out, rows);
      if (!out) throw ConfigError("cannot write '" + out_path + "'");
    }
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      write_sweep_jsonl(out, base, rows);
      if (!out) throw ConfigError("cannot write '" + report_path + "'");
    }
    return sweep_status(rows);
  } catch (const Error& e) {
    std::cerr << "incro: " << e.what() << '\n';
    return status::config_error;
  }
}

int cmd_check_oracle(const std::string& path, int samples, std::uint64_t seed, double tol) {
  try {
    const Problem problem = load_instance(path);
    bool ok = true;
    for (std::size_t i = 0; i < problem.size(); ++i) {
      const auto r = check_oracle_consistency(problem.component(i), samples, seed);
      const bool good = r.consistent(tol);
      ok = ok && good;
      std::cout << "component " << i + 1 << ": gradient relerr " << shortest(r.max_grad_relerr)
                << ", hessian relerr " << shortest(r.max_hess_relerr)
                << (r.hessian_symmetric ? "" : ", hessian not symmetric")
                << (good ? ", ok" : ", INCONSISTENT") << '\n';
    }
    return ok ? status::pass : status::verdict_failure;
  } catch (const Error& e) {
    std::cerr << "incro: " << e.what() << '\n';
    return status::config_error;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental gradient and incremental Newton rate experiments"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_dir = ".", out_path, report_path, instance_path;
  bool traces = false;
  std::vector<double> Rs, ss;
  unsigned threads = 0;
  int samples = 20;
  std::uint64_t seed = 0;
  double tol = 1e-5;

  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  run->add_option("config", config_path, "Configuration file")->required();

  auto* preset = app.add_subcommand("preset", "Run a pre-registered experiment");
  preset->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  preset->add_option("--out", out_dir, "Directory for the consolidated report");
  preset->add_flag("--traces", traces, "Also write per-run trace CSVs and configs");

  auto* sweep = app.add_subcommand("sweep", "Run a configuration over a grid of (R, s)");
  sweep->add_option("config", config_path, "Base configuration file")->required();
  sweep->add_option("--R", Rs, "Stepsize scales")->required()->delimiter(',');
  sweep->add_option("--s", ss, "Stepsize exponents")->required()->delimiter(',');
  sweep->add_option("--out", out_path, "Sweep CSV (default: stdout)");
  sweep->add_option("--report", report_path, "JSON-lines report of every run");
  sweep->add_option("--threads", threads, "Concurrent runs (0: hardware concurrency)");

  auto* check = app.add_subcommand("check-oracle", "Finite-difference check of an instance file");
  check->add_option("instance", instance_path, "Instance file")->required();
  check->add_option("--samples", samples, "Sample points per component")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Sampling seed");
  check->add_option("--tol", tol, "Largest accepted relative error")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : status::config_error;
  }

  if (*run) return cmd_run(config_path);
  if (*preset) return cmd_preset(preset_name, out_dir, traces);
  if (*sweep) return cmd_sweep(config_path, Rs, ss, out_path, report_path, threads);
  return cmd_check_oracle(instance_path, samples, seed, tol);
}
