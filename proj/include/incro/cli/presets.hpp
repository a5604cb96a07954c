#ifndef INCRO_CLI_PRESETS_HPP
#define INCRO_CLI_PRESETS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "incro/cli/experiment.hpp"

namespace incro::cli {

class UnknownPresetError : public ConfigError {
 public:
  explicit UnknownPresetError(const std::string& name)
      : ConfigError("unknown preset '" + name + "'") {}
};

struct PresetOptions {
  std::string out_dir;        // empty: write nothing
  bool write_traces = false;  // per-run trace CSV and config next to the report
};

/// One labelled run inside a preset, with the preset's own checks
/// appended after the run's claim verdicts.
struct PresetRun {
  std::string label;
  long cycles = 0;
  RateReport report;
  nlohmann::json extra = nlohmann::json::object();
};

struct PresetCheck {
  Verdict verdict;
  nlohmann::json extra = nlohmann::json::object();
};

struct PresetResult {
  std::string name;
  std::vector<PresetRun> runs;
  /// Checks that span several runs or drive the solver directly.
  std::vector<PresetCheck> checks;

  int status() const;
  /// Report lines: every verdict of every run, then the cross-run checks.
  std::vector<nlohmann::json> lines() const;
  const Verdict* find(const std::string& label, const std::string& claim) const;
};

const std::vector<std::string>& preset_names();

/// The experiment configurations behind a preset. Empty for presets that
/// drive the solver directly.
std::vector<std::pair<std::string, ExperimentConfig>> preset_configs(const std::string& name);

PresetResult run_preset(const std::string& name, const PresetOptions& options = {});

/// Checks that |exponent - target| <= window.
Verdict exponent_window(const std::string& claim, double exponent, double target,
                        double window);

/// Constant-stepsize complexity experiment on one instance.
struct ComplexityPoint {
  double eps = 0;
  double alpha = 0;
  double G_used = 0;       // G behind alpha and K'
  double G_traj = 0;       // G measured on the final run
  double M_tilde = 0;      // L G_used m
  long K_prime = 0;
  long first_entry = -1;   // first k with dist_k < eps, -1 if never
  double final_dist = 0;   // dist_{K'+1}
  int attempts = 0;
};

/// For each eps: alpha = eps c / (2 M~), K' = ceil((2 M~ / (eps c^2)) ln(2 dist_1 / eps)),
/// with G re-measured along the run until the trajectory does not exceed it.
std::vector<ComplexityPoint> constant_step_complexity(const Problem& problem,
                                                      const Eigen::VectorXd& x0,
                                                      const std::vector<double>& eps_grid);

/// max over consecutive grid points of the ratio (or its inverse) between the
/// measured growth of first-entry cycles and the growth of (1/eps) ln(1/eps).
double complexity_scaling_ratio(const std::vector<ComplexityPoint>& points);

}  // namespace incro::cli

#endif  // INCRO_CLI_PRESETS_HPP
