#ifndef INCRO_CLI_EXPERIMENT_HPP
#define INCRO_CLI_EXPERIMENT_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "incro/cli/config.hpp"

namespace incro::cli {

namespace status {
inline constexpr int pass = 0;
inline constexpr int verdict_failure = 1;
inline constexpr int config_error = 2;
inline constexpr int divergence = 3;
}  // namespace status

inline constexpr const char* trace_header =
    "cycle,alpha,dist_euclid,dist_star,grad_error_norm,k_dist,k_s_dist";

/// One row per cycle k = 1..K, describing x_1^k. Numbers use the shortest
/// round-trip form; dist_star is left empty when H* is not given.
void write_trace_csv(std::ostream& out, const Trace& trace,
                     const Eigen::VectorXd& x_star, const Eigen::MatrixXd* H_star,
                     double s);

nlohmann::json verdict_json(const Verdict& v);

/// Run-level fields repeated on every report line.
nlohmann::json report_context(const RateReport& report, long cycles);

/// JSON lines: one verdict per line, each merged with `context`.
void write_report_jsonl(std::ostream& out, const RateReport& report,
                        const nlohmann::json& context);

/// Problem, trace and verdicts of one configured run.
struct Executed {
  Problem problem;
  Trace trace;
  RateReport report;
};

/// Runs `config` without writing outputs. Throws the underlying errors.
Executed execute(const ExperimentConfig& config);

struct RunOutcome {
  int status = status::pass;
  std::string message;
  RateReport report;
  long cycles_completed = 0;
};

/// Builds the problem, runs the solver, analyses the trace and writes the
/// configured outputs. Never throws for configuration or solver failures;
/// those come back as the matching status.
RunOutcome run_experiment(const ExperimentConfig& config);

/// status::pass when nothing failed, otherwise status::verdict_failure.
int verdict_status(const RateReport& report);

}  // namespace incro::cli

#endif  // INCRO_CLI_EXPERIMENT_HPP
