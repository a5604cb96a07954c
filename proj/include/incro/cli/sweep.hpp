#ifndef INCRO_CLI_SWEEP_HPP
#define INCRO_CLI_SWEEP_HPP

#include <iosfwd>
#include <vector>

#include "incro/cli/experiment.hpp"

namespace incro::cli {

struct SweepRow {
  double R = 0;
  double s = 0;
  RunOutcome outcome;
};

/// Runs every (R, s) pair on the base configuration, `threads` at a time
/// (0 picks the hardware concurrency). Rows come back sorted by (R, s);
/// a failing run only sets its own row's status. Output paths of the base
/// configuration are ignored.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, std::vector<double> R_values,
                                std::vector<double> s_values, unsigned threads = 0);

inline constexpr const char* sweep_header =
    "R,s,status,fit_exponent,fit_residual,tail_limsup,verdicts,message";

/// One CSV row per run; `verdicts` lists claim=status pairs separated by ';'.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// The run report lines of every row, in row order.
void write_sweep_jsonl(std::ostream& out, const ExperimentConfig& base,
                       const std::vector<SweepRow>& rows);

/// Worst row status: divergence and configuration errors outrank verdict failures.
int sweep_status(const std::vector<SweepRow>& rows);

}  // namespace incro::cli

#endif  // INCRO_CLI_SWEEP_HPP
