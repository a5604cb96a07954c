#include "incro/cli/experiment.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "incro/format.hpp"
#include "incro/solvers.hpp"

namespace incro::cli {

void write_trace_csv(std::ostream& out, const Trace& trace,
                     const Eigen::VectorXd& x_star, const Eigen::MatrixXd* H_star,
                     double s) {
  const auto dist = distance_trace(trace, x_star);
  std::vector<double> dist_star;
  if (H_star) dist_star = distance_trace(trace, x_star, DistanceNorm::star(*H_star));
  out << trace_header << '\n';
  std::string row;
  for (long k = 1; k <= trace.cycles(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const double kk = static_cast<double>(k);
    row.clear();
    row += std::to_string(k);
    row += ',';
    row += shortest(trace.alpha(k));
    row += ',';
    row += shortest(dist[i]);
    row += ',';
    if (H_star) row += shortest(dist_star[i]);
    row += ',';
    row += shortest(trace.grad_error_norm(k));
    row += ',';
    row += shortest(kk * dist[i]);
    row += ',';
    row += shortest((s == 0 ? 1.0 : s == 1 ? kk : std::pow(kk, s)) * dist[i]);
    row += '\n';
    out << row;
  }
}

nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["claim"] = v.claim;
  j["bound"] = v.bound;
  j["measured"] = v.measured;
  j["tol"] = v.tol;
  if (v.status == Verdict::Status::skipped) j["pass"] = nullptr;
  else j["pass"] = v.status == Verdict::Status::pass;
  j["status"] = to_string(v.status);
  j["sense"] = v.sense == Verdict::Sense::at_most ? "at_most" : "at_least";
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

nlohmann::json report_context(const RateReport& r, long cycles) {
  nlohmann::json j;
  j["method"] = r.method == Method::ig ? "ig" : "in";
  j["R"] = r.R;
  j["s"] = r.s;
  j["cycles"] = cycles;
  j["tail_fraction"] = r.tail_fraction;
  j["norm"] = r.norm;
  j["fit_exponent"] = r.fit.exponent;
  j["fit_coefficient"] = r.fit.coefficient;
  j["fit_residual"] = r.fit.residual;
  j["fit_clipped"] = r.fit.clipped;
  j["t"] = r.t;
  j["tail_limsup"] = r.tail_limsup;
  j["c_strong"] = r.c_strong;
  j["L_sum"] = r.L_sum;
  j["M"] = r.M;
  j["B"] = r.B;
  if (r.M_inf_traj >= 0) j["M_inf_traj"] = r.M_inf_traj;
  if (r.M_tilde_traj >= 0) j["M_tilde_traj"] = r.M_tilde_traj;
  return j;
}

void write_report_jsonl(std::ostream& out, const RateReport& report,
                        const nlohmann::json& context) {
  for (const auto& v : report.verdicts) {
    nlohmann::json line = verdict_json(v);
    for (const auto& [key, value] : context.items())
      if (!line.contains(key)) line[key] = value;
    out << line.dump() << '\n';
  }
}

int verdict_status(const RateReport& report) {
  return report.passed() ? status::pass : status::verdict_failure;
}

namespace {

void write_file(const std::string& path, auto&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  body(out);
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace

Executed execute(const ExperimentConfig& config) {
  validate(config);
  Problem problem = build_problem(config);
  const Eigen::VectorXd x0 = build_start(config, problem.dimension());
  const Schedule schedule(config.R, config.s);
  RunOptions<double> opt;
  opt.order = build_order(config, problem.size());
  minimizer(problem);  // singular sums are a configuration error, caught before the run
  Trace trace = config.method == Method::ig
                    ? run_ig(problem, schedule, x0, config.cycles, opt)
                    : run_in(problem, schedule, x0, config.cycles, opt);
  RateReport report = bound_verdicts(problem, trace, schedule, build_verdict_options(config));
  return {std::move(problem), std::move(trace), std::move(report)};
}

RunOutcome run_experiment(const ExperimentConfig& config) {
  RunOutcome outcome;
  auto flush_trace = [&](const Problem& problem, const Trace& trace) {
    if (config.trace_path.empty()) return;
    const auto cons = constants(problem, trace.order());
    write_file(config.trace_path, [&](std::ostream& out) {
      write_trace_csv(out, trace, minimizer(problem), &cons.H_star, config.s);
    });
  };
  try {
    const Executed run = execute(config);
    outcome.cycles_completed = run.trace.cycles();
    outcome.report = run.report;
    flush_trace(run.problem, run.trace);
    if (!config.report_path.empty()) {
      write_file(config.report_path, [&](std::ostream& out) {
        write_report_jsonl(out, run.report, report_context(run.report, config.cycles));
      });
    }
    outcome.status = verdict_status(run.report);
    outcome.message = outcome.status == status::pass ? "all applicable claims hold"
                                                     : "a claim failed";
  } catch (const NonFiniteError<double>& e) {
    outcome.status = status::divergence;
    outcome.cycles_completed = e.partial_trace().cycles();
    outcome.message = e.what();
    try {
      flush_trace(build_problem(config), e.partial_trace());
    } catch (const Error& w) {
      outcome.message += std::string("; partial trace not written: ") + w.what();
    }
  } catch (const DivergenceError& e) {
    outcome.status = status::divergence;
    outcome.message = e.what();
  } catch (const IndefiniteHessianError& e) {
    outcome.status = status::divergence;
    outcome.message = e.what();
  } catch (const Error& e) {
    outcome.status = status::config_error;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace incro::cli
