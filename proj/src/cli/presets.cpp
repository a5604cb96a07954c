#include "incro/cli/presets.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "incro/format.hpp"
#include "incro/solvers.hpp"

namespace incro::cli {

namespace {

using Labelled = std::vector<std::pair<std::string, ExperimentConfig>>;

ExperimentConfig base(const std::string& kind, Method method, double R, double s, long cycles) {
  ExperimentConfig c;
  c.problem.kind = kind;
  c.method = method;
  c.R = R;
  c.s = s;
  c.cycles = cycles;
  return c;
}

ExperimentConfig random_instance(Method method, double R, long cycles) {
  auto c = base("random", method, R, 1.0, cycles);
  c.problem.n = 4;
  c.problem.m = 3;
  c.problem.c = 1;
  c.problem.L = 10;
  c.problem.seed = 3;
  return c;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "slow-conv", "rate-s", "const-step-complexity", "octet-order", "in-star-rate", "shared-min"};
  return names;
}

std::vector<std::pair<std::string, ExperimentConfig>> preset_configs(const std::string& name) {
  if (name == "slow-conv") return {{"main", base("slow_conv", Method::ig, 1, 1, 1000000)}};
  if (name == "rate-s") {
    Labelled out;
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
      auto c = base("lower_pair", Method::ig, 10, s, 1000000);
      c.problem.L = 1;
      out.emplace_back("s=" + shortest(s), c);
    }
    return out;
  }
  if (name == "const-step-complexity") return {};
  if (name == "octet-order") {
    auto identity = base("octet", Method::ig, 1, 0.75, 1000000);
    auto rotated = identity;
    rotated.order.kind = "rotate";
    rotated.order.shift = 1;
    return {{"identity", identity}, {"rotated", rotated}};
  }
  if (name == "in-star-rate") {
    auto newton = random_instance(Method::in, 2, 100000);
    newton.norm = "star";
    return {{"newton", newton}, {"gradient", random_instance(Method::ig, 0.1, 100000)}};
  }
  if (name == "shared-min") {
    auto c = base("shared_min", Method::ig, 1, 1, 100000);
    c.problem.n = 3;
    c.problem.m = 4;
    c.problem.seed = 1;
    c.R = 3.0 / build_problem(c).quadratic_sum().c_strong;
    return {{"main", c}};
  }
  throw UnknownPresetError(name);
}

Verdict exponent_window(const std::string& claim, double exponent, double target,
                        double window) {
  return Verdict::check(claim, std::abs(exponent - target), window, 1.0,
                        Verdict::Sense::at_most,
                        "fitted exponent " + shortest(exponent) + ", target " +
                            shortest(target) + " +/- " + shortest(window));
}

std::vector<ComplexityPoint> constant_step_complexity(const Problem& problem,
                                                      const Eigen::VectorXd& x0,
                                                      const std::vector<double>& eps_grid) {
  const auto& sum = problem.quadratic_sum();
  const auto& x_star = minimizer(problem);
  const double c = sum.c_strong, L = sum.L_sum;
  const double m = static_cast<double>(problem.size());
  const double dist1 = (x0 - x_star).norm();
  detail::GradientEval<double> grad(problem);
  Eigen::VectorXd scratch(problem.dimension());
  const double G_start = grad.max_norm(x0, scratch);

  RunOptions<double> opt;
  opt.record_outer = false;
  opt.record_scalars = false;

  std::vector<ComplexityPoint> points;
  for (double eps : eps_grid) {
    ComplexityPoint pt;
    pt.eps = eps;
    double G = G_start;
    for (pt.attempts = 1; pt.attempts <= 5; ++pt.attempts) {
      pt.G_used = G;
      pt.M_tilde = L * G * m;
      pt.alpha = eps * c / (2 * pt.M_tilde);
      pt.K_prime = static_cast<long>(
          std::ceil((2 * pt.M_tilde / (eps * c * c)) * std::log(2 * dist1 / eps)));
      pt.first_entry = -1;
      opt.on_cycle = [&](long k, const Eigen::VectorXd& x) {
        const double d = (x - x_star).norm();
        if (pt.first_entry < 0 && d < eps) pt.first_entry = k;
        if (k == pt.K_prime + 1) pt.final_dist = d;
      };
      const auto trace = run_ig(problem, Schedule::constant(pt.alpha), x0, pt.K_prime, opt);
      pt.G_traj = trace.max_gradient_norm();
      if (pt.G_traj <= G) break;
      G = pt.G_traj;
    }
    pt.attempts = std::min(pt.attempts, 5);
    points.push_back(pt);
  }
  return points;
}

double complexity_scaling_ratio(const std::vector<ComplexityPoint>& points) {
  double worst = 1;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto& a = points[i];
    const auto& b = points[i + 1];
    if (a.first_entry < 1 || b.first_entry < 1) return std::numeric_limits<double>::infinity();
    const double measured = static_cast<double>(b.first_entry) / static_cast<double>(a.first_entry);
    const double predicted = (std::log(1 / b.eps) / b.eps) / (std::log(1 / a.eps) / a.eps);
    const double q = measured / predicted;
    worst = std::max(worst, std::max(q, 1 / q));
  }
  return worst;
}

int PresetResult::status() const {
  for (const auto& r : runs)
    if (!r.report.passed()) return status::verdict_failure;
  for (const auto& c : checks)
    if (c.verdict.status == Verdict::Status::fail) return status::verdict_failure;
  return status::pass;
}

std::vector<nlohmann::json> PresetResult::lines() const {
  std::vector<nlohmann::json> out;
  for (const auto& r : runs) {
    nlohmann::json context = report_context(r.report, r.cycles);
    context["preset"] = name;
    context["run"] = r.label;
    for (const auto& [key, value] : r.extra.items()) context[key] = value;
    for (const auto& v : r.report.verdicts) {
      nlohmann::json line = verdict_json(v);
      for (const auto& [key, value] : context.items())
        if (!line.contains(key)) line[key] = value;
      out.push_back(std::move(line));
    }
  }
  for (const auto& c : checks) {
    nlohmann::json line = verdict_json(c.verdict);
    line["preset"] = name;
    for (const auto& [key, value] : c.extra.items())
      if (!line.contains(key)) line[key] = value;
    out.push_back(std::move(line));
  }
  return out;
}

const Verdict* PresetResult::find(const std::string& label, const std::string& claim) const {
  for (const auto& r : runs)
    if (r.label == label)
      if (const Verdict* v = r.report.find(claim)) return v;
  for (const auto& c : checks)
    if (c.verdict.claim == claim && (label.empty() || c.extra.value("run", "") == label))
      return &c.verdict;
  return nullptr;
}

PresetResult run_preset(const std::string& name, const PresetOptions& options) {
  PresetResult result;
  result.name = name;
  const auto configs = preset_configs(name);

  std::filesystem::path dir;
  if (!options.out_dir.empty()) {
    dir = options.out_dir;
    std::filesystem::create_directories(dir);
  }

  for (const auto& [label, config] : configs) {
    const Executed run = execute(config);
    PresetRun pr;
    pr.label = label;
    pr.cycles = config.cycles;
    pr.report = run.report;
    const double s_hat = run.report.fit.exponent;
    if (name == "slow-conv") {
      pr.report.verdicts.push_back(exponent_window("slow_exponent_window", s_hat, 0.2, 0.02));
    } else if (name == "rate-s") {
      pr.report.verdicts.push_back(exponent_window("exponent_matches_s", s_hat, config.s, 0.08));
    } else if (name == "octet-order") {
      pr.report.verdicts.push_back(label == "identity"
          ? exponent_window("identity_order_exponent", s_hat, 2 * config.s, 0.1)
          : exponent_window("rotated_order_exponent", s_hat, config.s, 0.08));
    } else if (name == "in-star-rate" && label == "gradient") {
      pr.report.verdicts.push_back(Verdict::check(
          "small_R_exponent", s_hat, 0.5, 1.0, Verdict::Sense::at_most,
          "incremental gradient with R c = 0.1 stays slower than k^-0.5"));
    }
    if (!dir.empty() && options.write_traces) {
      auto file_config = config;
      file_config.trace_path = (dir / (name + "." + label + ".csv")).string();
      write_text(dir / (name + "." + label + ".cfg"), format_config(file_config));
      const auto cons = constants(run.problem, run.trace.order());
      std::ofstream out(file_config.trace_path, std::ios::binary);
      write_trace_csv(out, run.trace, minimizer(run.problem), &cons.H_star, config.s);
    }
    result.runs.push_back(std::move(pr));
  }

  if (name == "const-step-complexity") {
    const Problem problem = make_random(5, 4, 1.0, 10.0, 1);
    const auto points = constant_step_complexity(problem, Eigen::VectorXd::Ones(5), {1e-2, 1e-3, 1e-4});
    for (const auto& pt : points) {
      PresetCheck check;
      check.verdict = Verdict::check("eps_reached_by_K_prime", pt.final_dist, pt.eps, 1.0,
                                     Verdict::Sense::at_most, "dist at cycle K'+1 against eps");
      check.extra = {{"run", "eps=" + shortest(pt.eps)}, {"eps", pt.eps}, {"alpha", pt.alpha},
                     {"K_prime", pt.K_prime}, {"first_entry", pt.first_entry},
                     {"G_used", pt.G_used}, {"G_traj", pt.G_traj}, {"M_tilde", pt.M_tilde},
                     {"attempts", pt.attempts}};
      result.checks.push_back(std::move(check));
    }
    PresetCheck scaling;
    scaling.verdict = Verdict::check(
        "first_entry_scaling", complexity_scaling_ratio(points), 2.0, 1.0, Verdict::Sense::at_most,
        "worst ratio between measured and (1/eps) ln(1/eps) growth of first-entry cycles");
    result.checks.push_back(std::move(scaling));
  }

  if (!dir.empty()) {
    std::string text;
    for (const auto& line : result.lines()) text += line.dump() + '\n';
    write_text(dir / (name + ".jsonl"), text);
  }
  return result;
}

}  // namespace incro::cli
