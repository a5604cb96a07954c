// One line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "incro/cli/presets.hpp"
#include "incro/cli/sweep.hpp"
#include "incro/format.hpp"
#include "incro/solvers.hpp"

using namespace incro;
using namespace incro::cli;

namespace {

// Pinned tolerances.
constexpr double slow_lo = 0.18, slow_hi = 0.22;
constexpr double inverse_k_tol = 1.1;
constexpr double exponent_window_rate = 0.08;
constexpr double recursion_slack = 1e-9;
constexpr double complexity_ratio = 2.0;
constexpr double in_star_tol = 1.2;
constexpr double contrast_ceiling = 0.5;
constexpr double octet_identity_lo = 1.4, octet_identity_hi = 1.6;
constexpr double octet_rotated_lo = 0.67, octet_rotated_hi = 0.83;
constexpr double chung_tol = 0.05;
constexpr double shared_floor = 1.1;
constexpr double tail = 0.5;
constexpr double fast_limit_s = 5.0, chung_limit_s = 10.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body,
               double time_limit = 0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("threw: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs >= time_limit) {
    out.pass = false;
    out.detail += "; over the " + shortest(time_limit) + " s limit";
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::VectorXd ones(Eigen::Index n) { return Eigen::VectorXd::Ones(n); }

RunOptions<double> lean() {
  RunOptions<double> opt;
  opt.track_gradient_bound = false;
  return opt;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "slow convergence exponent", [] {
    const auto p = make_slow_conv();
    const auto tr = run_ig(p, Schedule(1, 1), ones(1), 1000000, lean());
    const double s = fit_rate_exponent(distance_trace(tr, minimizer(p)), tail).exponent;
    return Outcome{s >= slow_lo && s <= slow_hi,
                   "fitted " + fmt(s) + " in [" + fmt(slow_lo) + ", " + fmt(slow_hi) + "]"};
  }, fast_limit_s);

  criterion(2, "inverse-k upper bound", [] {
    const auto p = make_lower_pair(1);
    const auto tr = run_ig(p, Schedule(10, 1), ones(1), 1000000, lean());
    const auto cons = constants(p);
    const double R = 10, bound = R * R * cons.M / (R * cons.c_strong - 1);
    const double v = tail_limsup(distance_trace(tr, minimizer(p)), 1, tail);
    return Outcome{v <= inverse_k_tol * bound,
                   "tail max k dist " + fmt(v) + " <= " + fmt(inverse_k_tol) + " * " + fmt(bound)};
  }, fast_limit_s);

  criterion(3, "exponent matches s across the sweep", [] {
    ExperimentConfig base;
    base.problem.kind = "lower_pair";
    base.problem.L = 1;
    base.cycles = 1000000;
    const auto rows = run_sweep(base, {10}, {0.25, 0.5, 0.75, 1.0});
    bool ok = rows.size() == 4;
    std::string detail;
    for (const auto& r : rows) {
      const bool analysed = r.outcome.status <= status::verdict_failure;
      const double s_hat = r.outcome.report.fit.exponent;
      ok = ok && analysed && std::abs(s_hat - r.s) <= exponent_window_rate;
      detail += (detail.empty() ? "" : ", ") + std::string("s=") + fmt(r.s) + " -> " +
                (analysed ? fmt(s_hat) : "status " + std::to_string(r.outcome.status));
    }
    return Outcome{ok, detail + " (window " + fmt(exponent_window_rate) + ")"};
  });

  criterion(4, "constant-step recursion at every cycle", [] {
    const auto p = make_lower_pair(1);
    const double alpha = 0.1, c = p.quadratic_sum().c_strong;
    const auto tr = run_ig(p, Schedule::constant(alpha), ones(1), 10000);
    const auto dist = distance_trace(tr, minimizer(p));
    const auto E = empirical_E(p, tr);
    const double M_inf = *std::max_element(E.begin(), E.end());
    long held = 0, total = 0;
    double contraction = 1;
    for (std::size_t k = 1; k < dist.size(); ++k) {
      contraction *= 1 - c * alpha;
      const double rhs = contraction * dist[0] + alpha * M_inf / c;
      ++total;
      if (dist[k] <= rhs * (1 + recursion_slack)) ++held;
    }
    return Outcome{held == total, std::to_string(held) + "/" + std::to_string(total) +
                                      " cycles, M_inf_traj " + fmt(M_inf)};
  });

  criterion(5, "constant-step complexity", [] {
    const auto p = make_random(5, 4, 1, 10, 1);
    const auto pts = constant_step_complexity(p, ones(5), {1e-2, 1e-3, 1e-4});
    bool ok = true;
    std::string detail;
    for (const auto& pt : pts) {
      ok = ok && pt.final_dist < pt.eps && pt.G_traj <= pt.G_used;
      detail += "eps " + fmt(pt.eps) + ": dist " + fmt(pt.final_dist) + " at K'+1=" +
                std::to_string(pt.K_prime + 1) + ", first entry " + std::to_string(pt.first_entry) + "; ";
    }
    const double ratio = complexity_scaling_ratio(pts);
    ok = ok && ratio <= complexity_ratio;
    return Outcome{ok, detail + "scaling ratio " + fmt(ratio) + " <= " + fmt(complexity_ratio)};
  });

  criterion(6, "incremental Newton star-norm bound", [] {
    const auto p = make_random(4, 3, 1, 10, 3);
    const auto cons = constants(p);
    const double R = 2, bound = cons.B * R * (R + 1) / (R - 1);
    const auto tr = run_in(p, Schedule(R, 1), ones(4), 100000, lean());
    const double v = tail_limsup(distance_trace(tr, minimizer(p), DistanceNorm::star(cons.H_star)), 1, tail);
    const auto ig = run_ig(p, Schedule(0.1, 1), ones(4), 100000, lean());
    const double s_ig = fit_rate_exponent(distance_trace(ig, minimizer(p)), tail).exponent;
    return Outcome{v <= in_star_tol * bound && s_ig < contrast_ceiling,
                   "tail max k dist* " + fmt(v) + " <= " + fmt(in_star_tol) + " * " + fmt(bound) +
                       "; contrast run R=0.1 fitted " + fmt(s_ig) + " < " + fmt(contrast_ceiling)};
  });

  criterion(7, "order sensitivity on the octet", [] {
    const auto p = make_octet();
    RunOptions<double> opt = lean();
    const auto id = run_ig(p, Schedule(1, 0.75), ones(2), 1000000, opt);
    opt.order = rotated_order(8, 1);
    const auto rot = run_ig(p, Schedule(1, 0.75), ones(2), 1000000, opt);
    const double s_id = fit_rate_exponent(distance_trace(id, minimizer(p)), tail).exponent;
    const double s_rot = fit_rate_exponent(distance_trace(rot, minimizer(p)), tail).exponent;
    return Outcome{s_id >= octet_identity_lo && s_id <= octet_identity_hi &&
                       s_rot >= octet_rotated_lo && s_rot <= octet_rotated_hi,
                   "identity " + fmt(s_id) + " in [" + fmt(octet_identity_lo) + ", " +
                       fmt(octet_identity_hi) + "], rotated " + fmt(s_rot) + " in [" +
                       fmt(octet_rotated_lo) + ", " + fmt(octet_rotated_hi) + "]"};
  });

  criterion(8, "gradient error within alpha_k M~", [] {
    long violations = 0, cycles = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const int n = 2 + static_cast<int>(seed % 5), m = 2 + static_cast<int>((seed / 5) % 5);
      const double L = 2.0 + static_cast<double>(seed % 7) * 3.0;
      const double s = seed % 3 == 0 ? 0.0 : seed % 3 == 1 ? 0.5 : 1.0;
      const auto p = make_random(n, m, 1, L, seed);
      const auto tr = run_ig(p, Schedule(1.0 / p.quadratic_sum().L_sum, s), ones(n), 2000);
      const double Mt = m_tilde_traj(p, tr);
      for (long k = 1; k <= tr.cycles(); ++k) {
        ++cycles;
        const double ratio = tr.grad_error_norm(k) / (tr.alpha(k) * Mt);
        worst = std::max(worst, ratio);
        if (ratio > 1) ++violations;
      }
    }
    return Outcome{violations == 0, std::to_string(violations) + " violations in " +
                                        std::to_string(cycles) + " cycles over 50 runs, worst ratio " +
                                        fmt(worst)};
  });

  criterion(9, "recursion simulator grid", [] {
    int applicable = 0, passed = 0;
    std::string failed;
    for (double a : {0.5, 1.0, 2.0, 4.0})
      for (double t : {0.5, 1.0})
        for (double s : {0.5, 1.0}) {
          const auto r = chung_simulate({.a = a, .d = 1, .s = s, .t = t, .k0 = 1, .u0 = 1,
                                         .horizon = 1000000}, chung_tol, tail);
          ++applicable;
          if (r.pass) ++passed;
          else failed += " (a=" + fmt(a) + ",t=" + fmt(t) + ",s=" + fmt(s) + ")";
        }
    return Outcome{passed == applicable, std::to_string(passed) + "/" + std::to_string(applicable) +
                                             " branch verdicts pass at tol " + fmt(chung_tol) + failed};
  }, chung_limit_s);

  criterion(10, "shared minimizer beats 1/k", [] {
    const auto p = make_shared_min(3, 4, 1);
    const double R = 3 / p.quadratic_sum().c_strong;
    const auto tr = run_ig(p, Schedule(R, 1), ones(3), 100000, lean());
    const double s = fit_rate_exponent(distance_trace(tr, minimizer(p)), tail).exponent;
    return Outcome{s >= shared_floor, "fitted " + fmt(s) + " >= " + fmt(shared_floor)};
  });

  criterion(11, "M below trajectory M~", [] {
    int violations = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const int n = 1 + static_cast<int>(seed % 6), m = 2 + static_cast<int>((seed / 6) % 6);
      const double L = n == 1 ? 1.0 : 1.5 + static_cast<double>(seed % 9);
      const auto p = make_random(n, m, 1, L, 1000 + seed);
      const auto tr = run_ig(p, Schedule(1.0 / L, 1), ones(n), 200);
      const double ratio = constants(p).M / m_tilde_traj(p, tr);
      worst = std::max(worst, ratio);
      if (ratio > 1) ++violations;
    }
    return Outcome{violations == 0, std::to_string(violations) +
                                        " violations on 100 instances, largest M / M~ " + fmt(worst)};
  });

  criterion(12, "byte-identical trace on repeat", [] {
    const auto dir = std::filesystem::temp_directory_path() / "incro_acceptance";
    std::filesystem::create_directories(dir);
    ExperimentConfig c;
    c.problem.kind = "lower_pair";
    c.problem.L = 1;
    c.R = 10;
    c.s = 1;
    c.cycles = 1000000;
    c.trace_path = (dir / "first.csv").string();
    const int first = run_experiment(c).status;
    c.trace_path = (dir / "second.csv").string();
    const int second = run_experiment(c).status;
    const std::string a = slurp(dir / "first.csv"), b = slurp(dir / "second.csv");
    std::filesystem::remove_all(dir);
    return Outcome{first == status::pass && second == status::pass && !a.empty() && a == b,
                   std::to_string(a.size()) + " bytes, identical: " + (a == b ? "yes" : "no")};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
