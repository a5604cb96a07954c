#include <algorithm>
#include <cmath>
#include <limits>

#include "incro/analysis.hpp"
#include "incro/solvers.hpp"

namespace incro {

Verdict Verdict::check(std::string claim, double measured, double bound,
                       double tol, Sense sense, std::string note) {
  Verdict v;
  v.claim = std::move(claim);
  v.measured = measured;
  v.bound = bound;
  v.tol = tol;
  v.sense = sense;
  v.note = std::move(note);
  const bool ok = sense == Sense::at_most ? measured <= tol * bound
                                          : measured >= tol * bound;
  v.status = ok ? Status::pass : Status::fail;
  return v;
}

Verdict Verdict::skip(std::string claim, std::string why) {
  Verdict v;
  v.claim = std::move(claim);
  v.status = Status::skipped;
  v.note = std::move(why);
  return v;
}

std::string to_string(Verdict::Status status) {
  switch (status) {
    case Verdict::Status::pass: return "pass";
    case Verdict::Status::fail: return "fail";
    case Verdict::Status::skipped: return "skipped";
  }
  return "?";
}

bool RateReport::passed() const {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.status == Verdict::Status::fail;
  });
}

const Verdict* RateReport::find(const std::string& claim) const {
  for (const auto& v : verdicts)
    if (v.claim == claim) return &v;
  return nullptr;
}

RateReport bound_verdicts(const Problem& problem, const Trace& trace,
                          const Schedule& schedule, const VerdictOptions& opt) {
  using S = Verdict::Sense;
  const auto& sum = problem.quadratic_sum();
  const auto cons = constants(problem, trace.order());
  const auto& x_star = minimizer(problem);
  const bool ig = trace.method() == Method::ig;
  const double R = schedule.R(), s = schedule.s(), c = cons.c_strong;
  const double Rc = R * c;

  RateReport rep;
  rep.method = trace.method();
  rep.R = R;
  rep.s = s;
  rep.t = s;
  rep.tail_fraction = opt.tail_fraction;
  rep.c_strong = c;
  rep.L_sum = cons.L_sum;
  rep.M = cons.M;
  rep.B = cons.B;
  rep.norm = opt.norm == DistanceNorm::Kind::star ? "star" : "euclid";

  const auto dist = distance_trace(trace, x_star);
  const bool need_star = !ig || opt.norm == DistanceNorm::Kind::star;
  const auto dist_star = need_star
      ? distance_trace(trace, x_star, DistanceNorm::star(cons.H_star))
      : std::vector<double>{};
  const auto& chosen = opt.norm == DistanceNorm::Kind::star ? dist_star : dist;

  bool tail_ok = true;
  PowerLawFit fit_euclid;
  try {
    rep.fit = fit_rate_exponent(chosen, opt.tail_fraction);
    rep.tail_limsup = tail_limsup(chosen, s, opt.tail_fraction);
    fit_euclid = fit_rate_exponent(dist, opt.tail_fraction);
  } catch (const DegenerateTailError&) {
    tail_ok = false;
  }

  if (ig && trace.has_outer() && trace.has_scalars()) {
    const auto E = empirical_E(problem, trace);
    rep.M_inf_traj = E.empty() ? 0.0 : *std::max_element(E.begin(), E.end());
  }
  if (trace.tracks_gradient_bound()) rep.M_tilde_traj = m_tilde_traj(problem, trace);

  const Eigen::MatrixXd g_star = gradients_at_minimizer(problem);
  const double scale = 1 + cons.L_sum * g_star.colwise().norm().maxCoeff();
  const bool M_zero = cons.M <= 1e-12 * scale;
  const bool shared = has_shared_minimizer(problem);
  const char* short_tail = "fewer than 10 points in the tail window";
  const char* newton_run = "incremental gradient claim; run used incremental Newton";

  // s = 1, Rc > 1: limsup k dist_k <= R^2 M / (Rc - 1)
  if (!ig) rep.verdicts.push_back(Verdict::skip(claims::ig_inverse_k, newton_run));
  else if (s != 1) rep.verdicts.push_back(Verdict::skip(claims::ig_inverse_k, "needs s = 1"));
  else if (!(Rc > 1)) rep.verdicts.push_back(Verdict::skip(claims::ig_inverse_k, "needs R c > 1"));
  else if (M_zero)
    rep.verdicts.push_back(Verdict::skip(
        claims::ig_inverse_k, "M = 0: the limit is zero and a finite tail cannot certify it"));
  else if (!tail_ok) rep.verdicts.push_back(Verdict::skip(claims::ig_inverse_k, short_tail));
  else
    rep.verdicts.push_back(Verdict::check(claims::ig_inverse_k,
                                          tail_limsup(dist, 1, opt.tail_fraction),
                                          R * R * cons.M / (Rc - 1), opt.tol_ig,
                                          S::at_most));

  // 0 < s < 1: limsup k^s dist_k <= R M / c, reading the exponent t as s
  if (!ig) rep.verdicts.push_back(Verdict::skip(claims::ig_power, newton_run));
  else if (!(s > 0 && s < 1)) rep.verdicts.push_back(Verdict::skip(claims::ig_power, "needs 0 < s < 1"));
  else if (M_zero)
    rep.verdicts.push_back(Verdict::skip(
        claims::ig_power, "M = 0: the limit is zero and a finite tail cannot certify it"));
  else if (!tail_ok) rep.verdicts.push_back(Verdict::skip(claims::ig_power, short_tail));
  else
    rep.verdicts.push_back(Verdict::check(claims::ig_power,
                                          tail_limsup(dist, s, opt.tail_fraction),
                                          R * cons.M / c, opt.tol_ig, S::at_most,
                                          "tail weight k^t with t = s"));

  // s = 1, Rc < 1: dist_k decays like k^{-Rc}
  if (!ig) rep.verdicts.push_back(Verdict::skip(claims::ig_slow_exponent, newton_run));
  else if (s != 1) rep.verdicts.push_back(Verdict::skip(claims::ig_slow_exponent, "needs s = 1"));
  else if (!(Rc < 1)) rep.verdicts.push_back(Verdict::skip(claims::ig_slow_exponent, "needs R c < 1"));
  else if (!tail_ok) rep.verdicts.push_back(Verdict::skip(claims::ig_slow_exponent, short_tail));
  else
    rep.verdicts.push_back(Verdict::check(claims::ig_slow_exponent, fit_euclid.exponent,
                                          Rc, 0.9, S::at_least));

  // s = 0, alpha ||P|| <= 1: dist_{k+1} <= (1 - c alpha)^k dist_1 + alpha M_inf / c
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sum.P_sum, Eigen::EigenvaluesOnly);
    const double P_norm = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!ig) rep.verdicts.push_back(Verdict::skip(claims::ig_constant_step, newton_run));
    else if (s != 0) rep.verdicts.push_back(Verdict::skip(claims::ig_constant_step, "needs s = 0"));
    else if (!(R * P_norm <= 1))
      rep.verdicts.push_back(Verdict::skip(claims::ig_constant_step, "needs alpha ||P|| <= 1"));
    else if (!trace.has_outer() || !trace.has_scalars())
      rep.verdicts.push_back(Verdict::skip(claims::ig_constant_step, "outer iterates not recorded"));
    else {
      const double alpha = R;
      const double floor = alpha * rep.M_inf_traj / c;
      double contraction = 1, worst = 0;
      for (std::size_t k = 1; k < dist.size(); ++k) {
        contraction *= 1 - c * alpha;
        const double rhs = contraction * dist[0] + floor;
        const double ratio = rhs > 0 ? dist[k] / rhs
                                     : (dist[k] > 0 ? std::numeric_limits<double>::infinity() : 0.0);
        worst = std::max(worst, ratio);
      }
      rep.verdicts.push_back(Verdict::check(
          claims::ig_constant_step, worst, 1.0, 1 + opt.recursion_slack, S::at_most,
          "max over cycles of dist_{k+1} / bound_k with measured M_inf"));
    }
  }

  // IN, s = 1, R > 1: limsup k ||x - x*||_* <= B R (R + 1) / (R - 1)
  if (ig) rep.verdicts.push_back(Verdict::skip(claims::in_star, "incremental Newton claim; run used incremental gradient"));
  else if (s != 1) rep.verdicts.push_back(Verdict::skip(claims::in_star, "needs s = 1"));
  else if (!(R > 1)) rep.verdicts.push_back(Verdict::skip(claims::in_star, "needs R > 1"));
  else if (!tail_ok) rep.verdicts.push_back(Verdict::skip(claims::in_star, short_tail));
  else
    rep.verdicts.push_back(Verdict::check(claims::in_star,
                                          tail_limsup(dist_star, 1, opt.tail_fraction),
                                          cons.B * R * (R + 1) / (R - 1), opt.tol_in,
                                          S::at_most));

  // every component minimized at x*: faster than 1/k
  if (!ig) rep.verdicts.push_back(Verdict::skip(claims::shared_min, newton_run));
  else if (!shared) rep.verdicts.push_back(Verdict::skip(claims::shared_min, "components do not share a minimizer"));
  else if (s != 1) rep.verdicts.push_back(Verdict::skip(claims::shared_min, "needs s = 1"));
  else if (!tail_ok) rep.verdicts.push_back(Verdict::skip(claims::shared_min, short_tail));
  else
    rep.verdicts.push_back(Verdict::check(claims::shared_min, fit_euclid.exponent,
                                          std::min(0.9 * Rc, 1.1), 1.0, S::at_least));
  return rep;
}

}  // namespace incro
