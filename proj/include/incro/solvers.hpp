#ifndef INCRO_SOLVERS_HPP
#define INCRO_SOLVERS_HPP

#include <functional>
#include <type_traits>
#include <vector>

#include "incro/problem.hpp"
#include "incro/schedule.hpp"
#include "incro/trace.hpp"

namespace incro {

/// Runs stop once an outer iterate has a non-finite entry or an entry
/// larger than this in magnitude.
inline constexpr double divergence_limit = 1e300;

/// Divergence with the trace of every completed cycle attached.
template <typename Scalar>
class NonFiniteError : public DivergenceError {
 public:
  NonFiniteError(long cycle, RunTrace<Scalar> partial)
      : DivergenceError(cycle), partial_(std::move(partial)) {}
  const RunTrace<Scalar>& partial_trace() const { return partial_; }

 private:
  RunTrace<Scalar> partial_;
};

template <typename Scalar>
struct RunOptions {
  /// Processing order as 0-based component indices; empty means identity.
  std::vector<int> order;
  bool record_outer = true;
  bool record_inner = false;
  /// Keep alpha_k, ||e^k|| and the gradient bound of every cycle.
  bool record_scalars = true;
  /// Evaluate every component gradient at every inner iterate to measure G.
  bool track_gradient_bound = true;
  /// Called with (k, x_1^k) for k = 1..K+1.
  std::function<void(long, const Vector<Scalar>&)> on_cycle;
};

namespace detail {

template <typename Scalar>
class GradientEval {
 public:
  explicit GradientEval(const ProblemInstance<Scalar>& p)
      : p_(p), quadratic_(p.is_quadratic()) {
    if (!quadratic_) return;
    const Eigen::Index n = p.dimension();
    const auto m = static_cast<Eigen::Index>(p.size());
    P_stack_.resize(m * n, n);
    q_stack_.resize(m * n);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& f = p.quadratic(static_cast<std::size_t>(i));
      P_stack_.middleRows(i * n, n) = f.P();
      q_stack_.segment(i * n, n) = f.q();
    }
    stacked_.resize(m * n);
  }

  void operator()(int i, const Vector<Scalar>& x, Vector<Scalar>& out) const {
    if (quadratic_) {
      const auto& f = p_.quadratic(static_cast<std::size_t>(i));
      out.noalias() = f.P() * x;
      out -= f.q();
    } else {
      p_.component(static_cast<std::size_t>(i)).gradient(x, out);
    }
  }

  /// Sum of all component gradients.
  void full(const Vector<Scalar>& x, Vector<Scalar>& out, Vector<Scalar>& scratch) const {
    if (quadratic_) {
      const auto& s = p_.quadratic_sum();
      out.noalias() = s.P_sum * x;
      out -= s.q_sum;
      return;
    }
    out.setZero();
    for (std::size_t i = 0; i < p_.size(); ++i) {
      (*this)(static_cast<int>(i), x, scratch);
      out += scratch;
    }
  }

  /// Gradient of component i at the point last passed to max_norm.
  void last(int i, const Vector<Scalar>& x, Vector<Scalar>& out) const {
    if (quadratic_) out = stacked_.segment(i * p_.dimension(), p_.dimension());
    else (*this)(i, x, out);
  }

  Scalar max_norm(const Vector<Scalar>& x, Vector<Scalar>& scratch) const {
    Scalar g = Scalar(0);
    if (quadratic_) {
      const Eigen::Index n = p_.dimension();
      stacked_.noalias() = P_stack_ * x;
      stacked_ -= q_stack_;
      for (std::size_t i = 0; i < p_.size(); ++i)
        g = std::max(g, stacked_.segment(static_cast<Eigen::Index>(i) * n, n).norm());
      return g;
    }
    for (std::size_t i = 0; i < p_.size(); ++i) {
      (*this)(static_cast<int>(i), x, scratch);
      g = std::max(g, scratch.norm());
    }
    return g;
  }

 private:
  const ProblemInstance<Scalar>& p_;
  bool quadratic_;
  Matrix<Scalar> P_stack_;
  Vector<Scalar> q_stack_;
  mutable Vector<Scalar> stacked_;
};

template <typename Scalar>
bool escaped(const Vector<Scalar>& x) {
  if (!x.allFinite()) return true;
  return x.size() > 0 &&
         static_cast<double>(x.cwiseAbs().maxCoeff()) > divergence_limit;
}

template <typename Scalar>
std::vector<int> resolve_order(const ProblemInstance<Scalar>& problem,
                               const std::vector<int>& order) {
  if (order.empty()) return identity_order(problem.size());
  if (!is_permutation_of_range(order, problem.size()))
    throw BadParamsError("order is not a permutation of the components");
  return order;
}

template <typename Scalar>
void check_start(const ProblemInstance<Scalar>& problem,
                 const Vector<Scalar>& x0, long cycles) {
  if (x0.size() != problem.dimension())
    throw DimensionMismatchError("x0 does not match the problem dimension");
  if (!x0.allFinite()) throw BadParamsError("x0 must be finite");
  if (cycles < 1) throw BadParamsError("cycles must be >= 1");
}

}  // namespace detail

/// Incremental gradient: within cycle k, x_{i+1} = x_i - alpha_k grad f_{order(i)}(x_i),
/// and x_1^{k+1} = x_{m+1}^k. Records ||e^k|| with
/// e^k = sum_i (grad f_i(x_1^k) - grad f_i(x_i^k)), evaluated as the full
/// gradient at x_1^k minus the sum of the step gradients.
template <typename Scalar>
RunTrace<Scalar> run_ig(const ProblemInstance<Scalar>& problem,
                        const StepsizeSchedule<Scalar>& schedule,
                        const std::type_identity_t<Vector<Scalar>>& x0, long cycles,
                        const RunOptions<Scalar>& options = {}) {
  detail::check_start(problem, x0, cycles);
  const auto order = detail::resolve_order(problem, options.order);
  const Eigen::Index n = problem.dimension();
  const detail::GradientEval<Scalar> grad(problem);
  const bool track = options.track_gradient_bound;

  RunTrace<Scalar> trace(Method::ig, n, order, options.record_outer,
                         options.record_inner, options.record_scalars);
  trace.set_tracking(track);

  Vector<Scalar> x = x0, x1(n), g(n), g1(n), e(n), scratch(n);
  for (long k = 1; k <= cycles; ++k) {
    if (options.on_cycle) options.on_cycle(k, x);
    const Scalar alpha = schedule(k);
    trace.begin_cycle(x, alpha);
    x1 = x;
    e.setZero();
    Scalar bound = Scalar(0);
    for (std::size_t j = 0; j < order.size(); ++j) {
      const int i = order[j];
      if (options.record_inner) trace.push_inner(x);
      if (track) {
        bound = std::max(bound, grad.max_norm(x, scratch));
        grad.last(i, x, g);
      } else {
        grad(i, x, g);
      }
      e += g;
      x.noalias() -= alpha * g;
    }
    grad.full(x1, g1, scratch);
    e = g1 - e;
    trace.end_cycle(e.norm(), bound);
    if (detail::escaped(x)) {
      trace.finish(x, Scalar(0));
      throw NonFiniteError<Scalar>(k, std::move(trace));
    }
  }
  if (options.on_cycle) options.on_cycle(cycles + 1, x);
  trace.finish(x, track ? grad.max_norm(x, scratch) : Scalar(0));
  return trace;
}

/// Incremental Newton: the accumulated Hessian H starts at the identity, gains
/// grad^2 f_i(x_i^k) before each inner step and carries over between cycles;
/// each step solves (H/k) d = grad f_i(x_i^k) and sets x_{i+1} = x_i - alpha_k d.
/// Records ||e_g^k|| with
/// e_g^k = sum_j (grad f_j(x_j) - grad f_j(x_1) + H_j(x_j)(x_1 - x_j) / (alpha_k k)).
template <typename Scalar>
RunTrace<Scalar> run_in(const ProblemInstance<Scalar>& problem,
                        const StepsizeSchedule<Scalar>& schedule,
                        const std::type_identity_t<Vector<Scalar>>& x0, long cycles,
                        const RunOptions<Scalar>& options = {}) {
  detail::check_start(problem, x0, cycles);
  const auto order = detail::resolve_order(problem, options.order);
  const Eigen::Index n = problem.dimension();
  const detail::GradientEval<Scalar> grad(problem);
  const bool track = options.track_gradient_bound;

  RunTrace<Scalar> trace(Method::in, n, order, options.record_outer,
                         options.record_inner, options.record_scalars);
  trace.set_tracking(track);

  Matrix<Scalar> H = Matrix<Scalar>::Identity(n, n), h(n, n), Hbar(n, n);
  Eigen::LLT<Matrix<Scalar>> llt(n);
  Vector<Scalar> x = x0, x1(n), g(n), g1(n), d(n), e(n), scratch(n);
  for (long k = 1; k <= cycles; ++k) {
    if (options.on_cycle) options.on_cycle(k, x);
    const Scalar alpha = schedule(k);
    const Scalar kk = static_cast<Scalar>(k);
    trace.begin_cycle(x, alpha);
    x1 = x;
    e.setZero();
    Scalar bound = Scalar(0);
    for (std::size_t j = 0; j < order.size(); ++j) {
      const int i = order[j];
      const auto& f = problem.component(static_cast<std::size_t>(i));
      if (options.record_inner) trace.push_inner(x);
      if (track) bound = std::max(bound, grad.max_norm(x, scratch));
      f.hessian(x, h);
      H += h;
      grad(i, x, g);
      if (j > 0) {
        grad(i, x1, g1);
        e += g;
        e -= g1;
        e.noalias() += (h * (x1 - x)) / (alpha * kk);
      }
      Hbar = H / kk;
      llt.compute(Hbar);
      if (llt.info() != Eigen::Success) {
        trace.abandon_open_cycle(x1);
        throw IndefiniteHessianError(k);
      }
      d = llt.solve(g);
      x.noalias() -= alpha * d;
    }
    trace.end_cycle(e.norm(), bound);
    if (detail::escaped(x)) {
      trace.finish(x, Scalar(0));
      throw NonFiniteError<Scalar>(k, std::move(trace));
    }
  }
  if (options.on_cycle) options.on_cycle(cycles + 1, x);
  trace.finish(x, track ? grad.max_norm(x, scratch) : Scalar(0));
  return trace;
}

/// ||E_k|| recovered from consecutive outer iterates through
/// x_1^{k+1} = (I - alpha_k P) x_1^k + alpha_k sum q_i + alpha_k^2 E_k.
template <typename Scalar>
std::vector<Scalar> empirical_E(const ProblemInstance<Scalar>& problem,
                                const RunTrace<Scalar>& trace) {
  const auto& s = problem.quadratic_sum();
  if (trace.method() != Method::ig)
    throw BadParamsError("empirical_E needs an incremental gradient trace");
  if (!trace.has_outer() || !trace.has_scalars())
    throw BadParamsError("empirical_E needs recorded outer iterates and stepsizes");
  if (trace.dimension() != problem.dimension())
    throw DimensionMismatchError("trace does not match the problem dimension");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(trace.cycles()));
  Vector<Scalar> r(problem.dimension());
  for (long k = 1; k <= trace.cycles(); ++k) {
    const Scalar a = trace.alpha(k);
    const auto xk = trace.iterate(k);
    r = trace.iterate(k + 1) - xk;
    r.noalias() += a * (s.P_sum * xk);
    r -= a * s.q_sum;
    out.push_back(r.norm() / (a * a));
  }
  return out;
}

}  // namespace incro

#endif  // INCRO_SOLVERS_HPP
