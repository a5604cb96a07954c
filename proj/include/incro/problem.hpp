#ifndef INCRO_PROBLEM_HPP
#define INCRO_PROBLEM_HPP

#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "incro/component.hpp"

namespace incro {

/// Exact data of a quadratic finite sum, computed once at construction.
template <typename Scalar>
struct QuadraticSum {
  Matrix<Scalar> P_sum;
  Vector<Scalar> q_sum;
  Scalar c_strong{};  // smallest eigenvalue of P_sum (may be <= 0)
  Scalar L_sum{};     // sum of spectral norms
  std::vector<Scalar> lipschitz;  // ||P_i|| per component
  Vector<Scalar> x_star;          // empty unless c_strong > 0
};

/// An ordered finite sum of component oracles sharing one dimension.
/// Immutable after construction, so one instance may be shared by
/// concurrent runs.
template <typename Scalar>
class ProblemInstance {
 public:
  using Oracle = ComponentOracle<Scalar>;
  using OraclePtr = std::shared_ptr<const Oracle>;

  explicit ProblemInstance(std::vector<OraclePtr> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw BadParamsError("problem instance needs at least one component");
    for (const auto& c : components_) {
      if (!c) throw BadParamsError("null component oracle");
      if (c->dimension() != components_.front()->dimension())
        throw DimensionMismatchError("components do not share a dimension");
    }
    quadratics_.reserve(components_.size());
    for (const auto& c : components_) {
      const auto* q = c->as_quadratic();
      if (!q) {
        quadratics_.clear();
        break;
      }
      quadratics_.push_back(q);
    }
    if (!quadratics_.empty()) sum_ = build_sum();
  }

  static ProblemInstance from_quadratics(
      std::vector<QuadraticComponent<Scalar>> parts) {
    std::vector<OraclePtr> comps;
    comps.reserve(parts.size());
    for (auto& p : parts)
      comps.push_back(
          std::make_shared<const QuadraticComponent<Scalar>>(std::move(p)));
    return ProblemInstance(std::move(comps));
  }

  Eigen::Index dimension() const { return components_.front()->dimension(); }
  std::size_t size() const { return components_.size(); }
  const Oracle& component(std::size_t i) const { return *components_[i]; }
  const std::vector<OraclePtr>& components() const { return components_; }

  bool is_quadratic() const { return sum_.has_value(); }

  /// Closed-form view of component i; only valid when is_quadratic().
  const QuadraticComponent<Scalar>& quadratic(std::size_t i) const {
    if (!is_quadratic()) throw NonQuadraticError();
    return *quadratics_[i];
  }

  const QuadraticSum<Scalar>& quadratic_sum() const {
    if (!sum_) throw NonQuadraticError();
    return *sum_;
  }

 private:
  QuadraticSum<Scalar> build_sum() const {
    const Eigen::Index n = dimension();
    QuadraticSum<Scalar> s;
    s.P_sum = Matrix<Scalar>::Zero(n, n);
    s.q_sum = Vector<Scalar>::Zero(n);
    s.L_sum = Scalar(0);
    for (const auto* q : quadratics_) {
      s.P_sum += q->P();
      s.q_sum += q->q();
      Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(q->P(),
                                                       Eigen::EigenvaluesOnly);
      const Scalar norm = es.eigenvalues().cwiseAbs().maxCoeff();
      s.lipschitz.push_back(norm);
      s.L_sum += norm;
    }
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(s.P_sum,
                                                     Eigen::EigenvaluesOnly);
    s.c_strong = es.eigenvalues().minCoeff();
    if (s.c_strong > Scalar(0)) {
      Eigen::LLT<Matrix<Scalar>> llt(s.P_sum);
      Vector<Scalar> x = llt.solve(s.q_sum);
      // one refinement step keeps the residual at rounding level
      x += llt.solve(s.q_sum - s.P_sum * x);
      s.x_star = std::move(x);
    }
    return s;
  }

  std::vector<OraclePtr> components_;
  std::vector<const QuadraticComponent<Scalar>*> quadratics_;
  std::optional<QuadraticSum<Scalar>> sum_;
};

using Problem = ProblemInstance<double>;

/// x* = P^{-1} sum q_i.
template <typename Scalar>
const Vector<Scalar>& minimizer(const ProblemInstance<Scalar>& problem) {
  const auto& s = problem.quadratic_sum();
  if (!(s.c_strong > Scalar(0)))
    throw SingularSumError(static_cast<double>(s.c_strong));
  return s.x_star;
}

/// Rate constants of a strongly convex quadratic sum.
template <typename Scalar>
struct ProblemConstants {
  Scalar c_strong{};
  Scalar L_sum{};
  Matrix<Scalar> H_star;
  Scalar M{};  // ||sum_{i<j} P_j grad f_i(x*)|| in the processing order
  Scalar B{};  // sum_i ||H*^{-1/2} grad f_i(x*)||
};

/// Identity processing order 0..m-1.
inline std::vector<int> identity_order(std::size_t m) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

/// Cyclic shift: position j processes component (j + shift) mod m.
inline std::vector<int> rotated_order(std::size_t m, std::size_t shift) {
  std::vector<int> order(m);
  for (std::size_t j = 0; j < m; ++j)
    order[j] = static_cast<int>((j + shift) % m);
  return order;
}

inline bool is_permutation_of_range(const std::vector<int>& order,
                                    std::size_t m) {
  if (order.size() != m) return false;
  std::vector<char> seen(m, 0);
  for (int i : order) {
    if (i < 0 || static_cast<std::size_t>(i) >= m || seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

/// Component gradients at the minimizer, one column per component.
template <typename Scalar>
Matrix<Scalar> gradients_at_minimizer(const ProblemInstance<Scalar>& problem) {
  const auto& x = minimizer(problem);
  Matrix<Scalar> g(problem.dimension(), problem.size());
  for (std::size_t i = 0; i < problem.size(); ++i)
    problem.component(i).gradient(x, g.col(static_cast<Eigen::Index>(i)));
  return g;
}

/// The limit of the second-order error term, for a given processing order.
template <typename Scalar>
Scalar cross_term_constant(const ProblemInstance<Scalar>& problem,
                           const std::vector<int>& order) {
  if (!is_permutation_of_range(order, problem.size()))
    throw BadParamsError("order is not a permutation of the components");
  const Matrix<Scalar> g = gradients_at_minimizer(problem);
  Vector<Scalar> prefix = Vector<Scalar>::Zero(problem.dimension());
  Vector<Scalar> total = Vector<Scalar>::Zero(problem.dimension());
  for (int j : order) {
    total.noalias() += problem.quadratic(j).P() * prefix;
    prefix += g.col(j);
  }
  return total.norm();
}

/// Symmetric positive-definite inverse square root via eigendecomposition.
template <typename Scalar>
Matrix<Scalar> inverse_sqrt_spd(const Matrix<Scalar>& H) {
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(H);
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > Scalar(0)))
    throw BadParamsError("matrix is not symmetric positive definite");
  const Vector<Scalar> d = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

template <typename Scalar>
ProblemConstants<Scalar> constants(const ProblemInstance<Scalar>& problem,
                                   const std::vector<int>& order) {
  const auto& s = problem.quadratic_sum();
  minimizer(problem);  // raises SingularSum
  ProblemConstants<Scalar> out;
  out.c_strong = s.c_strong;
  out.L_sum = s.L_sum;
  out.H_star = s.P_sum;
  out.M = cross_term_constant(problem, order);
  const Matrix<Scalar> root = inverse_sqrt_spd(out.H_star);
  const Matrix<Scalar> g = gradients_at_minimizer(problem);
  out.B = Scalar(0);
  for (Eigen::Index i = 0; i < g.cols(); ++i) out.B += (root * g.col(i)).norm();
  return out;
}

template <typename Scalar>
ProblemConstants<Scalar> constants(const ProblemInstance<Scalar>& problem) {
  return constants(problem, identity_order(problem.size()));
}

/// True when every component is minimized at x* (all component gradients
/// vanish there, up to rounding).
template <typename Scalar>
bool has_shared_minimizer(const ProblemInstance<Scalar>& problem,
                          Scalar rel_tol = Scalar(1e-10)) {
  if (!problem.is_quadratic()) return false;
  const auto& s = problem.quadratic_sum();
  if (!(s.c_strong > Scalar(0))) return false;
  const Matrix<Scalar> g = gradients_at_minimizer(problem);
  return g.colwise().norm().maxCoeff() <= rel_tol * (Scalar(1) + s.q_sum.norm());
}

/// M~ = L G m with G the largest component-gradient norm over `samples`
/// seeded points in the ball of the given radius around x*.
template <typename Scalar>
Scalar m_tilde_ball(const ProblemInstance<Scalar>& problem, Scalar radius,
                    int samples, std::uint64_t seed) {
  const auto& s = problem.quadratic_sum();
  const auto& x_star = minimizer(problem);
  const Eigen::Index n = problem.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  Vector<Scalar> g(n), x(n), dir(n);
  Scalar G = Scalar(0);
  auto visit = [&](const Vector<Scalar>& point) {
    for (std::size_t i = 0; i < problem.size(); ++i) {
      problem.component(i).gradient(point, g);
      G = std::max(G, g.norm());
    }
  };
  visit(x_star);
  for (int k = 0; k < samples; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) dir(j) = static_cast<Scalar>(normal(rng));
    const Scalar len = dir.norm();
    if (len == Scalar(0)) continue;
    const Scalar rho = radius * static_cast<Scalar>(
        std::pow(unit(rng), 1.0 / static_cast<double>(n)));
    x = x_star + (rho / len) * dir;
    visit(x);
  }
  return s.L_sum * G * static_cast<Scalar>(problem.size());
}

}  // namespace incro

#endif  // INCRO_PROBLEM_HPP
