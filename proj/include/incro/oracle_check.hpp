#ifndef INCRO_ORACLE_CHECK_HPP
#define INCRO_ORACLE_CHECK_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "incro/component.hpp"

namespace incro {

struct OracleReport {
  double max_grad_relerr = 0;
  double max_hess_relerr = 0;
  bool hessian_symmetric = true;
  int samples = 0;

  bool consistent(double tol = 1e-5) const {
    return hessian_symmetric && max_grad_relerr <= tol && max_hess_relerr <= tol;
  }
};

/// Compares the gradient against central differences of the value, and the
/// Hessian against central differences of the gradient, at seeded points
/// drawn uniformly from the unit ball.
template <typename Scalar>
OracleReport check_oracle_consistency(const ComponentOracle<Scalar>& oracle,
                                      int samples, std::uint64_t seed) {
  using Vec = Vector<Scalar>;
  using Mat = Matrix<Scalar>;
  const Eigen::Index n = oracle.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar floor = Scalar(1e-8);

  OracleReport report;
  Vec x(n), xp(n), xm(n), g(n), gp(n), gm(n), fd(n);
  Mat H(n, n), fdH(n, n);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < n; ++j) x(j) = static_cast<Scalar>(normal(rng));
    const Scalar len = x.norm();
    if (len > Scalar(0))
      x *= static_cast<Scalar>(std::pow(unit(rng), 1.0 / static_cast<double>(n))) / len;

    oracle.gradient(x, g);
    oracle.hessian(x, H);
    if (H != H.transpose()) report.hessian_symmetric = false;

    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar h = std::cbrt(eps) * std::max(Scalar(1), std::abs(x(j)));
      xp = x;
      xm = x;
      xp(j) += h;
      xm(j) -= h;
      const Scalar step = xp(j) - xm(j);
      fd(j) = (oracle.value(xp) - oracle.value(xm)) / step;
      oracle.gradient(xp, gp);
      oracle.gradient(xm, gm);
      fdH.col(j) = (gp - gm) / step;
    }
    const Scalar gerr = (g - fd).norm() / std::max(fd.norm(), floor);
    const Scalar herr = (H - fdH).norm() / std::max(fdH.norm(), floor);
    report.max_grad_relerr = std::max(report.max_grad_relerr, static_cast<double>(gerr));
    report.max_hess_relerr = std::max(report.max_hess_relerr, static_cast<double>(herr));
    ++report.samples;
  }
  return report;
}

}  // namespace incro

#endif  // INCRO_ORACLE_CHECK_HPP
