#include "incro/examples.hpp"

#include <algorithm>
#include <random>

namespace incro {
namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat symmetrized(const Mat& A) { return 0.5 * (A + A.transpose()); }

Mat gaussian_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Mat A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) A(i, j) = normal(rng);
  return A;
}

// Haar-distributed orthogonal matrix from the QR of a Gaussian matrix.
Mat random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Mat> qr(gaussian_matrix(rng, n, n));
  Mat Q = qr.householderQ();
  const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

Mat random_spd(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  const Mat Q = random_orthogonal(rng, n);
  Vec lambda(n);
  for (int j = 0; j < n; ++j) lambda(j) = uniform(rng);
  return symmetrized(Q * lambda.asDiagonal() * Q.transpose());
}

double spectral_norm(const Mat& P) {
  Eigen::SelfAdjointEigenSolver<Mat> es(P, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

Problem make_slow_conv() {
  std::vector<QuadraticComponent<double>> parts;
  for (int i = 0; i < 2; ++i)
    parts.emplace_back(Mat::Constant(1, 1, 0.1), Vec::Zero(1), 0.0);
  return Problem::from_quadratics(std::move(parts));
}

Problem make_lower_pair(double L) {
  if (!(L > 0)) throw BadParamsError("lower_pair: L must be positive");
  std::vector<QuadraticComponent<double>> parts;
  // (L/2)(x - a)^2 = 1/2 L x^2 - (L a) x + L a^2 / 2
  for (double a : {1.0, -1.0})
    parts.emplace_back(Mat::Constant(1, 1, L), Vec::Constant(1, L * a),
                       0.5 * L * a * a);
  return Problem::from_quadratics(std::move(parts));
}

Eigen::Matrix<double, 2, 8> octet_directions() {
  Eigen::Matrix<double, 2, 8> c;
  const Eigen::Vector2d e1(-1, 0), e2(0, -1);
  c.col(0) = e1;
  c.col(5) = e1;
  c.col(1) = -e1;
  c.col(4) = -e1;
  c.col(2) = e2;
  c.col(7) = e2;
  c.col(3) = -e2;
  c.col(6) = -e2;
  return c;
}

Problem make_octet() {
  const auto c = octet_directions();
  std::vector<QuadraticComponent<double>> parts;
  // 1/2 (c'x + 1)^2 = 1/2 x'cc'x + c'x + 1/2
  for (int i = 0; i < 8; ++i) {
    const Vec ci = c.col(i);
    parts.emplace_back(Mat(ci * ci.transpose()), Vec(-ci), 0.5);
  }
  return Problem::from_quadratics(std::move(parts));
}

Problem make_shared_min(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw BadParamsError("shared_min: n and m must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<QuadraticComponent<double>> parts;
  for (int i = 0; i < m; ++i)
    parts.emplace_back(random_spd(rng, n, 1.0, 2.0), Vec::Zero(n), 0.0);
  return Problem::from_quadratics(std::move(parts));
}

Problem make_random(int n, int m, double c, double L, std::uint64_t seed) {
  if (n < 1 || m < 1) throw BadParamsError("random: n and m must be >= 1");
  if (!(c > 0)) throw BadParamsError("random: c must be positive");
  if (c > L) throw BadParamsError("random: c must not exceed L");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  std::vector<Mat> P(m);
  if (n == 1) {
    // In one dimension the sum's curvature equals the sum of the norms.
    if (c != L) throw BadParamsError("random: dimension one requires c == L");
    std::uniform_real_distribution<double> uniform(c / m, L / m);
    double total = 0;
    for (auto& p : P) {
      p = Mat::Constant(1, 1, uniform(rng));
      total += p(0, 0);
    }
    for (auto& p : P) p *= L / total;
  } else {
    // Flatten one shared direction so the raw sum is singular; the affine
    // map a*P + b*I below then needs b >= 0 and every component stays convex.
    Vec u = gaussian_matrix(rng, n, 1);
    u.normalize();
    const Mat flatten = Mat::Identity(n, n) - u * u.transpose();
    for (auto& p : P)
      p = symmetrized(flatten * random_spd(rng, n, c / m, L / m) * flatten);

    Mat sum = Mat::Zero(n, n);
    double norms = 0;
    for (const auto& p : P) {
      sum += p;
      norms += spectral_norm(p);
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(sum, Eigen::EigenvaluesOnly);
    const double c0 = es.eigenvalues().minCoeff();
    // c = a c0 + m b and L = a norms + m b
    const double a = (L - c) / (norms - c0);
    const double b = (c - a * c0) / m;
    for (auto& p : P) {
      p *= a;
      p.diagonal().array() += b;
    }
  }

  std::vector<QuadraticComponent<double>> parts;
  for (int i = 0; i < m; ++i) {
    Vec q(n);
    for (int j = 0; j < n; ++j) q(j) = normal(rng);
    parts.emplace_back(std::move(P[i]), std::move(q), 0.0);
  }
  return Problem::from_quadratics(std::move(parts));
}

Problem make_example(const ExampleSpec& spec) {
  switch (spec.kind) {
    case ExampleKind::slow_conv:
      return make_slow_conv();
    case ExampleKind::lower_pair:
      return make_lower_pair(spec.L);
    case ExampleKind::octet:
      return make_octet();
    case ExampleKind::shared_min:
      return make_shared_min(spec.n, spec.m, spec.seed);
    case ExampleKind::random:
      return make_random(spec.n, spec.m, spec.c, spec.L, spec.seed);
  }
  throw BadParamsError("unknown example kind");
}

std::string to_string(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::slow_conv: return "slow_conv";
    case ExampleKind::lower_pair: return "lower_pair";
    case ExampleKind::octet: return "octet";
    case ExampleKind::shared_min: return "shared_min";
    case ExampleKind::random: return "random";
  }
  return "?";
}

ExampleKind parse_example_kind(const std::string& name) {
  for (auto k : {ExampleKind::slow_conv, ExampleKind::lower_pair,
                 ExampleKind::octet, ExampleKind::shared_min,
                 ExampleKind::random})
    if (to_string(k) == name) return k;
  throw BadParamsError("unknown problem kind '" + name + "'");
}

}  // namespace incro
