#include <cmath>
#include <sstream>

#include "doctest.h"
#include "incro/examples.hpp"
#include "incro/instance_io.hpp"
#include "incro/oracle_check.hpp"

using namespace incro;

namespace {

// f(x) = 1/4 sum x_j^4 + 1/2 ||x||^2: smooth, convex, not quadratic.
class QuarticOracle final : public ComponentOracle<double> {
 public:
  explicit QuarticOracle(Eigen::Index n, double grad_scale = 1.0)
      : n_(n), scale_(grad_scale) {}
  Eigen::Index dimension() const override { return n_; }
  double value(const Eigen::Ref<const Eigen::VectorXd>& x) const override {
    return 0.25 * x.array().pow(4).sum() + 0.5 * x.squaredNorm();
  }
  void gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                Eigen::Ref<Eigen::VectorXd> out) const override {
    out = scale_ * (x.array().cube() + x.array()).matrix();
  }
  void hessian(const Eigen::Ref<const Eigen::VectorXd>& x,
               Eigen::Ref<Eigen::MatrixXd> out) const override {
    out.setZero();
    out.diagonal() = (3 * x.array().square() + 1).matrix();
  }

 private:
  Eigen::Index n_;
  double scale_;
};

// Same quadratic, gradient deliberately doubled.
class ScaledGradient final : public ComponentOracle<double> {
 public:
  explicit ScaledGradient(QuadraticComponent<double> f) : f_(std::move(f)) {}
  Eigen::Index dimension() const override { return f_.dimension(); }
  double value(const Eigen::Ref<const Eigen::VectorXd>& x) const override { return f_.value(x); }
  void gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                Eigen::Ref<Eigen::VectorXd> out) const override {
    f_.gradient(x, out);
    out *= 2;
  }
  void hessian(const Eigen::Ref<const Eigen::VectorXd>& x,
               Eigen::Ref<Eigen::MatrixXd> out) const override {
    f_.hessian(x, out);
  }

 private:
  QuadraticComponent<double> f_;
};

double spectral_norm(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::string serialized(const Problem& p) {
  std::ostringstream out;
  write_instance(out, p);
  return out.str();
}

}  // namespace

TEST_CASE("quadratic component oracles") {
  Eigen::MatrixXd P(2, 2);
  P << 2, 1, 1, 3;
  QuadraticComponent<double> f(P, Eigen::Vector2d(1, -1), 0.5);
  const Eigen::Vector2d x(0.3, -0.7);
  CHECK((f.gradient(x) - (P * x - Eigen::Vector2d(1, -1))).norm() == 0.0);
  CHECK(f.hessian(x) == P);

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(QuadraticComponent<double>(asym, Eigen::Vector2d::Zero()), BadParamsError);
  CHECK_THROWS_AS(QuadraticComponent<double>(P, Eigen::Vector3d::Zero()), DimensionMismatchError);
}

TEST_CASE("minimizer of the canned instances") {
  CHECK(std::abs(minimizer(make_lower_pair(1.0))(0)) <= 1e-15);

  auto single = Problem::from_quadratics(
      {QuadraticComponent<double>(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1))});
  CHECK(minimizer(single)(0) == 0.0);

  const auto lp = make_lower_pair(1.0);
  CHECK(lp.quadratic_sum().c_strong == doctest::Approx(2.0));
}

TEST_CASE("minimizer agrees with a long gradient-descent run") {
  const auto p = make_random(5, 4, 1.0, 10.0, 7);
  const auto& sum = p.quadratic_sum();
  // Plain gradient descent on the sum, stepsize 1/L_sum.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  const double step = 1.0 / sum.L_sum;
  for (int k = 0; k < 1000000; ++k) x -= step * (sum.P_sum * x - sum.q_sum);

  const auto& x_star = minimizer(p);
  CHECK((x_star - x).norm() <= 1e-8);
  CHECK((sum.P_sum * x_star - sum.q_sum).norm() <= 1e-10 * (1 + sum.q_sum.norm()));
}

TEST_CASE("minimizer errors") {
  Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(2, 2);
  flat(0, 0) = 1;
  auto singular = Problem::from_quadratics({QuadraticComponent<double>(flat, Eigen::Vector2d::Zero())});
  CHECK_THROWS_AS(minimizer(singular), SingularSumError);
  CHECK_THROWS_AS(constants(singular), SingularSumError);

  Problem quartic({std::make_shared<QuarticOracle>(2)});
  CHECK_FALSE(quartic.is_quadratic());
  CHECK_THROWS_AS(minimizer(quartic), NonQuadraticError);
  CHECK_THROWS_AS(constants(quartic), NonQuadraticError);
}

TEST_CASE("constants of the canned instances") {
  SUBCASE("lower pair") {
    const auto k = constants(make_lower_pair(1.0));
    CHECK(k.c_strong == doctest::Approx(2.0));
    CHECK(k.L_sum == doctest::Approx(2.0));
    CHECK(k.M == doctest::Approx(1.0));
    // B = sum |g_i| / sqrt(H*) with g = -1, +1 and H* = 2
    CHECK(k.B == doctest::Approx(2.0 / std::sqrt(2.0)));
  }
  SUBCASE("slow convergence pair") {
    CHECK(constants(make_slow_conv()).c_strong == doctest::Approx(0.2));
  }
  SUBCASE("octet") {
    const auto p = make_octet();
    const auto k = constants(p);
    CHECK(k.H_star == 4.0 * Eigen::Matrix2d::Identity());
    CHECK(minimizer(p).norm() == 0.0);
    // the identity order cancels the cross term; a rotation does not
    CHECK(k.M == doctest::Approx(0.0).scale(1e-12));
    CHECK(cross_term_constant(p, rotated_order(8, 1)) > 0.5);
  }
  SUBCASE("B matches the inverse quadratic form") {
    const auto p = make_random(4, 3, 1.0, 10.0, 3);
    const auto k = constants(p);
    const Eigen::MatrixXd g = gradients_at_minimizer(p);
    Eigen::LLT<Eigen::MatrixXd> llt(k.H_star);
    double B = 0;
    for (int i = 0; i < 3; ++i) B += std::sqrt(g.col(i).dot(llt.solve(g.col(i))));
    CHECK(k.B == doctest::Approx(B).epsilon(1e-12));
  }
}

TEST_CASE("octet geometry") {
  const auto c = octet_directions();
  CHECK(c.col(0) == Eigen::Vector2d(-1, 0));
  CHECK(c.rowwise().sum() == Eigen::Vector2d::Zero());
  CHECK(c * c.transpose() == 4.0 * Eigen::Matrix2d::Identity());
}

TEST_CASE("shared minimizer instances") {
  const auto p = make_shared_min(3, 4, 1);
  const auto& x = minimizer(p);
  for (std::size_t i = 0; i < p.size(); ++i)
    CHECK(p.component(i).gradient(x).norm() <= 1e-12);
  CHECK(has_shared_minimizer(p));
  CHECK_FALSE(has_shared_minimizer(make_lower_pair(1.0)));
}

TEST_CASE("random instances hit their targets exactly") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const int m = 1 + static_cast<int>(seed % 4);
    const double c = 0.5 + 0.1 * static_cast<double>(seed % 3);
    const double L = 10.0 + static_cast<double>(seed);
    const auto p = make_random(n, m, c, L, seed);
    const auto& sum = p.quadratic_sum();
    CHECK(sum.c_strong == doctest::Approx(c).epsilon(1e-10));
    CHECK(sum.L_sum == doctest::Approx(L).epsilon(1e-10));
    CHECK(sum.c_strong <= spectral_norm(sum.P_sum) + 1e-12);
    CHECK(spectral_norm(sum.P_sum) <= sum.L_sum + 1e-12);
    for (std::size_t i = 0; i < p.size(); ++i) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.quadratic(i).P());
      CHECK(es.eigenvalues().minCoeff() > 0);
    }
    const auto& x = minimizer(p);
    CHECK((sum.P_sum * x - sum.q_sum).norm() <= 1e-10 * (1 + sum.q_sum.norm()));
  }
  CHECK(serialized(make_random(4, 3, 1, 10, 3)) == serialized(make_random(4, 3, 1, 10, 3)));
  CHECK(serialized(make_random(4, 3, 1, 10, 3)) != serialized(make_random(4, 3, 1, 10, 4)));

  CHECK_THROWS_AS(make_random(3, 2, 2.0, 1.0, 0), BadParamsError);
  CHECK_THROWS_AS(make_random(3, 2, 0.0, 1.0, 0), BadParamsError);
  CHECK_THROWS_AS(make_random(3, 2, -1.0, 1.0, 0), BadParamsError);
  CHECK_THROWS_AS(make_random(1, 2, 1.0, 2.0, 0), BadParamsError);
  CHECK(make_random(1, 3, 2.0, 2.0, 0).quadratic_sum().c_strong == doctest::Approx(2.0));
}

TEST_CASE("cross-term constant never exceeds the sampled-ball M~") {
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const int m = 2 + static_cast<int>(seed % 5);
    const auto p = make_random(n, m, 1.0, 5.0 + static_cast<double>(seed % 7), seed);
    const double M = constants(p).M;
    const double M_tilde = m_tilde_ball(p, 1.0, 50, seed);
    if (!(M <= M_tilde)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("oracle consistency check") {
  QuadraticComponent<double> id(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3));
  const auto good = check_oracle_consistency<double>(id, 20, 1);
  CHECK(good.max_grad_relerr <= 1e-7);
  CHECK(good.max_hess_relerr <= 1e-7);
  CHECK(good.consistent());

  ScaledGradient broken(id);
  const auto bad = check_oracle_consistency<double>(broken, 20, 1);
  CHECK(bad.max_grad_relerr == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_FALSE(bad.consistent());

  const auto octet = make_octet();
  const auto third = check_oracle_consistency(octet.component(2), 20, 5);
  CHECK(third.max_grad_relerr <= 1e-7);
  CHECK(third.max_hess_relerr <= 1e-7);

  const auto quartic = check_oracle_consistency<double>(QuarticOracle(3), 20, 2);
  CHECK(quartic.consistent());
  CHECK_FALSE(check_oracle_consistency<double>(QuarticOracle(3, 1.5), 20, 2).consistent());
}

TEST_CASE("instance files round-trip bit-exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = make_random(1 + static_cast<int>(seed % 4) + (seed % 4 == 0 ? 1 : 0),
                               1 + static_cast<int>(seed % 3), 1.0, 7.0, seed);
    std::istringstream in(serialized(p));
    const auto back = read_instance(in);
    REQUIRE(back.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(back.quadratic(i).P() == p.quadratic(i).P());
      CHECK(back.quadratic(i).q() == p.quadratic(i).q());
      CHECK(back.quadratic(i).r() == p.quadratic(i).r());
    }
    CHECK(serialized(back) == serialized(p));
  }
  const auto octet = make_octet();
  const std::string text = serialized(octet);
  CHECK(text.rfind("component 1\n1 ", 0) == 0);
  CHECK(text.find("\ncomponent 8\n") != std::string::npos);

  std::istringstream missing("component 2\n1\n0\n0\n");
  CHECK_THROWS_AS(read_instance(missing), BadParamsError);
  std::istringstream ragged("component 1\n1 0\n0\n0 0\n0\n");
  CHECK_THROWS_AS(read_instance(ragged), DimensionMismatchError);
  std::istringstream junk("component 1\n1 x\n0 1\n0 0\n0\n");
  CHECK_THROWS_AS(read_instance(junk), BadParamsError);
  std::istringstream asym("component 1\n1 2\n0 1\n0 0\n0\n");
  CHECK_THROWS_AS(read_instance(asym), BadParamsError);
}
