#ifndef INCRO_COMPONENT_HPP
#define INCRO_COMPONENT_HPP

#include <Eigen/Dense>

#include "incro/errors.hpp"

namespace incro {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
class QuadraticComponent;

/// One summand f_i of a finite-sum objective, exposed through value,
/// gradient and Hessian evaluators.
template <typename Scalar>
class ComponentOracle {
 public:
  using VectorType = Vector<Scalar>;
  using MatrixType = Matrix<Scalar>;

  virtual ~ComponentOracle() = default;

  virtual Eigen::Index dimension() const = 0;
  virtual Scalar value(const Eigen::Ref<const VectorType>& x) const = 0;
  virtual void gradient(const Eigen::Ref<const VectorType>& x,
                        Eigen::Ref<VectorType> out) const = 0;
  virtual void hessian(const Eigen::Ref<const VectorType>& x,
                       Eigen::Ref<MatrixType> out) const = 0;

  /// Closed-form view, or nullptr when the component is not quadratic.
  virtual const QuadraticComponent<Scalar>* as_quadratic() const {
    return nullptr;
  }

  VectorType gradient(const Eigen::Ref<const VectorType>& x) const {
    VectorType g(dimension());
    gradient(x, g);
    return g;
  }

  MatrixType hessian(const Eigen::Ref<const VectorType>& x) const {
    MatrixType h(dimension(), dimension());
    hessian(x, h);
    return h;
  }
};

/// f(x) = 1/2 x'Px - q'x + r with P exactly symmetric.
template <typename Scalar>
class QuadraticComponent final : public ComponentOracle<Scalar> {
 public:
  using VectorType = Vector<Scalar>;
  using MatrixType = Matrix<Scalar>;

  QuadraticComponent(MatrixType P, VectorType q, Scalar r = Scalar(0))
      : P_(std::move(P)), q_(std::move(q)), r_(r) {
    if (P_.rows() == 0 || P_.rows() != P_.cols())
      throw BadParamsError("quadratic component: P must be square and non-empty");
    if (q_.size() != P_.rows())
      throw DimensionMismatchError("quadratic component: q does not match P");
    if (P_ != P_.transpose())
      throw BadParamsError("quadratic component: P must be exactly symmetric");
  }

  Eigen::Index dimension() const override { return P_.rows(); }

  Scalar value(const Eigen::Ref<const VectorType>& x) const override {
    return Scalar(0.5) * x.dot(P_ * x) - q_.dot(x) + r_;
  }

  void gradient(const Eigen::Ref<const VectorType>& x,
                Eigen::Ref<VectorType> out) const override {
    out.noalias() = P_ * x;
    out -= q_;
  }

  void hessian(const Eigen::Ref<const VectorType>&,
               Eigen::Ref<MatrixType> out) const override {
    out = P_;
  }

  const QuadraticComponent* as_quadratic() const override { return this; }

  using ComponentOracle<Scalar>::gradient;
  using ComponentOracle<Scalar>::hessian;

  const MatrixType& P() const { return P_; }
  const VectorType& q() const { return q_; }
  Scalar r() const { return r_; }

  template <typename NewScalar>
  QuadraticComponent<NewScalar> cast() const {
    return QuadraticComponent<NewScalar>(P_.template cast<NewScalar>(),
                                         q_.template cast<NewScalar>(),
                                         static_cast<NewScalar>(r_));
  }

 private:
  MatrixType P_;
  VectorType q_;
  Scalar r_;
};

}  // namespace incro

#endif  // INCRO_COMPONENT_HPP
