#ifndef INCRO_ERRORS_HPP
#define INCRO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace incro {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation needs closed-form quadratic data and a component has none.
class NonQuadraticError : public Error {
 public:
  NonQuadraticError() : Error("operation requires quadratic components") {}
};

/// The summed Hessian is not positive definite (the sum is not strongly convex).
class SingularSumError : public Error {
 public:
  explicit SingularSumError(double lambda_min)
      : Error("sum Hessian is not positive definite (smallest eigenvalue " +
              std::to_string(lambda_min) + ")"),
        lambda_min_(lambda_min) {}
  double lambda_min() const { return lambda_min_; }

 private:
  double lambda_min_;
};

class BadParamsError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class IndefiniteHessianError : public Error {
 public:
  explicit IndefiniteHessianError(long cycle)
      : Error("accumulated Hessian is not positive definite at cycle " +
              std::to_string(cycle)),
        cycle_(cycle) {}
  long cycle() const { return cycle_; }

 private:
  long cycle_;
};

/// Fewer than the minimum number of usable points in a tail window.
class DegenerateTailError : public Error {
 public:
  using Error::Error;
};

/// Iterates left the finite range. The templated subclass in solvers.hpp
/// carries the partial trace.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(long cycle)
      : Error("iterates diverged during cycle " + std::to_string(cycle)),
        cycle_(cycle) {}
  long cycle() const { return cycle_; }

 private:
  long cycle_;
};

}  // namespace incro

#endif  // INCRO_ERRORS_HPP
