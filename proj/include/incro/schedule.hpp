#ifndef INCRO_SCHEDULE_HPP
#define INCRO_SCHEDULE_HPP

#include <cmath>

#include "incro/errors.hpp"

namespace incro {

/// alpha_k = R / k^s for cycle k >= 1; s = 0 is the constant stepsize R.
template <typename Scalar = double>
class StepsizeSchedule {
 public:
  StepsizeSchedule(Scalar R, Scalar s) : R_(R), s_(s) {
    if (!(R > Scalar(0)) || !std::isfinite(static_cast<double>(R)))
      throw BadParamsError("stepsize: R must be positive and finite");
    if (!(s >= Scalar(0) && s <= Scalar(1)))
      throw BadParamsError("stepsize: s must lie in [0, 1]");
  }

  static StepsizeSchedule constant(Scalar alpha) { return {alpha, Scalar(0)}; }

  Scalar operator()(long k) const {
    if (s_ == Scalar(0)) return R_;
    if (s_ == Scalar(1)) return R_ / static_cast<Scalar>(k);
    return R_ / std::pow(static_cast<Scalar>(k), s_);
  }

  Scalar R() const { return R_; }
  Scalar s() const { return s_; }
  bool is_constant() const { return s_ == Scalar(0); }

 private:
  Scalar R_;
  Scalar s_;
};

}  // namespace incro

#endif  // INCRO_SCHEDULE_HPP
