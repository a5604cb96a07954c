#ifndef INCRO_TRACE_HPP
#define INCRO_TRACE_HPP

#include <algorithm>
#include <cassert>
#include <limits>
#include <vector>

#include "incro/component.hpp"

namespace incro {

enum class Method { ig, in };

/// Per-cycle record of one solver run. Cycles are numbered from 1 as in
/// x_1^k; iterate(K + 1) is the iterate after the last cycle.
template <typename Scalar>
class RunTrace {
 public:
  using VectorType = Vector<Scalar>;
  using ConstMap = Eigen::Map<const VectorType>;

  RunTrace(Method method, Eigen::Index dimension, std::vector<int> order,
           bool record_outer, bool record_inner, bool record_scalars = true)
      : method_(method),
        n_(dimension),
        order_(std::move(order)),
        record_outer_(record_outer),
        record_inner_(record_inner),
        record_scalars_(record_scalars) {}

  Method method() const { return method_; }
  Eigen::Index dimension() const { return n_; }
  const std::vector<int>& order() const { return order_; }
  std::size_t components() const { return order_.size(); }

  long cycles() const { return closed_; }
  Scalar alpha(long k) const {
    assert(record_scalars_);
    return alpha_[k - 1];
  }
  Scalar grad_error_norm(long k) const {
    assert(record_scalars_);
    return grad_error_[k - 1];
  }
  const std::vector<Scalar>& alphas() const { return alpha_; }
  const std::vector<Scalar>& grad_error_norms() const { return grad_error_; }

  bool has_outer() const { return record_outer_; }
  bool has_inner() const { return record_inner_; }
  /// Whether alpha, the gradient error and the gradient bound are kept per cycle.
  bool has_scalars() const { return record_scalars_; }

  /// x_1^k for k in [1, K + 1].
  ConstMap iterate(long k) const {
    assert(record_outer_ || k == cycles() + 1);
    if (k == cycles() + 1) return ConstMap(final_.data(), n_);
    return ConstMap(outer_.data() + (k - 1) * n_, n_);
  }
  const VectorType& final_iterate() const { return final_; }

  /// x_i^k for cycle k and inner position i in [1, m].
  ConstMap inner_iterate(long k, int i) const {
    assert(record_inner_);
    const auto m = static_cast<long>(order_.size());
    return ConstMap(inner_.data() + ((k - 1) * m + (i - 1)) * n_, n_);
  }

  bool tracks_gradient_bound() const { return tracked_; }
  /// Largest component-gradient norm seen at the inner iterates of cycle k.
  Scalar gradient_bound(long k) const { return gradient_bound_[k - 1]; }
  /// G over the whole recorded trajectory, final iterate included.
  Scalar max_gradient_norm() const { return max_gradient_; }

  // Builders used by the solvers.
  void begin_cycle(const VectorType& x, Scalar alpha) {
    if (record_outer_) outer_.insert(outer_.end(), x.data(), x.data() + n_);
    if (record_scalars_) alpha_.push_back(alpha);
    open_ = true;
  }
  void push_inner(const VectorType& x) {
    inner_.insert(inner_.end(), x.data(), x.data() + n_);
  }
  void end_cycle(Scalar grad_error, Scalar gradient_bound) {
    ++closed_;
    open_ = false;
    if (record_scalars_) grad_error_.push_back(grad_error);
    if (tracked_) {
      if (record_scalars_) gradient_bound_.push_back(gradient_bound);
      max_gradient_ = std::max(max_gradient_, gradient_bound);
    }
  }
  void set_tracking(bool on) { tracked_ = on; }
  void finish(const VectorType& x, Scalar final_gradient_bound) {
    final_ = x;
    if (tracked_) max_gradient_ = std::max(max_gradient_, final_gradient_bound);
  }
  /// Drop a cycle whose start was recorded but which never completed.
  void abandon_open_cycle(const VectorType& restart) {
    if (open_) {
      open_ = false;
      if (record_scalars_) alpha_.pop_back();
      if (record_outer_) outer_.resize(outer_.size() - n_);
      if (record_inner_)
        inner_.resize(static_cast<std::size_t>(closed_) * order_.size() *
                      static_cast<std::size_t>(n_));
    }
    final_ = restart;
  }

 private:
  Method method_;
  Eigen::Index n_;
  std::vector<int> order_;
  bool record_outer_;
  bool record_inner_;
  bool record_scalars_;
  bool tracked_ = false;
  bool open_ = false;
  long closed_ = 0;
  std::vector<Scalar> outer_;
  std::vector<Scalar> inner_;
  std::vector<Scalar> alpha_;
  std::vector<Scalar> grad_error_;
  std::vector<Scalar> gradient_bound_;
  Scalar max_gradient_ = Scalar(0);
  VectorType final_;
};

}  // namespace incro

#endif  // INCRO_TRACE_HPP
