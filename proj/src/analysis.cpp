#include <algorithm>
#include <cmath>

#include "incro/analysis.hpp"

namespace incro {

std::vector<double> distance_trace(const Trace& trace,
                                   const Eigen::VectorXd& x_star,
                                   const DistanceNorm& norm) {
  if (x_star.size() != trace.dimension())
    throw DimensionMismatchError("x* does not match the trace dimension");
  if (!trace.has_outer())
    throw BadParamsError("distance trace needs recorded outer iterates");
  const bool star = norm.kind == DistanceNorm::Kind::star;
  if (star) {
    if (norm.H.rows() != x_star.size() || norm.H.cols() != x_star.size())
      throw DimensionMismatchError("H* does not match the trace dimension");
    Eigen::LLT<Eigen::MatrixXd> llt(norm.H);
    if (llt.info() != Eigen::Success)
      throw BadParamsError("star norm needs a positive definite H*");
  }
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(trace.cycles() + 1));
  Eigen::VectorXd z(x_star.size());
  for (long k = 1; k <= trace.cycles() + 1; ++k) {
    z = trace.iterate(k) - x_star;
    dist.push_back(star ? std::sqrt(std::max(0.0, z.dot(norm.H * z))) : z.norm());
  }
  return dist;
}

std::size_t tail_count(std::size_t n, double tail_fraction) {
  if (!(tail_fraction > 0 && tail_fraction < 1))
    throw BadParamsError("tail fraction must lie in (0, 1)");
  return static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(n)));
}

namespace {

constexpr std::size_t min_tail_points = 10;
constexpr double zero_clip = 1e-300;

std::size_t tail_start(std::size_t n, double tail_fraction) {
  const std::size_t count = tail_count(n, tail_fraction);
  if (count < min_tail_points)
    throw DegenerateTailError("tail window has " + std::to_string(count) +
                              " points; at least 10 are needed");
  return n - count;
}

}  // namespace

PowerLawFit fit_rate_exponent(std::span<const double> dist, double tail_fraction) {
  const std::size_t start = tail_start(dist.size(), tail_fraction);
  PowerLawFit fit;
  fit.points = dist.size() - start;

  // centered sums for numerical stability
  const double count = static_cast<double>(fit.points);
  double mean_x = 0, mean_y = 0;
  std::vector<double> xs, ys;
  xs.reserve(fit.points);
  ys.reserve(fit.points);
  for (std::size_t i = start; i < dist.size(); ++i) {
    double d = dist[i];
    if (!(d > 0)) {
      d = zero_clip;
      fit.clipped = true;
    }
    xs.push_back(std::log(static_cast<double>(i + 1)));
    ys.push_back(std::log(d));
    mean_x += xs.back();
    mean_y += ys.back();
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  const double slope = sxy / sxx;
  const double intercept = mean_y - slope * mean_x;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    sse += r * r;
  }
  fit.exponent = -slope;
  fit.coefficient = std::exp(intercept);
  fit.residual = std::sqrt(sse / count);
  return fit;
}

double tail_limsup(std::span<const double> dist, double t, double tail_fraction) {
  const std::size_t start = tail_start(dist.size(), tail_fraction);
  double best = 0;
  for (std::size_t i = start; i < dist.size(); ++i)
    best = std::max(best, std::pow(static_cast<double>(i + 1), t) * dist[i]);
  return best;
}

std::vector<double> upper_envelope(std::span<const double> dist) {
  std::vector<double> env(dist.begin(), dist.end());
  for (std::size_t i = env.size(); i-- > 1;) env[i - 1] = std::max(env[i - 1], env[i]);
  return env;
}

double m_tilde_traj(const Problem& problem, const Trace& trace) {
  if (!trace.tracks_gradient_bound())
    throw BadParamsError("trace was recorded without gradient-bound tracking");
  return problem.quadratic_sum().L_sum * trace.max_gradient_norm() *
         static_cast<double>(problem.size());
}

}  // namespace incro
