#include <algorithm>
#include <cmath>

#include "incro/analysis.hpp"

namespace incro {

std::string to_string(ChungBranch branch) {
  switch (branch) {
    case ChungBranch::inverse_power_limit: return "inverse_power_limit";
    case ChungBranch::log_critical: return "log_critical";
    case ChungBranch::slow_power: return "slow_power";
    case ChungBranch::fractional_limit: return "fractional_limit";
    case ChungBranch::zero_forcing: return "zero_forcing";
  }
  return "?";
}

ChungResult chung_simulate(const ChungParams& p, double tol, double tail_fraction) {
  if (!(p.a > 0)) throw BadParamsError("chung: a must be positive");
  if (!(p.d >= 0)) throw BadParamsError("chung: d must be non-negative");
  if (!(p.s > 0 && p.s <= 1)) throw BadParamsError("chung: s must lie in (0, 1]");
  if (!(p.t > 0)) throw BadParamsError("chung: t must be positive");
  if (p.k0 < 1) throw BadParamsError("chung: k0 must be >= 1");
  if (!(p.u0 >= 0)) throw BadParamsError("chung: u0 must be non-negative");

  ChungResult res;
  res.tol = tol;
  res.first_k = std::max<long>(p.k0, static_cast<long>(std::ceil(std::pow(p.a, 1.0 / p.s))));
  if (p.horizon < res.first_k + 20)
    throw BadParamsError("chung: horizon too short for the starting index");

  const auto len = static_cast<std::size_t>(p.horizon - res.first_k + 1);
  res.u.resize(len);
  res.u[0] = p.u0;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    const double k = static_cast<double>(res.first_k) + static_cast<double>(i);
    const double ks = p.s == 1 ? k : std::pow(k, p.s);
    res.u[i + 1] = (1 - p.a / ks) * res.u[i] + p.d / (ks * std::pow(k, p.t));
  }

  auto k_of = [&](std::size_t i) { return static_cast<double>(res.first_k) + static_cast<double>(i); };
  const std::size_t count = tail_count(len, tail_fraction);
  if (count < 10) throw DegenerateTailError("chung: tail window too short");
  const std::size_t tail = len - count;

  auto window_max = [&](std::size_t from, std::size_t to, auto&& weight) {
    double best = 0;
    for (std::size_t i = from; i < to; ++i) best = std::max(best, weight(k_of(i)) * res.u[i]);
    return best;
  };

  if (p.d == 0) {
    res.branch = ChungBranch::zero_forcing;
    double rise = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) rise = std::max(rise, res.u[i + 1] - res.u[i]);
    res.measured = rise;
    res.bound = 0;
    res.pass = rise <= 0;
    return res;
  }

  if (p.s < 1 || p.a > p.t) {
    res.branch = p.s < 1 ? ChungBranch::fractional_limit : ChungBranch::inverse_power_limit;
    res.bound = p.s < 1 ? p.d / p.a : p.d / (p.a - p.t);
    res.measured = window_max(tail, len, [&](double k) { return std::pow(k, p.t); });
    res.pass = res.measured <= (1 + tol) * res.bound;
    return res;
  }

  // Boundedness: the tail max may not exceed the previous window's max by
  // more than the tolerance.
  const bool critical = p.a == p.t;
  res.branch = critical ? ChungBranch::log_critical : ChungBranch::slow_power;
  auto weight = [&](double k) {
    const double w = std::pow(k, p.a);
    return critical ? w / std::log(std::max(k, 2.0)) : w;
  };
  const double tail_k = k_of(tail);
  const double prev_k = std::max(static_cast<double>(res.first_k), std::floor((1 - tail_fraction) * tail_k));
  const auto prev = static_cast<std::size_t>(prev_k - static_cast<double>(res.first_k));
  res.measured = window_max(tail, len, weight);
  res.bound = window_max(prev, tail, weight);
  res.pass = res.measured <= (1 + tol) * res.bound;
  return res;
}

}  // namespace incro
