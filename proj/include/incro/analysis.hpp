#ifndef INCRO_ANALYSIS_HPP
#define INCRO_ANALYSIS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "incro/problem.hpp"
#include "incro/schedule.hpp"
#include "incro/trace.hpp"

namespace incro {

using Trace = RunTrace<double>;
using Schedule = StepsizeSchedule<double>;

/// Euclidean norm, or the star norm (z' H* z)^{1/2} of a positive definite H*.
struct DistanceNorm {
  enum class Kind { euclid, star };
  Kind kind = Kind::euclid;
  Eigen::MatrixXd H;

  static DistanceNorm euclid() { return {}; }
  static DistanceNorm star(Eigen::MatrixXd H_star) {
    return {Kind::star, std::move(H_star)};
  }
};

/// dist_k = ||x_1^k - x*|| for k = 1..K+1 (the last entry is the final iterate).
std::vector<double> distance_trace(const Trace& trace,
                                   const Eigen::VectorXd& x_star,
                                   const DistanceNorm& norm = DistanceNorm::euclid());

struct PowerLawFit {
  double exponent = 0;     // s-hat = -slope
  double coefficient = 0;  // c-hat = exp(intercept)
  double residual = 0;     // RMS of the log-space residuals
  std::size_t points = 0;
  bool clipped = false;    // some distances were zero and clipped to 1e-300
};

/// Number of points in the final `tail_fraction` of a length-n sequence.
std::size_t tail_count(std::size_t n, double tail_fraction);

/// Least-squares line through (log k, log dist_k) over the tail window,
/// k counted from 1.
PowerLawFit fit_rate_exponent(std::span<const double> dist, double tail_fraction);

/// max over the tail window of k^t dist_k.
double tail_limsup(std::span<const double> dist, double t, double tail_fraction);

/// env_k = max_{j >= k} dist_j.
std::vector<double> upper_envelope(std::span<const double> dist);

/// M~ = L G m with G taken from the trajectory.
double m_tilde_traj(const Problem& problem, const Trace& trace);

/// ---- recursion simulator ------------------------------------------------

/// u_{k+1} = (1 - a/k^s) u_k + d/k^{s+t}, run with equality from k0.
struct ChungParams {
  double a = 1;
  double d = 1;
  double s = 1;
  double t = 1;
  long k0 = 1;
  double u0 = 1;
  long horizon = 1000000;
};

enum class ChungBranch {
  inverse_power_limit,  // s = 1, a > t: limsup k^t u <= d/(a-t)
  log_critical,         // s = 1, a = t: k^a u / log k bounded
  slow_power,           // s = 1, a < t: k^a u bounded
  fractional_limit,     // 0 < s < 1: limsup k^t u <= d/a
  zero_forcing          // d = 0: u decays monotonically
};

struct ChungResult {
  long first_k = 1;        // index of u.front()
  std::vector<double> u;   // u_k for k = first_k .. horizon
  ChungBranch branch{};
  double measured = 0;
  double bound = 0;
  double tol = 0;
  bool pass = false;
};

/// Simulates from max(k0, ceil(a^{1/s})) so that 1 - a/k^s >= 0 throughout.
/// Limit branches compare the tail max with (1 + tol) times the limit; the
/// bounded branches compare the tail max with (1 + tol) times the max over
/// the preceding window of equal length on a log scale.
ChungResult chung_simulate(const ChungParams& params, double tol = 0.05,
                           double tail_fraction = 0.5);

std::string to_string(ChungBranch branch);

/// ---- verdicts -------------------------------------------------------------

struct Verdict {
  enum class Status { pass, fail, skipped };
  enum class Sense { at_most, at_least };  // measured vs tol * bound

  std::string claim;
  double bound = 0;
  double measured = 0;
  double tol = 1;
  Sense sense = Sense::at_most;
  Status status = Status::skipped;
  std::string note;

  static Verdict check(std::string claim, double measured, double bound,
                       double tol, Sense sense, std::string note = {});
  static Verdict skip(std::string claim, std::string why);
};

std::string to_string(Verdict::Status status);

struct VerdictOptions {
  double tail_fraction = 0.5;
  double tol_ig = 1.1;
  double tol_in = 1.2;
  /// Slack on the per-cycle constant-step inequality, covering rounding only.
  double recursion_slack = 1e-9;
  DistanceNorm::Kind norm = DistanceNorm::Kind::euclid;
};

struct RateReport {
  Method method = Method::ig;
  double R = 0;
  double s = 0;
  PowerLawFit fit;
  double t = 0;             // exponent used for tail_limsup (t = s)
  double tail_limsup = 0;   // max over the tail of k^t dist_k
  double tail_fraction = 0.5;
  std::string norm = "euclid";
  double c_strong = 0;
  double L_sum = 0;
  double M = 0;
  double B = 0;
  double M_inf_traj = -1;   // measured; -1 when unavailable
  double M_tilde_traj = -1; // measured; -1 when unavailable
  std::vector<Verdict> verdicts;

  bool passed() const;
  const Verdict* find(const std::string& claim) const;
};

namespace claims {
inline constexpr const char* ig_inverse_k = "ig_inverse_k_limsup";
inline constexpr const char* ig_power = "ig_power_limsup";
inline constexpr const char* ig_slow_exponent = "ig_slow_exponent";
inline constexpr const char* ig_constant_step = "ig_constant_step_recursion";
inline constexpr const char* in_star = "in_star_limsup";
inline constexpr const char* shared_min = "shared_min_exponent";
}  // namespace claims

/// Every rate claim for the run's method and schedule, each marked pass,
/// fail or skipped.
RateReport bound_verdicts(const Problem& problem, const Trace& trace,
                          const Schedule& schedule,
                          const VerdictOptions& options = {});

}  // namespace incro

#endif  // INCRO_ANALYSIS_HPP
