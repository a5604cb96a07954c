#ifndef INCRO_CLI_CONFIG_HPP
#define INCRO_CLI_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "incro/analysis.hpp"
#include "incro/errors.hpp"
#include "incro/examples.hpp"

namespace incro::cli {

/// Malformed or inconsistent experiment configuration (exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ProblemSpec {
  std::string kind = "lower_pair";  // an example kind, or "file"
  double L = 1.0;
  double c = 1.0;
  int n = 1;
  int m = 2;
  std::uint64_t seed = 0;
  std::string path;

  bool operator==(const ProblemSpec&) const = default;
};

struct StartSpec {
  std::string kind = "ones";  // ones | values | random
  std::vector<double> values;
  std::uint64_t seed = 0;

  bool operator==(const StartSpec&) const = default;
};

struct OrderSpec {
  std::string kind = "identity";  // identity | rotate | explicit
  int shift = 0;
  std::vector<int> values;  // 1-based component numbers

  bool operator==(const OrderSpec&) const = default;
};

struct ExperimentConfig {
  ProblemSpec problem;
  Method method = Method::ig;
  long cycles = 1000;
  double R = 1.0;
  double s = 1.0;
  StartSpec x0;
  OrderSpec order;
  std::string trace_path;
  std::string report_path;
  double tail_fraction = 0.5;
  double tol_ig = 1.1;
  double tol_in = 1.2;
  std::string norm = "euclid";  // euclid | star

  bool operator==(const ExperimentConfig&) const = default;
};

/// Flat `section.key = value` lines; `#` starts a comment. Unknown or
/// repeated keys and out-of-range values throw ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Every key in a fixed order; parsing the result restores the config exactly.
std::string format_config(const ExperimentConfig& config);

/// Range and consistency checks shared by the parser and programmatic callers.
void validate(const ExperimentConfig& config);

Problem build_problem(const ExperimentConfig& config);
Eigen::VectorXd build_start(const ExperimentConfig& config, Eigen::Index n);
/// 0-based processing order for an m-component problem.
std::vector<int> build_order(const ExperimentConfig& config, std::size_t m);
VerdictOptions build_verdict_options(const ExperimentConfig& config);

}  // namespace incro::cli

#endif  // INCRO_CLI_CONFIG_HPP
