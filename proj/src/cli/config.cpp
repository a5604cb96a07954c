#include "incro/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "incro/format.hpp"
#include "incro/instance_io.hpp"

namespace incro::cli {

namespace {

double to_double(const std::string& key, std::string_view text) {
  const auto v = parse_double(text);
  if (!v || !std::isfinite(*v))
    throw ConfigError(key + ": expected a finite number, got '" + std::string(text) + "'");
  return *v;
}

long long to_integer(const std::string& key, std::string_view text) {
  const auto v = parse_integer(text);
  if (!v) throw ConfigError(key + ": expected an integer, got '" + std::string(text) + "'");
  return *v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"problem.kind", [](auto& c, auto&, auto v) { c.problem.kind = std::string(v); }},
      {"problem.L", [](auto& c, auto& k, auto v) { c.problem.L = to_double(k, v); }},
      {"problem.c", [](auto& c, auto& k, auto v) { c.problem.c = to_double(k, v); }},
      {"problem.n", [](auto& c, auto& k, auto v) { c.problem.n = static_cast<int>(to_integer(k, v)); }},
      {"problem.m", [](auto& c, auto& k, auto v) { c.problem.m = static_cast<int>(to_integer(k, v)); }},
      {"problem.seed",
       [](auto& c, auto& k, auto v) {
         const auto s = to_integer(k, v);
         if (s < 0) throw ConfigError("problem.seed must be non-negative");
         c.problem.seed = static_cast<std::uint64_t>(s);
       }},
      {"problem.path", [](auto& c, auto&, auto v) { c.problem.path = std::string(v); }},
      {"solver.method",
       [](auto& c, auto& k, auto v) {
         if (v == "ig") c.method = Method::ig;
         else if (v == "in") c.method = Method::in;
         else throw ConfigError(k + ": expected ig or in");
       }},
      {"solver.cycles", [](auto& c, auto& k, auto v) { c.cycles = static_cast<long>(to_integer(k, v)); }},
      {"schedule.R", [](auto& c, auto& k, auto v) { c.R = to_double(k, v); }},
      {"schedule.s", [](auto& c, auto& k, auto v) { c.s = to_double(k, v); }},
      {"x0.kind", [](auto& c, auto&, auto v) { c.x0.kind = std::string(v); }},
      {"x0.values",
       [](auto& c, auto& k, auto v) {
         c.x0.values.clear();
         for (auto item : split_list(v)) c.x0.values.push_back(to_double(k, item));
       }},
      {"x0.seed",
       [](auto& c, auto& k, auto v) {
         const auto s = to_integer(k, v);
         if (s < 0) throw ConfigError("x0.seed must be non-negative");
         c.x0.seed = static_cast<std::uint64_t>(s);
       }},
      {"order.kind", [](auto& c, auto&, auto v) { c.order.kind = std::string(v); }},
      {"order.shift", [](auto& c, auto& k, auto v) { c.order.shift = static_cast<int>(to_integer(k, v)); }},
      {"order.values",
       [](auto& c, auto& k, auto v) {
         c.order.values.clear();
         for (auto item : split_list(v)) c.order.values.push_back(static_cast<int>(to_integer(k, item)));
       }},
      {"output.trace", [](auto& c, auto&, auto v) { c.trace_path = std::string(v); }},
      {"output.report", [](auto& c, auto&, auto v) { c.report_path = std::string(v); }},
      {"analysis.tail_fraction", [](auto& c, auto& k, auto v) { c.tail_fraction = to_double(k, v); }},
      {"analysis.tol_ig", [](auto& c, auto& k, auto v) { c.tol_ig = to_double(k, v); }},
      {"analysis.tol_in", [](auto& c, auto& k, auto v) { c.tol_in = to_double(k, v); }},
      {"analysis.norm", [](auto& c, auto&, auto v) { c.norm = std::string(v); }},
  };
  return table;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    if constexpr (std::is_floating_point_v<T>) out += shortest(values[i]);
    else out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  const auto& p = c.problem;
  if (p.kind == "file") {
    if (p.path.empty()) throw ConfigError("problem.path is required when problem.kind = file");
  } else {
    try {
      parse_example_kind(p.kind);
    } catch (const Error&) {
      throw ConfigError("problem.kind: unknown kind '" + p.kind + "'");
    }
  }
  if (!(p.L > 0)) throw ConfigError("problem.L must be positive");
  if (!(p.c > 0)) throw ConfigError("problem.c must be positive");
  if (p.n < 1) throw ConfigError("problem.n must be >= 1");
  if (p.m < 1) throw ConfigError("problem.m must be >= 1");
  if (c.cycles < 1) throw ConfigError("cycles must be ≥ 1");
  if (!(c.R > 0)) throw ConfigError("schedule.R must be positive");
  if (!(c.s >= 0 && c.s <= 1)) throw ConfigError("schedule.s must lie in [0, 1]");
  if (c.x0.kind != "ones" && c.x0.kind != "values" && c.x0.kind != "random")
    throw ConfigError("x0.kind: expected ones, values or random");
  if (c.x0.kind == "values" && c.x0.values.empty())
    throw ConfigError("x0.values is required when x0.kind = values");
  if (c.order.kind != "identity" && c.order.kind != "rotate" && c.order.kind != "explicit")
    throw ConfigError("order.kind: expected identity, rotate or explicit");
  if (c.order.shift < 0) throw ConfigError("order.shift must be non-negative");
  if (c.order.kind == "explicit" && c.order.values.empty())
    throw ConfigError("order.values is required when order.kind = explicit");
  if (!(c.tail_fraction > 0 && c.tail_fraction < 1))
    throw ConfigError("analysis.tail_fraction must lie in (0, 1)");
  if (!(c.tol_ig > 0)) throw ConfigError("analysis.tol_ig must be positive");
  if (!(c.tol_in > 0)) throw ConfigError("analysis.tol_in must be positive");
  if (c.norm != "euclid" && c.norm != "star")
    throw ConfigError("analysis.norm: expected euclid or star");
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    const std::string key(trim(view.substr(0, eq)));
    const auto value = trim(view.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(number) + ": repeated key '" + key + "'");
    it->second(config, key, value);
  }
  validate(config);
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) {
    if (!value.empty()) out << key << " = " << value << '\n';
  };
  line("problem.kind", c.problem.kind);
  line("problem.L", shortest(c.problem.L));
  line("problem.c", shortest(c.problem.c));
  line("problem.n", std::to_string(c.problem.n));
  line("problem.m", std::to_string(c.problem.m));
  line("problem.seed", std::to_string(c.problem.seed));
  line("problem.path", c.problem.path);
  line("solver.method", c.method == Method::ig ? "ig" : "in");
  line("solver.cycles", std::to_string(c.cycles));
  line("schedule.R", shortest(c.R));
  line("schedule.s", shortest(c.s));
  line("x0.kind", c.x0.kind);
  line("x0.values", join(c.x0.values));
  line("x0.seed", std::to_string(c.x0.seed));
  line("order.kind", c.order.kind);
  line("order.shift", std::to_string(c.order.shift));
  line("order.values", join(c.order.values));
  line("output.trace", c.trace_path);
  line("output.report", c.report_path);
  line("analysis.tail_fraction", shortest(c.tail_fraction));
  line("analysis.tol_ig", shortest(c.tol_ig));
  line("analysis.tol_in", shortest(c.tol_in));
  line("analysis.norm", c.norm);
  return out.str();
}

Problem build_problem(const ExperimentConfig& c) {
  if (c.problem.kind == "file") return load_instance(c.problem.path);
  ExampleSpec spec;
  spec.kind = parse_example_kind(c.problem.kind);
  spec.L = c.problem.L;
  spec.c = c.problem.c;
  spec.n = c.problem.n;
  spec.m = c.problem.m;
  spec.seed = c.problem.seed;
  return make_example(spec);
}

Eigen::VectorXd build_start(const ExperimentConfig& c, Eigen::Index n) {
  if (c.x0.kind == "ones") return Eigen::VectorXd::Ones(n);
  if (c.x0.kind == "values") {
    if (static_cast<Eigen::Index>(c.x0.values.size()) != n)
      throw ConfigError("x0.values has " + std::to_string(c.x0.values.size()) +
                        " entries; the problem dimension is " + std::to_string(n));
    return Eigen::Map<const Eigen::VectorXd>(c.x0.values.data(), n);
  }
  std::mt19937_64 rng(c.x0.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
  return x;
}

std::vector<int> build_order(const ExperimentConfig& c, std::size_t m) {
  if (c.order.kind == "identity") return identity_order(m);
  if (c.order.kind == "rotate") return rotated_order(m, static_cast<std::size_t>(c.order.shift));
  std::vector<int> order;
  for (int v : c.order.values) order.push_back(v - 1);
  if (!is_permutation_of_range(order, m))
    throw ConfigError("order.values is not a permutation of 1.." + std::to_string(m));
  return order;
}

VerdictOptions build_verdict_options(const ExperimentConfig& c) {
  VerdictOptions opt;
  opt.tail_fraction = c.tail_fraction;
  opt.tol_ig = c.tol_ig;
  opt.tol_in = c.tol_in;
  opt.norm = c.norm == "star" ? DistanceNorm::Kind::star : DistanceNorm::Kind::euclid;
  return opt;
}

}  // namespace incro::cli
