#include "incro/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "incro/format.hpp"

namespace incro {
namespace {

std::vector<double> parse_row(const std::string& line, std::size_t lineno) {
  std::vector<double> row;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    auto v = parse_double(tok);
    if (!v)
      throw BadParamsError("instance line " + std::to_string(lineno) +
                           ": bad number '" + tok + "'");
    row.push_back(*v);
  }
  return row;
}

}  // namespace

void write_instance(std::ostream& out, const Problem& problem) {
  const auto n = problem.dimension();
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto& f = problem.quadratic(i);
    out << "component " << (i + 1) << '\n';
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c)
        out << (c ? " " : "") << digits17(f.P()(r, c));
      out << '\n';
    }
    for (Eigen::Index r = 0; r < n; ++r) out << (r ? " " : "") << digits17(f.q()(r));
    out << '\n' << digits17(f.r()) << '\n';
  }
}

Problem read_instance(std::istream& in) {
  std::vector<std::string> lines;
  std::vector<std::size_t> numbers;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    lines.push_back(line);
    numbers.push_back(lineno);
  }

  std::vector<QuadraticComponent<double>> parts;
  std::size_t pos = 0;
  Eigen::Index n = -1;
  while (pos < lines.size()) {
    const std::string expected = "component " + std::to_string(parts.size() + 1);
    if (std::string(trim(lines[pos])) != expected)
      throw BadParamsError("instance line " + std::to_string(numbers[pos]) +
                           ": expected '" + expected + "'");
    ++pos;
    if (pos >= lines.size()) throw BadParamsError("instance: truncated component");
    auto first = parse_row(lines[pos], numbers[pos]);
    if (n < 0) n = static_cast<Eigen::Index>(first.size());
    if (n == 0 || static_cast<Eigen::Index>(first.size()) != n)
      throw DimensionMismatchError("instance line " + std::to_string(numbers[pos]) +
                                   ": row length differs from dimension");
    if (pos + static_cast<std::size_t>(n) + 2 > lines.size())
      throw BadParamsError("instance: truncated component");

    Eigen::MatrixXd P(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      auto row = r == 0 ? first : parse_row(lines[pos + r], numbers[pos + r]);
      if (static_cast<Eigen::Index>(row.size()) != n)
        throw DimensionMismatchError("instance line " +
                                     std::to_string(numbers[pos + r]) +
                                     ": row length differs from dimension");
      for (Eigen::Index c = 0; c < n; ++c) P(r, c) = row[c];
    }
    pos += static_cast<std::size_t>(n);
    auto qrow = parse_row(lines[pos], numbers[pos]);
    if (static_cast<Eigen::Index>(qrow.size()) != n)
      throw DimensionMismatchError("instance line " + std::to_string(numbers[pos]) +
                                   ": q has the wrong length");
    ++pos;
    auto rrow = parse_row(lines[pos], numbers[pos]);
    if (rrow.size() != 1)
      throw BadParamsError("instance line " + std::to_string(numbers[pos]) +
                           ": r must be a single number");
    ++pos;
    parts.emplace_back(std::move(P), Eigen::Map<Eigen::VectorXd>(qrow.data(), n),
                       rrow[0]);
  }
  if (parts.empty()) throw BadParamsError("instance: no components");
  return Problem::from_quadratics(std::move(parts));
}

void save_instance(const std::string& path, const Problem& problem) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_instance(out, problem);
}

Problem load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_instance(in);
}

}  // namespace incro
