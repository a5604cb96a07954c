#ifndef INCRO_EXAMPLES_HPP
#define INCRO_EXAMPLES_HPP

#include <cstdint>
#include <string>

#include "incro/problem.hpp"

namespace incro {

/// Canned quadratic instances.
enum class ExampleKind { slow_conv, lower_pair, octet, shared_min, random };

struct ExampleSpec {
  ExampleKind kind = ExampleKind::lower_pair;
  double L = 1.0;         // lower_pair curvature; random: target sum of norms
  double c = 1.0;         // random: target strong convexity
  int n = 1;              // shared_min, random
  int m = 1;              // shared_min, random
  std::uint64_t seed = 0; // shared_min, random
};

/// f_i = x^2/20 for i = 1, 2.
Problem make_slow_conv();

/// (L/2)(x-1)^2 and (L/2)(x+1)^2 in dimension one.
Problem make_lower_pair(double L);

/// The eight planar least-squares terms 1/2 (c_i'x + 1)^2 whose cyclic
/// order cancels the first- and second-order error terms.
Problem make_octet();

/// The direction vectors c_1..c_8 of the octet, one per column.
Eigen::Matrix<double, 2, 8> octet_directions();

/// Random convex quadratics that all attain their minimum at the origin.
Problem make_shared_min(int n, int m, std::uint64_t seed);

/// Random convex quadratics whose sum has smallest eigenvalue exactly `c`
/// and whose component spectral norms sum to exactly `L`.
Problem make_random(int n, int m, double c, double L, std::uint64_t seed);

Problem make_example(const ExampleSpec& spec);

std::string to_string(ExampleKind kind);
ExampleKind parse_example_kind(const std::string& name);

}  // namespace incro

#endif  // INCRO_EXAMPLES_HPP
