#ifndef INCRO_INSTANCE_IO_HPP
#define INCRO_INSTANCE_IO_HPP

#include <iosfwd>
#include <string>

#include "incro/problem.hpp"

namespace incro {

/// Plain-text instance format. Each component i (1-based) is written as
///
///   component i
///   <n lines of n entries of P_i>
///   <one line of q_i>
///   <one line of r_i>
///
/// with 17 significant digits, so reading restores every entry bit-exactly.
void write_instance(std::ostream& out, const Problem& problem);
Problem read_instance(std::istream& in);

void save_instance(const std::string& path, const Problem& problem);
Problem load_instance(const std::string& path);

}  // namespace incro

#endif  // INCRO_INSTANCE_IO_HPP
