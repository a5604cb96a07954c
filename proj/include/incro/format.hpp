#ifndef INCRO_FORMAT_HPP
#define INCRO_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace incro {

/// Shortest decimal text that parses back to the same double.
std::string shortest(double v);

/// Decimal text with 17 significant digits.
std::string digits17(double v);

/// Strict parse: the whole view must be one number.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace incro

#endif  // INCRO_FORMAT_HPP
