#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace keyjudge {

/// Exact scores, thresholds and rates. Comparisons never go through floating point.
/// Compare against Rational(n), not a bare integer: boost 1.74's mixed-type
/// operator== recurses under C++20's reversed-operator rules.
using Rational = boost::rational<std::int64_t>;

/// Parses "m/k", an integer, or a plain decimal such as "0.25" into an exact value.
std::optional<Rational> parse_rational(std::string_view text);

/// "m/k" in lowest terms ("1" stays "1/1").
std::string format_fraction(const Rational& value);

/// Fixed-point rendering, rounding half away from zero.
std::string format_fixed(const Rational& value, int decimals);

double to_double(const Rational& value);

}  // namespace keyjudge
