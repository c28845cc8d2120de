#include "keyjudge/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

namespace keyjudge {

namespace {

__extension__ using wide_int = __int128;

std::optional<std::int64_t> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool all_digits(std::string_view text) {
  for (char c : text)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!all_digits(whole) || !all_digits(frac) || frac.size() > 15) return std::nullopt;

  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::int64_t w = whole.empty() ? 0 : parse_int(whole).value_or(-1);
  std::int64_t f = frac.empty() ? 0 : parse_int(frac).value_or(-1);
  if (w < 0 || f < 0) return std::nullopt;
  if (w > (std::numeric_limits<std::int64_t>::max() - f) / scale) return std::nullopt;

  Rational value(w * scale + f, scale);
  return negative ? -value : value;
}

std::string format_fraction(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string format_fixed(const Rational& value, int decimals) {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;

  const bool negative = value < 0;
  const std::int64_t num = std::abs(value.numerator());
  const std::int64_t den = value.denominator();

  // round(num * scale / den), half away from zero, without overflowing on num * scale
  const std::int64_t whole = num / den;
  const std::int64_t rem = num % den;
  const wide_int scaled_rem = static_cast<wide_int>(rem) * scale;
  std::int64_t frac = static_cast<std::int64_t>(scaled_rem / den);
  if ((scaled_rem % den) * 2 >= den) ++frac;
  std::int64_t int_part = whole;
  if (frac >= scale) {
    int_part += 1;
    frac -= scale;
  }

  std::string out;
  if (negative && (int_part != 0 || frac != 0)) out += '-';
  out += std::to_string(int_part);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += '.';
    out.append(static_cast<std::size_t>(decimals) - digits.size(), '0');
    out += digits;
  }
  return out;
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

}  // namespace keyjudge
