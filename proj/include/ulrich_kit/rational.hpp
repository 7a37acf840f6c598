#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ulrich_kit/error.hpp"

namespace ulrich_kit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) { return Rational(Integer(num), Integer(den)); }

/// Reduced form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw Error(ErrorKind::Parse, "bad rational '" + std::string(whole) + "'");
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw Error(ErrorKind::Parse, "bad rational '" + std::string(whole) + "'");
  }
  Integer value(std::string(text.substr(pos)));
  return negative ? Integer(-value) : value;
}

}  // namespace detail

inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(text, text));
  const Integer num = detail::parse_integer(text.substr(0, slash), text);
  const Integer den = detail::parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact binomial coefficient C(top, bottom); zero when bottom < 0 or top < bottom.
/// Only called with top >= 0 here, so the usual combinatorial convention applies.
inline std::int64_t binomial(std::int64_t top, std::int64_t bottom) {
  if (bottom < 0 || top < bottom) return 0;
  if (bottom > top - bottom) bottom = top - bottom;
  std::int64_t result = 1;
  for (std::int64_t k = 1; k <= bottom; ++k) result = result * (top - bottom + k) / k;
  return result;
}

inline Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace ulrich_kit
