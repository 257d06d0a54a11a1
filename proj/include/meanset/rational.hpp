#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "meanset/error.hpp"

namespace meanset {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Always "p/q" with q >= 1, so integers print as "3/1".
inline std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::invalid_input, "zero denominator");
  return Rational(num, den);
}

inline Integer integer_power(std::size_t base, int exponent) {
  Integer result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses a nonnegative exact number: "12", "0.25" or "3/8".
/// Anything a float parser would accept beyond that (exponents, "inf") is rejected.
inline Rational parse_exact_number(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw Error(ErrorCode::invalid_input, "not an exact fraction: '" + std::string(text) + "'");
    }
    return make_rational(Integer(std::string(num)), Integer(std::string(den)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!detail::all_digits(whole) || !detail::all_digits(frac)) {
      throw Error(ErrorCode::invalid_input, "not an exact decimal: '" + std::string(text) + "'");
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer num = Integer(std::string(whole)) * scale + Integer(std::string(frac));
    return make_rational(num, scale);
  }
  if (!detail::all_digits(text)) {
    throw Error(ErrorCode::invalid_input, "not an exact number: '" + std::string(text) + "'");
  }
  return Rational(Integer(std::string(text)));
}

}  // namespace meanset
