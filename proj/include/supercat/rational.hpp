#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace supercat {

// Arbitrary-precision integers and rationals. Rat is kept in canonical form
// (lowest terms, positive denominator) by the backend on every operation, so
// equality of values is equality of representations.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

namespace detail {

inline Int parse_plain_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = (s[i] == '-');
    ++i;
  }
  if (i == s.size()) {
    raise(ErrorCode::ParseError,
          "missing digits in rational literal '" + std::string(whole) + "'");
  }
  Int value = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      raise(ErrorCode::ParseError, "invalid character '" + std::string(1, s[i]) +
                                       "' in rational literal '" +
                                       std::string(whole) + "'");
    }
    value *= 10;
    value += static_cast<int>(s[i] - '0');
  }
  return negative ? Int(-value) : value;
}

}  // namespace detail

// Parses an exact rational from text. Accepted forms (with optional
// surrounding whitespace):
//   integer:   "7", "-12"
//   fraction:  "10/19", "-3/4"
//   decimal:   "0.36", "-.5", "2.", optionally with exponent "1.5e-3"
// Decimals parse exactly (0.36 -> 9/25); nothing is ever rounded.
inline Rat parse_rational(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  const std::string_view s = text.substr(b, e - b);
  if (s.empty()) raise(ErrorCode::ParseError, "empty rational literal");

  if (const std::size_t slash = s.find('/'); slash != std::string_view::npos) {
    if (s.find('/', slash + 1) != std::string_view::npos ||
        s.find('.') != std::string_view::npos ||
        s.find_first_of("eE") != std::string_view::npos) {
      raise(ErrorCode::ParseError,
            "malformed fraction literal '" + std::string(s) + "'");
    }
    const Int num = detail::parse_plain_integer(s.substr(0, slash), s);
    const Int den = detail::parse_plain_integer(s.substr(slash + 1), s);
    if (den == 0) {
      raise(ErrorCode::ParseError,
            "zero denominator in '" + std::string(s) + "'");
    }
    return Rat(num, den);
  }

  // Decimal / integer with optional exponent.
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = (s[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.') {
      if (seen_point) {
        raise(ErrorCode::ParseError,
              "repeated decimal point in '" + std::string(s) + "'");
      }
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      raise(ErrorCode::ParseError, "invalid character '" + std::string(1, c) +
                                       "' in rational literal '" +
                                       std::string(s) + "'");
    }
  }
  if (!seen_digit) {
    raise(ErrorCode::ParseError, "no digits in rational literal '" +
                                     std::string(s) + "'");
  }
  long exponent = 0;
  if (i < s.size()) {  // at 'e' / 'E'
    const std::string_view exp_part = s.substr(i + 1);
    const Int exp_value = detail::parse_plain_integer(exp_part, s);
    if (exp_value > 100000 || exp_value < -100000) {
      raise(ErrorCode::ParseError,
            "exponent out of range in '" + std::string(s) + "'");
    }
    exponent = exp_value.convert_to<long>();
  }

  Int mantissa = 0;
  for (const char c : digits) {
    mantissa *= 10;
    mantissa += static_cast<int>(c - '0');
  }
  if (negative) mantissa = -mantissa;

  const long scale = frac_digits - exponent;  // value = mantissa / 10^scale
  using boost::multiprecision::pow;
  if (scale > 0) {
    return Rat(mantissa, pow(Int(10), static_cast<unsigned>(scale)));
  }
  if (scale < 0) {
    return Rat(mantissa * pow(Int(10), static_cast<unsigned>(-scale)));
  }
  return Rat(mantissa);
}

// Canonical fraction rendering: "n/d", or just "n" for integers.
inline std::string to_fraction_string(const Rat& q) { return q.str(); }

// True iff q has a terminating decimal expansion (denominator 2^a * 5^b).
inline bool has_finite_decimal(const Rat& q) {
  Int d = denominator(q);
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

namespace detail {

inline std::string format_scaled_decimal(const Int& scaled, unsigned digits,
                                         bool strip_trailing_zeros) {
  const bool negative = scaled < 0;
  std::string body = Int(boost::multiprecision::abs(scaled)).str();
  if (body.size() <= digits) {
    body.insert(0, digits + 1 - body.size(), '0');
  }
  std::string result = body.substr(0, body.size() - digits);
  if (digits > 0) {
    std::string frac = body.substr(body.size() - digits);
    if (strip_trailing_zeros) {
      const std::size_t last = frac.find_last_not_of('0');
      frac.erase(last == std::string::npos ? 0 : last + 1);
    }
    if (!frac.empty()) result += "." + frac;
  }
  if (negative && result.find_first_not_of("0.") != std::string::npos) {
    result.insert(0, 1, '-');
  }
  return result;
}

}  // namespace detail

// Exact decimal rendering; raises unless has_finite_decimal(q).
inline std::string to_decimal_string_exact(const Rat& q) {
  Int d = denominator(q);
  unsigned twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) {
    raise(ErrorCode::ParseError, "rational " + q.str() +
                                     " has no terminating decimal expansion");
  }
  const unsigned digits = twos > fives ? twos : fives;
  using boost::multiprecision::pow;
  const Int scaled = numerator(q) * pow(Int(10), digits) / denominator(q);
  return detail::format_scaled_decimal(scaled, digits, /*strip=*/true);
}

// Approximate decimal rendering with exactly `digits` fractional digits,
// correctly rounded (ties to even).
inline std::string to_decimal_string(const Rat& q, unsigned digits) {
  using boost::multiprecision::pow;
  const Int pow10 = pow(Int(10), digits);
  const Int num = numerator(q) * pow10;
  const Int den = denominator(q);
  Int quot, rem;
  boost::multiprecision::divide_qr(abs(num), den, quot, rem);
  const Int twice = rem * 2;
  if (twice > den || (twice == den && quot % 2 != 0)) ++quot;
  if (num < 0) quot = -quot;
  return detail::format_scaled_decimal(quot, digits, /*strip=*/false);
}

}  // namespace supercat
