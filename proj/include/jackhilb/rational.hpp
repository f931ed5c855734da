#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace jackhilb {

/// Exact rational numbers. Always kept in lowest terms with a positive
/// denominator, so equal values compare and print identically.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Canonical text: "p/q" in lowest terms, "n" when q == 1.
inline std::string to_string(const Rational& x) {
  std::string out = boost::multiprecision::numerator(x).str();
  const Integer& den = boost::multiprecision::denominator(x);
  if (den != 1) {
    out += '/';
    out += den.str();
  }
  return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Parses "n", "-n", "p/q" or "-p/q". The result is normalized, so "2/4"
/// and "1/2" parse to the same value. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  const Integer n{std::string(num)};
  const Integer d{std::string(den)};
  if (d == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace jackhilb
