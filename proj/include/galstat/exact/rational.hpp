#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "galstat/errors.hpp"

namespace galstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p", "p/q", or a finite decimal such as "-0.125" into an exact
/// rational.  Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return InputError("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    return end;
  };
  std::size_t int_end = digits(pos);
  if (int_end == pos) throw fail();
  BigInt numerator(std::string(text.substr(pos, int_end - pos)));
  BigInt denominator = 1;
  pos = int_end;
  if (pos < text.size() && text[pos] == '.') {
    std::size_t frac_end = digits(pos + 1);
    if (frac_end == pos + 1) throw fail();
    for (std::size_t i = pos + 1; i < frac_end; ++i) {
      numerator = numerator * 10 + (text[i] - '0');
      denominator *= 10;
    }
    pos = frac_end;
  } else if (pos < text.size() && text[pos] == '/') {
    std::size_t den_end = digits(pos + 1);
    if (den_end == pos + 1) throw fail();
    denominator = BigInt(std::string(text.substr(pos + 1, den_end - pos - 1)));
    if (denominator == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    pos = den_end;
  }
  if (pos != text.size()) throw fail();
  Rational q(numerator, denominator);
  return negative ? Rational(-q) : q;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace galstat
