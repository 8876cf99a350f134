#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "galstat/exact/exact_complex.hpp"

namespace galstat {

/// Parses "re+imi" style literals with rational or decimal parts:
/// "3", "-1/2", "i", "-i", "2/3i", "1+i", "1/2-3/4i", "0.5+0.25i".
inline std::pair<Rational, Rational> parse_complex_literal(std::string_view text) {
  auto fail = [&] { return InputError("not a complex literal: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (text.back() != 'i') return {parse_rational(text), Rational(0)};
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    std::string_view digits = im_text[0] == '+' ? im_text.substr(1) : im_text;
    try {
      im = parse_rational(digits);
    } catch (const InputError&) {
      throw fail();
    }
  }
  Rational re = 0;
  if (!re_text.empty()) {
    try {
      re = parse_rational(re_text);
    } catch (const InputError&) {
      throw fail();
    }
  }
  return {re, im};
}

/// Product of '*'-separated factors, each a complex literal, "sqrt(q)", or
/// "exp(i*pi*q)"; e.g. "3/5*exp(i*pi*1/3)" or "sqrt(1/2)".
inline ExactComplex parse_exact_complex(std::string_view text) {
  ExactComplex value = 1;
  std::size_t pos = 0;
  auto fail = [&] { return InputError("not an exact complex value: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  while (pos <= text.size()) {
    std::string_view rest = text.substr(pos);
    std::size_t len = 0;
    if (rest.starts_with("sqrt(")) {
      len = rest.find(')');
      if (len == std::string_view::npos) throw fail();
      value *= ExactComplex::sqrt(parse_rational(rest.substr(5, len - 5)));
      ++len;
    } else if (rest.starts_with("exp(i*pi*")) {
      len = rest.find(')');
      if (len == std::string_view::npos) throw fail();
      value *= ExactComplex::exp_i_pi(parse_rational(rest.substr(9, len - 9)));
      ++len;
    } else {
      len = rest.find('*');
      if (len == std::string_view::npos) len = rest.size();
      auto [re, im] = parse_complex_literal(rest.substr(0, len));
      value *= ExactComplex::gaussian(re, im);
    }
    pos += len;
    if (pos == text.size()) break;
    if (text[pos] != '*') throw fail();
    ++pos;
  }
  return value;
}

}  // namespace galstat
