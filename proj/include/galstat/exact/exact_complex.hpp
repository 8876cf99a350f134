#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "galstat/exact/cyclotomic.hpp"

namespace galstat {

/// Built-in phase symbols. A phase e^{i q s} with symbol s is kept formal;
/// exponentials of distinct rational forms are treated as linearly
/// independent over the cyclotomic numbers.
namespace phase_symbol {
inline constexpr std::string_view kPiSquared = "pi^2";  // value pi*pi
inline constexpr std::string_view kRadian = "rad";      // value 1

inline double value(std::string_view name) {
  if (name == kPiSquared) return std::numbers::pi * std::numbers::pi;
  if (name == kRadian) return 1.0;
  throw InputError("unknown phase symbol '" + std::string(name) + "'");
}
}  // namespace phase_symbol

/// Rational-linear form sum_s q_s * s over phase symbols; sorted, no zero entries.
class PhaseForm {
 public:
  PhaseForm() = default;
  PhaseForm(std::string_view symbol, const Rational& coefficient) {
    if (coefficient != 0) entries_.emplace_back(std::string(symbol), coefficient);
  }

  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<std::string, Rational>>& entries() const { return entries_; }

  friend PhaseForm operator+(const PhaseForm& a, const PhaseForm& b) {
    PhaseForm out;
    auto i = a.entries_.begin();
    auto j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
      if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
        out.entries_.push_back(*i++);
      } else if (i == a.entries_.end() || j->first < i->first) {
        out.entries_.push_back(*j++);
      } else {
        Rational sum = i->second + j->second;
        if (sum != 0) out.entries_.emplace_back(i->first, sum);
        ++i;
        ++j;
      }
    }
    return out;
  }

  PhaseForm operator-() const {
    PhaseForm out = *this;
    for (auto& e : out.entries_) e.second = -e.second;
    return out;
  }

  double value() const {
    double total = 0.0;
    for (const auto& [name, q] : entries_) total += to_double(q) * phase_symbol::value(name);
    return total;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      os << (k ? "+" : "") << "(" << entries_[k].second.str() << ")" << entries_[k].first;
    }
    return os.str();
  }

  friend auto operator<=>(const PhaseForm&, const PhaseForm&) = default;
  friend bool operator==(const PhaseForm&, const PhaseForm&) = default;

 private:
  std::vector<std::pair<std::string, Rational>> entries_;
};

/// Exact complex number: sum over phase forms f of c_f * e^{i f}, with each
/// c_f in a cyclotomic field. Zero is the empty sum.
class ExactComplex {
 public:
  using Term = std::pair<PhaseForm, Cyclotomic>;

  ExactComplex() = default;
  ExactComplex(const Cyclotomic& c) { push_if_nonzero(PhaseForm{}, c); }  // NOLINT(implicit)
  ExactComplex(const Rational& q) : ExactComplex(Cyclotomic(q)) {}        // NOLINT(implicit)
  ExactComplex(long long q) : ExactComplex(Cyclotomic(q)) {}              // NOLINT(implicit)
  ExactComplex(int q) : ExactComplex(Cyclotomic(static_cast<long long>(q))) {}  // NOLINT(implicit)

  static ExactComplex gaussian(const Rational& re, const Rational& im) {
    return Cyclotomic::gaussian(re, im);
  }
  static ExactComplex i() { return Cyclotomic::imaginary_unit(); }
  static ExactComplex exp_i_pi(const Rational& q) { return Cyclotomic::exp_i_pi(q); }
  static ExactComplex sqrt(const Rational& q) { return Cyclotomic::sqrt(q); }

  /// e^{i f} for a formal phase form f.
  static ExactComplex phase(const PhaseForm& form) {
    ExactComplex out;
    out.terms_.emplace_back(form, Cyclotomic(1));
    return out;
  }
  static ExactComplex exp_i(std::string_view symbol, const Rational& coefficient) {
    return phase(PhaseForm(symbol, coefficient));
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Value when no formal phase survives and the cyclotomic part is rational.
  std::optional<Rational> as_rational() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() != 1 || !terms_[0].first.empty()) return std::nullopt;
    return terms_[0].second.as_rational();
  }

  ExactComplex conj() const {
    ExactComplex out;
    for (const auto& [form, c] : terms_) out.terms_.emplace_back(-form, c.conj());
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    return out;
  }

  /// |z|^2 = z * conj(z)
  ExactComplex norm() const { return *this * conj(); }

  std::complex<double> to_complex() const {
    std::complex<double> total = 0.0;
    for (const auto& [form, c] : terms_) total += c.to_complex() * std::polar(1.0, form.value());
    return total;
  }

  ExactComplex operator-() const {
    ExactComplex out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    ExactComplex out;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        out.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        out.terms_.push_back(*j++);
      } else {
        out.push_if_nonzero(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return a + (-b); }

  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      ExactComplex out;
      out.push_if_nonzero(a.terms_[0].first + b.terms_[0].first,
                          a.terms_[0].second * b.terms_[0].second);
      return out;
    }
    std::map<PhaseForm, Cyclotomic> acc;
    for (const auto& [fa, ca] : a.terms_) {
      for (const auto& [fb, cb] : b.terms_) {
        auto [it, inserted] = acc.try_emplace(fa + fb, Cyclotomic(0));
        it->second += ca * cb;
      }
    }
    ExactComplex out;
    for (auto& [form, c] : acc) out.push_if_nonzero(form, c);
    return out;
  }

  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex& operator-=(const ExactComplex& o) { return *this = *this - o; }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      if (a.terms_[k].first != b.terms_[k].first) return false;
      if (!(a.terms_[k].second == b.terms_[k].second)) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k) os << " + ";
      os << terms_[k].second.to_string();
      if (!terms_[k].first.empty()) os << "*exp(i*(" << terms_[k].first.to_string() << "))";
    }
    return os.str();
  }

 private:
  void push_if_nonzero(const PhaseForm& form, const Cyclotomic& c) {
    if (!c.is_zero()) terms_.emplace_back(form, c);
  }

  std::vector<Term> terms_;  // sorted by form
};

}  // namespace galstat
