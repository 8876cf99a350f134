#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galstat/errors.hpp"
#include "galstat/exact/rational.hpp"

namespace galstat {

namespace detail {

using IntPoly = std::vector<long long>;  // coefficient i multiplies x^i

/// Reduction data for Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi-1).
struct CyclotomicLevel {
  int order = 1;
  int degree = 1;
  /// power[k] = x^k mod Phi_n for k in [0, n), stored sparsely.
  std::vector<std::vector<std::pair<int, long long>>> power;
};

inline constexpr int kMaxCyclotomicOrder = 4096;

inline IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  IntPoly quotient(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long long lead = num[i];
    quotient[i - dn] = lead;
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= lead * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j) {
    if (num[j] != 0) throw ConsistencyFailure("cyclotomic polynomial division left a remainder");
  }
  return quotient;
}

inline const IntPoly& cyclotomic_polynomial(int n);

inline IntPoly compute_cyclotomic_polynomial(int n) {
  IntPoly poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  return poly;
}

inline std::mutex& cyclotomic_cache_mutex() {
  static std::mutex m;
  return m;
}

inline const IntPoly& cyclotomic_polynomial(int n) {
  static std::map<int, std::unique_ptr<IntPoly>> cache;
  {
    std::lock_guard lock(cyclotomic_cache_mutex());
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  // Computed outside the lock: recursion re-enters for the divisors of n.
  auto poly = std::make_unique<IntPoly>(compute_cyclotomic_polynomial(n));
  std::lock_guard lock(cyclotomic_cache_mutex());
  auto [it, inserted] = cache.emplace(n, std::move(poly));
  return *it->second;
}

inline const CyclotomicLevel& cyclotomic_level(int n) {
  if (n < 1 || n > kMaxCyclotomicOrder) {
    throw UnsupportedCase("cyclotomic order " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxCyclotomicOrder) + "]");
  }
  thread_local const CyclotomicLevel* last = nullptr;
  if (last != nullptr && last->order == n) return *last;

  static std::map<int, std::unique_ptr<CyclotomicLevel>> cache;
  static std::mutex level_mutex;
  {
    std::lock_guard lock(level_mutex);
    if (auto it = cache.find(n); it != cache.end()) return *(last = it->second.get());
  }
  const IntPoly& phi_poly = cyclotomic_polynomial(n);
  auto level = std::make_unique<CyclotomicLevel>();
  level->order = n;
  level->degree = static_cast<int>(phi_poly.size()) - 1;
  const int deg = level->degree;
  IntPoly current(static_cast<std::size_t>(deg), 0);
  current[0] = 1;
  level->power.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& row = level->power[static_cast<std::size_t>(k)];
    for (int t = 0; t < deg; ++t) {
      if (current[t] != 0) row.emplace_back(t, current[t]);
    }
    // multiply by x and reduce the overflow coefficient with the monic Phi_n
    long long carry = current[deg - 1];
    for (int t = deg - 1; t > 0; --t) current[t] = current[t - 1];
    current[0] = 0;
    if (carry != 0) {
      for (int t = 0; t < deg; ++t) current[t] -= carry * phi_poly[t];
    }
  }
  std::lock_guard lock(level_mutex);
  auto [it, inserted] = cache.emplace(n, std::move(level));
  return *(last = it->second.get());
}

inline long long modpow(long long base, long long exp, long long mod) {
  long long result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<long long>((__int128)result * base % mod);
    base = static_cast<long long>((__int128)base * base % mod);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Exact element of the cyclotomic field Q(zeta_n), zeta_n = e^{2 pi i / n},
/// stored in the power basis. Elements of different orders combine in the
/// field of the least common multiple.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1) {}
  Cyclotomic(const Rational& q) : order_(1), coeffs_{q} {}  // NOLINT(implicit)
  Cyclotomic(long long q) : order_(1), coeffs_{Rational(q)} {}  // NOLINT(implicit)

  static Cyclotomic root_of_unity(int n, long long k) {
    if (n < 1) throw InputError("root of unity order must be positive");
    long long r = ((k % n) + n) % n;
    int g = std::gcd(static_cast<int>(r), n);
    if (r == 0) return Cyclotomic(1);
    int order = n / g;
    int power = static_cast<int>(r / g);
    const auto& level = detail::cyclotomic_level(order);
    Cyclotomic out(order, level.degree);
    for (auto [t, c] : level.power[static_cast<std::size_t>(power)]) out.coeffs_[t] = c;
    return std::move(out).normalized();
  }

  /// e^{i pi q}
  static Cyclotomic exp_i_pi(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt order = 2 * den;
    if (order > detail::kMaxCyclotomicOrder) {
      throw UnsupportedCase("phase e^{i pi " + q.str() + "} needs a root of unity of order " +
                            order.str());
    }
    BigInt k = num % order;
    return root_of_unity(order.convert_to<int>(), k.convert_to<long long>());
  }

  static Cyclotomic gaussian(const Rational& re, const Rational& im) {
    return Cyclotomic(re) + Cyclotomic(im) * imaginary_unit();
  }

  static Cyclotomic imaginary_unit() { return root_of_unity(4, 1); }

  /// Principal square root of a rational: i*sqrt(|q|) for q < 0.
  static Cyclotomic sqrt(const Rational& q) {
    if (q == 0) return Cyclotomic(0);
    BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(q));
    BigInt den = boost::multiprecision::denominator(q);
    // sqrt(n/d) = sqrt(n*d)/d
    BigInt radicand_big = num * den;
    if (radicand_big > BigInt(1000000000000LL)) {
      throw UnsupportedCase("square root radicand too large: " + radicand_big.str());
    }
    long long radicand = radicand_big.convert_to<long long>();
    long long outside = 1;
    long long squarefree = 1;
    for (long long p = 2; p * p <= radicand; ++p) {
      int mult = 0;
      while (radicand % p == 0) {
        radicand /= p;
        ++mult;
      }
      for (int j = 0; j < mult / 2; ++j) outside *= p;
      if (mult % 2 == 1) squarefree *= p;
    }
    squarefree *= radicand;
    Cyclotomic root(Rational(BigInt(outside), den));
    long long rest = squarefree;
    for (long long p = 2; rest > 1; ++p) {
      if (rest % p != 0) continue;
      rest /= p;
      root *= sqrt_prime(p);
    }
    if (q < 0) root *= imaginary_unit();
    return root;
  }

  int order() const { return order_; }
  std::span<const Rational> coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return std::nullopt;
    }
    return coeffs_[0];
  }

  Cyclotomic conj() const {
    const auto& level = detail::cyclotomic_level(order_);
    Cyclotomic out(order_, level.degree);
    for (int j = 0; j < level.degree; ++j) {
      if (coeffs_[j] == 0) continue;
      int p = (order_ - j) % order_;
      for (auto [t, c] : level.power[static_cast<std::size_t>(p)]) out.coeffs_[t] += coeffs_[j] * c;
    }
    return std::move(out).normalized();
  }

  std::complex<double> to_complex() const {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / order_;
      sum += to_double(coeffs_[j]) * std::polar(1.0, angle);
    }
    return sum;
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& other) { return *this = *this + other; }
  Cyclotomic& operator-=(const Cyclotomic& other) { return *this = *this - other; }
  Cyclotomic& operator*=(const Cyclotomic& other) { return *this = *this * other; }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) {
      Cyclotomic out = a;
      for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
      return std::move(out).normalized();
    }
    int order = std::lcm(a.order_, b.order_);
    Cyclotomic out = a.lifted(order);
    out.accumulate_lift(b, 1);
    return std::move(out).normalized();
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == 1) return b.scaled(a.coeffs_[0]);
    if (b.order_ == 1) return a.scaled(b.coeffs_[0]);
    int order = std::lcm(a.order_, b.order_);
    const auto& level = detail::cyclotomic_level(order);
    const int sa = order / a.order_;
    const int sb = order / b.order_;
    Cyclotomic out(order, level.degree);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        Rational prod = a.coeffs_[i] * b.coeffs_[j];
        std::size_t p = (i * sa + j * sb) % static_cast<std::size_t>(order);
        for (auto [t, c] : level.power[p]) out.coeffs_[t] += prod * c;
      }
    }
    return std::move(out).normalized();
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

  /// "p/q" for rationals, otherwise "zeta<n>[c0, c1, ...]" in the power basis.
  std::string to_string() const {
    if (auto q = as_rational()) return q->str();
    std::ostringstream os;
    os << "zeta" << order_ << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << coeffs_[i].str();
    os << "]";
    return os.str();
  }

 private:
  Cyclotomic(int order, int degree) : order_(order), coeffs_(static_cast<std::size_t>(degree)) {}

  static Cyclotomic sqrt_prime(long long p) {
    if (p == 2) return root_of_unity(8, 1) + root_of_unity(8, 7);
    if (p > detail::kMaxCyclotomicOrder) throw UnsupportedCase("square root of large prime");
    // quadratic Gauss sum g = sum (a/p) zeta_p^a; g = sqrt(p) or i sqrt(p)
    const int order = static_cast<int>(p);
    const auto& level = detail::cyclotomic_level(order);
    Cyclotomic g(order, level.degree);
    for (long long a = 1; a < p; ++a) {
      long long legendre = detail::modpow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
      for (auto [t, c] : level.power[static_cast<std::size_t>(a)]) g.coeffs_[t] += legendre * c;
    }
    if (p % 4 == 1) return std::move(g).normalized();
    return g * root_of_unity(4, 3);
  }

  Cyclotomic scaled(const Rational& s) const {
    if (s == 0) return Cyclotomic(0);
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }

  Cyclotomic lifted(int order) const {
    const auto& level = detail::cyclotomic_level(order);
    Cyclotomic out(order, level.degree);
    out.accumulate_lift(*this, 1);
    return out;
  }

  void accumulate_lift(const Cyclotomic& other, int sign) {
    const auto& level = detail::cyclotomic_level(order_);
    const std::size_t step = static_cast<std::size_t>(order_ / other.order_);
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      if (other.coeffs_[j] == 0) continue;
      for (auto [t, c] : level.power[j * step]) coeffs_[t] += other.coeffs_[j] * (c * sign);
    }
  }

  Cyclotomic normalized() && {
    if (order_ != 1 && as_rational()) {
      Rational q = coeffs_[0];
      return Cyclotomic(q);
    }
    return std::move(*this);
  }
  Cyclotomic normalized() const& { return Cyclotomic(*this).normalized(); }

  int order_;
  std::vector<Rational> coeffs_;
};

}  // namespace galstat
