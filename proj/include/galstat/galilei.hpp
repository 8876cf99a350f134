#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/algebra_table.hpp"
#include "galstat/exact/rational.hpp"
#include "galstat/verdict.hpp"

namespace galstat {

template <class T>
using Vec3 = std::array<T, 3>;

/// Row-major 3x3 matrix.
template <class T>
using Mat3 = std::array<Vec3<T>, 3>;

template <class T>
inline constexpr bool is_exact_scalar_v = !std::is_floating_point_v<T>;

namespace vec {

template <class T>
Vec3<T> add(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <class T>
Vec3<T> sub(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
template <class T>
Vec3<T> scaled(const Vec3<T>& a, const T& s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
template <class T>
Vec3<T> apply(const Mat3<T>& m, const Vec3<T>& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}
template <class T>
Mat3<T> identity() {
  Mat3<T> m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = T(i == j ? 1 : 0);
  }
  return m;
}
template <class T>
Mat3<T> transpose(const Mat3<T>& m) {
  Mat3<T> out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  }
  return out;
}
template <class T>
Mat3<T> multiply(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      T s(0);
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  }
  return out;
}

}  // namespace vec

/// Largest |R^T R - I| entry.
template <class T>
T orthogonality_defect(const Mat3<T>& r) {
  Mat3<T> p = vec::multiply(vec::transpose(r), r);
  T worst(0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      T d = p[i][j] - T(i == j ? 1 : 0);
      if (d < 0) d = -d;
      if (d > worst) worst = d;
    }
  }
  return worst;
}

/// Element (b, a, v, R) acting as x -> R x + v t + a, t -> t + b.
template <class T>
struct GalileiElement {
  T time_shift{0};
  Vec3<T> translation{};
  Vec3<T> boost{};
  Mat3<T> rotation = vec::identity<T>();

  static GalileiElement identity() { return {}; }
  static GalileiElement pure_time_shift(const T& b) {
    GalileiElement g;
    g.time_shift = b;
    return g;
  }
  static GalileiElement pure_translation(const Vec3<T>& a) {
    GalileiElement g;
    g.translation = a;
    return g;
  }
  static GalileiElement pure_boost(const Vec3<T>& v) {
    GalileiElement g;
    g.boost = v;
    return g;
  }
  static GalileiElement pure_rotation(const Mat3<T>& r) {
    GalileiElement g;
    g.rotation = r;
    return g;
  }

  /// R^T R = I, exactly for exact scalars and within 1e-12 otherwise.
  bool valid() const {
    T defect = orthogonality_defect(rotation);
    if constexpr (is_exact_scalar_v<T>) {
      return defect == 0;
    } else {
      return defect <= 1e-12;
    }
  }

  friend bool operator==(const GalileiElement&, const GalileiElement&) = default;
};

template <class T>
struct Event {
  Vec3<T> position{};
  T time{0};
  friend bool operator==(const Event&, const Event&) = default;
};

template <class T>
Event<T> act(const GalileiElement<T>& g, const Event<T>& e) {
  Vec3<T> x = vec::add(vec::add(vec::apply(g.rotation, e.position), vec::scaled(g.boost, e.time)),
                       g.translation);
  return {x, e.time + g.time_shift};
}

/// The element with act(compose(g, h), e) = act(g, act(h, e)).
template <class T>
GalileiElement<T> compose(const GalileiElement<T>& g, const GalileiElement<T>& h) {
  GalileiElement<T> out;
  out.rotation = vec::multiply(g.rotation, h.rotation);
  out.boost = vec::add(g.boost, vec::apply(g.rotation, h.boost));
  out.translation = vec::add(vec::add(g.translation, vec::apply(g.rotation, h.translation)),
                             vec::scaled(g.boost, h.time_shift));
  out.time_shift = g.time_shift + h.time_shift;
  return out;
}

template <class T>
GalileiElement<T> inverse(const GalileiElement<T>& g) {
  GalileiElement<T> out;
  out.rotation = vec::transpose(g.rotation);
  out.boost = vec::scaled(vec::apply(out.rotation, g.boost), T(-1));
  out.time_shift = -g.time_shift;
  // a' = R^T (v b - a)
  out.translation =
      vec::apply(out.rotation, vec::sub(vec::scaled(g.boost, g.time_shift), g.translation));
  return out;
}

/// Exponent m (v^2 t / 2 + v . R x) of the projective factor e^{i m gamma}.
template <class T>
T gamma(const GalileiElement<T>& g, const T& mass, const Event<T>& e) {
  const T half = T(1) / T(2);
  return mass * (half * vec::dot(g.boost, g.boost) * e.time +
                 vec::dot(g.boost, vec::apply(g.rotation, e.position)));
}

namespace detail {

template <class T>
std::vector<Event<T>> cocycle_sample_points() {
  auto q = [](long long p, long long r) {
    if constexpr (is_exact_scalar_v<T>) {
      return T(Rational(p, r));
    } else {
      return T(static_cast<double>(p) / static_cast<double>(r));
    }
  };
  return {
      {{q(0, 1), q(0, 1), q(0, 1)}, q(0, 1)},   {{q(1, 1), q(0, 1), q(0, 1)}, q(0, 1)},
      {{q(0, 1), q(1, 1), q(0, 1)}, q(0, 1)},   {{q(0, 1), q(0, 1), q(1, 1)}, q(0, 1)},
      {{q(0, 1), q(0, 1), q(0, 1)}, q(1, 1)},   {{q(1, 1), q(2, 1), q(3, 1)}, q(1, 2)},
      {{q(-2, 1), q(1, 3), q(5, 1)}, q(-3, 1)}, {{q(1, 7), q(-4, 1), q(2, 1)}, q(3, 1)},
  };
}

}  // namespace detail

/// Delta(x, t) = gamma(h; x, t) + gamma(g; h(x, t)) - gamma(g h; x, t) with unit mass.
template <class T>
T cocycle_defect(const GalileiElement<T>& g, const GalileiElement<T>& h, const Event<T>& e) {
  const T one(1);
  return gamma(h, one, e) + gamma(g, one, act(h, e)) - gamma(compose(g, h), one, e);
}

/// Bargmann exponent zeta(g, h) = m Delta, after checking on eight sample
/// events that Delta does not depend on (x, t).
template <class T>
T cocycle_exponent(const GalileiElement<T>& g, const GalileiElement<T>& h, const T& mass) {
  const auto samples = detail::cocycle_sample_points<T>();
  const T reference = cocycle_defect(g, h, samples.front());
  for (const auto& e : samples) {
    T diff = cocycle_defect(g, h, e) - reference;
    if constexpr (is_exact_scalar_v<T>) {
      if (diff != 0) throw ConsistencyFailure("cocycle defect depends on (x, t)");
    } else {
      if (std::abs(diff) > 1e-10) throw ConsistencyFailure("cocycle defect depends on (x, t)");
    }
  }
  return mass * reference;
}

/// Closed form m (v^2 b' / 2 + v . R a') of the same exponent, used as an
/// independent cross-check.
template <class T>
T cocycle_closed_form(const GalileiElement<T>& g, const GalileiElement<T>& h, const T& mass) {
  const T half = T(1) / T(2);
  return mass * (half * vec::dot(g.boost, g.boost) * h.time_shift +
                 vec::dot(g.boost, vec::apply(g.rotation, h.translation)));
}

/// Exact rational rotation from an integer quaternion (not all zero).
inline Mat3<Rational> rotation_from_quaternion(long long w, long long x, long long y, long long z) {
  const long long n = w * w + x * x + y * y + z * z;
  if (n == 0) throw InputError("zero quaternion");
  auto q = [n](long long v) { return Rational(v, n); };
  return {{{q(w * w + x * x - y * y - z * z), q(2 * (x * y - w * z)), q(2 * (x * z + w * y))},
           {q(2 * (x * y + w * z)), q(w * w - x * x + y * y - z * z), q(2 * (y * z - w * x))},
           {q(2 * (x * z - w * y)), q(2 * (y * z + w * x)), q(w * w - x * x - y * y + z * z)}}};
}

/// Rodrigues rotation by `angle` about the unit vector `axis`.
inline Mat3<double> rotation_axis_angle(const Vec3<double>& axis, double angle) {
  const double norm = std::sqrt(vec::dot(axis, axis));
  if (std::abs(norm - 1.0) > 1e-12) throw InputError("rotation axis must be a unit vector");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const auto [x, y, z] = axis;
  return {{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
           {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
           {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
}

/// Rotation vector (angle * axis) of R, angle in [0, pi).
inline Vec3<double> rotation_log(const Mat3<double>& r) {
  Vec3<double> w = {0.5 * (r[2][1] - r[1][2]), 0.5 * (r[0][2] - r[2][0]), 0.5 * (r[1][0] - r[0][1])};
  const double s = std::sqrt(vec::dot(w, w));
  const double c = 0.5 * (r[0][0] + r[1][1] + r[2][2] - 1.0);
  const double angle = std::atan2(s, c);
  if (s < 1e-300) return {0.0, 0.0, 0.0};
  return vec::scaled(w, angle / s);
}

template <class T>
Mat3<double> to_double(const Mat3<T>& m) {
  Mat3<double> out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if constexpr (std::is_same_v<T, Rational>) {
        out[i][j] = galstat::to_double(m[i][j]);
      } else {
        out[i][j] = static_cast<double>(m[i][j]);
      }
    }
  }
  return out;
}

/// Random exact elements: small-height rational components and a rotation
/// from a random integer quaternion.
class RationalElementSampler {
 public:
  explicit RationalElementSampler(std::uint64_t seed) : rng_(seed) {}

  Rational rational(int max_num = 9, int max_den = 6) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  Vec3<Rational> vector() { return {rational(), rational(), rational()}; }

  Mat3<Rational> rotation() {
    std::uniform_int_distribution<int> c(-3, 3);
    while (true) {
      int w = c(rng_), x = c(rng_), y = c(rng_), z = c(rng_);
      if (w != 0 || x != 0 || y != 0 || z != 0) return rotation_from_quaternion(w, x, y, z);
    }
  }

  GalileiElement<Rational> element() {
    GalileiElement<Rational> g;
    g.time_shift = rational();
    g.translation = vector();
    g.boost = vector();
    g.rotation = rotation();
    return g;
  }

  Event<Rational> event() { return {vector(), rational()}; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

/// Element of the central extension: group element plus accumulated phase.
struct ExtendedElement {
  GalileiElement<double> g;
  double phase = 0.0;
};

inline ExtendedElement extended_product(const ExtendedElement& a, const ExtendedElement& b, double mass) {
  return {compose(a.g, b.g), a.phase + b.phase + cocycle_exponent(a.g, b.g, mass)};
}

inline ExtendedElement extended_inverse(const ExtendedElement& a, double mass) {
  GalileiElement<double> inv = inverse(a.g);
  return {inv, -a.phase - cocycle_exponent(a.g, inv, mass)};
}

inline GalileiElement<double> one_parameter(const std::string& label, double eps) {
  auto axis = [&](char base) -> int {
    if (label.size() != 2 || label[0] != base || label[1] < '1' || label[1] > '3') return -1;
    return label[1] - '1';
  };
  if (label == "H") return GalileiElement<double>::pure_time_shift(eps);
  Vec3<double> e{};
  if (int i = axis('P'); i >= 0) {
    e[static_cast<std::size_t>(i)] = eps;
    return GalileiElement<double>::pure_translation(e);
  }
  if (int i = axis('K'); i >= 0) {
    e[static_cast<std::size_t>(i)] = eps;
    return GalileiElement<double>::pure_boost(e);
  }
  if (int i = axis('J'); i >= 0) {
    e[static_cast<std::size_t>(i)] = 1.0;
    return GalileiElement<double>::pure_rotation(rotation_axis_angle(e, eps));
  }
  throw InputError("'" + label + "' does not generate a one-parameter subgroup");
}

/// Coordinates of a near-identity extended element in the slot of `label`.
inline double coordinate(const ExtendedElement& x, const std::string& label) {
  if (label == "H") return x.g.time_shift;
  if (label == "M") return x.phase;
  const std::size_t i = static_cast<std::size_t>(label[1] - '1');
  if (label[0] == 'P') return x.g.translation[i];
  if (label[0] == 'K') return x.g.boost[i];
  if (label[0] == 'J') return rotation_log(x.g.rotation)[i];
  throw InputError("no group coordinate for '" + label + "'");
}

}  // namespace detail

struct BchOptions {
  std::array<double, 3> epsilons = {1e-2, 5e-3, 2.5e-3};  // successive halvings
  double tolerance = 1e-6;
  double mass = 1.0;
};

/// Group commutator g_X(e) g_Y(e) g_X(e)^-1 g_Y(e)^-1 in the centrally
/// extended group, its eps^2 coefficient extracted by second-order Richardson
/// extrapolation, compared slot by slot with [X, Y] from the table.
inline Verdict bch_crosscheck(const std::string& x_label, const std::string& y_label,
                              const AlgebraTable& table, const BchOptions& opt = {},
                              std::string label = "bch") {
  const std::size_t xi = table.index(x_label);
  const std::size_t yi = table.index(y_label);
  const double m = opt.mass;
  std::array<detail::ExtendedElement, 3> commutators;
  for (std::size_t k = 0; k < 3; ++k) {
    const double eps = opt.epsilons[k];
    detail::ExtendedElement gx{detail::one_parameter(x_label, eps), 0.0};
    detail::ExtendedElement gy{detail::one_parameter(y_label, eps), 0.0};
    auto c = detail::extended_product(gx, gy, m);
    c = detail::extended_product(c, detail::extended_inverse(gx, m), m);
    c = detail::extended_product(c, detail::extended_inverse(gy, m), m);
    commutators[k] = c;
  }
  double worst = 0.0;
  nlohmann::json estimates = nlohmann::json::object();
  nlohmann::json witness;
  for (std::size_t z = 0; z < table.size(); ++z) {
    const std::string& zl = table.labels()[z];
    std::array<double, 3> f{};
    for (std::size_t k = 0; k < 3; ++k) {
      f[k] = detail::coordinate(commutators[k], zl) / (opt.epsilons[k] * opt.epsilons[k]);
    }
    const double r1a = 2.0 * f[1] - f[0];
    const double r1b = 2.0 * f[2] - f[1];
    const double r2 = (4.0 * r1b - r1a) / 3.0;
    if (std::abs(r2 - r1b) > 1e-3 * std::max(1.0, std::abs(r2))) {
      throw NumericFailure("Richardson extrapolation did not settle for slot " + zl + " of [" +
                           x_label + ", " + y_label + "]");
    }
    // mass multiplies the central slot
    const double expected = to_double(table.constant(xi, yi, z)) * (zl == "M" ? m : 1.0);
    const double dev = std::abs(r2 - expected) / std::max(1.0, std::abs(expected));
    if (std::abs(r2) > 1e-9 || expected != 0.0) estimates[zl] = r2;
    if (dev > worst) worst = dev;
    if (dev > opt.tolerance && witness.is_null()) {
      witness = {{"pair", {x_label, y_label}}, {"slot", zl}, {"estimate", r2}, {"table", expected}};
    }
  }
  nlohmann::json details = {{"pair", {x_label, y_label}},
                            {"table_bracket", table.format_combination(table.bracket(xi, yi))},
                            {"estimates", estimates}};
  if (!witness.is_null()) return Verdict::fail(std::move(label), witness, worst, details);
  Verdict v = Verdict::pass(std::move(label), details);
  v.residual = worst;
  return v;
}

}  // namespace galstat
