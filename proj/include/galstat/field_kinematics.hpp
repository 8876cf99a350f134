#pragma once

#include <array>
#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/op_algebra.hpp"
#include "galstat/verdict.hpp"

namespace galstat {

/// Periodic box of side L with N points per side (hbar = 1). Momenta are
/// k = 2 pi n / L with n in [-N/2, N/2)^d, sites x = L j / N with j in [0, N)^d.
struct LatticeSpec {
  int dimension = 1;
  int points_per_side = 16;
  Rational side_length = 1;

  void validate() const {
    mode_space().validate();
    if (side_length <= 0) throw StructuralError("side_length must be positive");
  }

  ModeSpace mode_space(int twice_spin = 0) const { return {dimension, points_per_side, twice_spin}; }

  long long volume() const {
    long long v = 1;
    for (int c = 0; c < dimension; ++c) v *= points_per_side;
    return v;
  }

  /// All index vectors in [lo, lo + N)^d, unused components zero, lexicographic.
  std::vector<std::array<int, 3>> grid(int lo) const {
    std::vector<std::array<int, 3>> out;
    std::array<int, 3> idx{};
    for (int c = 0; c < dimension; ++c) idx[static_cast<std::size_t>(c)] = lo;
    while (true) {
      out.push_back(idx);
      int c = dimension - 1;
      while (c >= 0 && ++idx[static_cast<std::size_t>(c)] == lo + points_per_side) {
        idx[static_cast<std::size_t>(c)] = lo;
        --c;
      }
      if (c < 0) break;
    }
    return out;
  }

  std::vector<std::array<int, 3>> momenta() const { return grid(-points_per_side / 2); }
  std::vector<std::array<int, 3>> sites() const { return grid(0); }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct SpacetimePoint {
  std::array<Rational, 3> position{};
  Rational time = 0;
};

inline SpacetimePoint site_point(const LatticeSpec& lattice, const std::array<int, 3>& site,
                                 const Rational& time = 0) {
  SpacetimePoint p;
  for (int c = 0; c < lattice.dimension; ++c) {
    const auto cc = static_cast<std::size_t>(c);
    p.position[cc] = lattice.side_length * site[cc] / lattice.points_per_side;
  }
  p.time = time;
  return p;
}

/// Site index of a point; throws StructuralError when the point is off the grid.
inline std::array<int, 3> site_index(const LatticeSpec& lattice, const SpacetimePoint& p) {
  std::array<int, 3> j{};
  for (int c = 0; c < 3; ++c) {
    const auto cc = static_cast<std::size_t>(c);
    if (c >= lattice.dimension) {
      if (p.position[cc] != 0) throw StructuralError("position has components beyond the lattice dimension");
      continue;
    }
    Rational scaled = p.position[cc] * lattice.points_per_side / lattice.side_length;
    if (boost::multiprecision::denominator(scaled) != 1) throw StructuralError("position is off the lattice");
    BigInt n = boost::multiprecision::numerator(scaled);
    if (n < 0 || n >= lattice.points_per_side) throw StructuralError("position outside the periodic box");
    j[cc] = n.convert_to<int>();
  }
  return j;
}

/// Spin-zero Galilean field: mass, particle/antiparticle mixing, lattice.
struct FieldSpec {
  Rational mass = 1;
  int twice_spin = 0;
  ExactComplex alpha = 1;
  ExactComplex beta = 1;
  LatticeSpec lattice;

  void validate() const {
    lattice.validate();
    if (mass == 0) throw StructuralError("field mass must be nonzero");
    if (twice_spin != 0) throw UnsupportedCase("mode expansions are built for spin zero only");
    if (alpha.is_zero() && beta.is_zero()) throw StructuralError("alpha and beta are both zero");
  }
};

/// Normalization V^{-1/2} of the counting measure on the momentum grid.
inline ExactComplex lattice_normalization(const LatticeSpec& lattice) {
  return ExactComplex::sqrt(Rational(1, lattice.volume()));
}

/// xi(x, t) = V^{-1/2} sum_k [alpha e^{i(E t - k.x)} a(k) + beta e^{-i(E t - k.x)} b+(k)],
/// E = k^2 / 2m. The E t phase is pi^2 times a rational and stays formal.
inline OperatorExpr build_field(const FieldSpec& spec, const SpacetimePoint& p, Statistics stats) {
  spec.validate();
  const auto j = site_index(spec.lattice, p);
  const auto& lat = spec.lattice;
  const ExactComplex norm = lattice_normalization(lat);
  const ExactComplex particle = norm * spec.alpha;
  const ExactComplex antiparticle = norm * spec.beta;
  OperatorExpr field(lat.mode_space(), stats);
  for (const auto& n : lat.momenta()) {
    long long n_dot_j = 0;
    long long n_sq = 0;
    for (int c = 0; c < lat.dimension; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      n_dot_j += static_cast<long long>(n[cc]) * j[cc];
      n_sq += static_cast<long long>(n[cc]) * n[cc];
    }
    // k.x = 2 pi (n.j) / N ;  E t = pi^2 * 2 n^2 t / (m L^2)
    const Rational kx_over_pi(2 * n_dot_j, lat.points_per_side);
    const Rational et_over_pi_sq =
        Rational(2 * n_sq) * p.time / (spec.mass * lat.side_length * lat.side_length);
    const ExactComplex wave = ExactComplex::exp_i(phase_symbol::kPiSquared, et_over_pi_sq) *
                              ExactComplex::exp_i_pi(-kx_over_pi);
    const Mode mode{Species::particle, 0, n};
    const Mode anti{Species::antiparticle, 0, n};
    field.accumulate(Word{Ladder{LadderKind::annihilate, mode}}, particle * wave);
    field.accumulate(Word{Ladder{LadderKind::create, anti}}, antiparticle * wave.conj());
  }
  return field;
}

/// [xi(x,t), xi+(y,t)] computed symbolically; must reduce to a c-number.
inline ExactComplex equal_time_bracket(const FieldSpec& spec, const SpacetimePoint& x,
                                       const SpacetimePoint& y, Statistics s) {
  if (x.time != y.time) throw UnsupportedCase("unequal-time brackets are not computed");
  OperatorExpr xi = build_field(spec, x, s);
  OperatorExpr xi_dag = adjoint(build_field(spec, y, s));
  OperatorExpr result = bracket(xi, xi_dag, s);
  if (!result.is_scalar()) {
    throw ConsistencyFailure("equal-time bracket left operator terms: " + result.to_string());
  }
  return vacuum_expect(result);
}

/// (|alpha|^2 -/+ |beta|^2) * delta_lattice(x, y)
inline ExactComplex closed_form_bracket(const FieldSpec& spec, const SpacetimePoint& x,
                                        const SpacetimePoint& y, Statistics s) {
  if (site_index(spec.lattice, x) != site_index(spec.lattice, y)) return ExactComplex();
  return spec.alpha.norm() + ExactComplex(bracket_sign(s)) * spec.beta.norm();
}

namespace detail {

inline nlohmann::json site_json(const LatticeSpec& lat, const std::array<int, 3>& j) {
  nlohmann::json out = nlohmann::json::array();
  for (int c = 0; c < lat.dimension; ++c) out.push_back(j[static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace detail

/// Sweeps every site pair for both gradings at a common time and checks the
/// closed form. PASS means neither statistics is singled out.
inline Verdict counterexample_report(const FieldSpec& spec, const Rational& time = 0,
                                     std::string label = "counterexample") {
  spec.validate();
  const auto sites = spec.lattice.sites();
  const bool with_table = sites.size() <= 16;
  nlohmann::json details = nlohmann::json::object();
  details["dimension"] = spec.lattice.dimension;
  details["points_per_side"] = spec.lattice.points_per_side;
  details["alpha"] = spec.alpha.to_string();
  details["beta"] = spec.beta.to_string();
  double worst = 0.0;
  nlohmann::json witness;
  for (Statistics s : {Statistics::bose, Statistics::fermi}) {
    std::vector<OperatorExpr> fields;
    std::vector<OperatorExpr> adjoints;
    fields.reserve(sites.size());
    adjoints.reserve(sites.size());
    for (const auto& j : sites) {
      fields.push_back(build_field(spec, site_point(spec.lattice, j, time), s));
      adjoints.push_back(adjoint(fields.back()));
    }
    nlohmann::json table = nlohmann::json::array();
    std::size_t mismatches = 0;
    std::size_t nonzero_offdiagonal = 0;
    for (std::size_t xi = 0; xi < sites.size(); ++xi) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t yi = 0; yi < sites.size(); ++yi) {
        OperatorExpr br = bracket(fields[xi], adjoints[yi], s);
        if (!br.is_scalar()) throw ConsistencyFailure("equal-time bracket left operator terms");
        ExactComplex value = vacuum_expect(br);
        ExactComplex expected = closed_form_bracket(spec, site_point(spec.lattice, sites[xi], time),
                                                    site_point(spec.lattice, sites[yi], time), s);
        if (xi != yi && !value.is_zero()) ++nonzero_offdiagonal;
        if (!(value == expected)) {
          ++mismatches;
          worst = std::max(worst, std::abs(value.to_complex() - expected.to_complex()));
          if (witness.is_null()) {
            witness = {{"statistics", to_string(s)},
                       {"x", detail::site_json(spec.lattice, sites[xi])},
                       {"y", detail::site_json(spec.lattice, sites[yi])},
                       {"computed", value.to_string()},
                       {"expected", expected.to_string()}};
          }
        }
        if (with_table) row.push_back(value.to_string());
      }
      if (with_table) table.push_back(std::move(row));
    }
    ExactComplex diagonal = closed_form_bracket(spec, site_point(spec.lattice, sites[0], time),
                                                site_point(spec.lattice, sites[0], time), s);
    nlohmann::json entry = {{"diagonal", diagonal.to_string()},
                            {"nonzero_offdiagonal", nonzero_offdiagonal},
                            {"mismatches", mismatches},
                            {"pairs", sites.size() * sites.size()},
                            {"identically_zero", diagonal.is_zero() && nonzero_offdiagonal == 0}};
    if (with_table) entry["table"] = std::move(table);
    details[to_string(s)] = std::move(entry);
  }
  if (!witness.is_null()) return Verdict::fail(std::move(label), witness, worst, details);
  return Verdict::pass(std::move(label), details);
}

}  // namespace galstat
