#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "galstat/field_kinematics.hpp"
#include "galstat/galilei.hpp"
#include "galstat/reps.hpp"
#include "galstat/verdict.hpp"

namespace galstat {

/// xi_lambda -> e^{i m gamma} sum D^(s)(R^-1)_{lambda lambda'} xi_lambda'(x', t')
struct TransformLaw {
  Rational mass;
  SpinRep rep;

  TransformLaw(Rational m, int twice_spin) : mass(std::move(m)), rep(twice_spin) {}
  int twice_spin() const { return rep.twice_spin(); }
};

enum class Sampling { full, no_boosts };

struct HermiticityOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  Sampling sampling = Sampling::full;
  LatticeSpec lattice{3, 4, 1};
};

namespace detail {

inline nlohmann::json vector_json(const Vec3<Rational>& v) {
  return {to_string(v[0]), to_string(v[1]), to_string(v[2])};
}

struct HermiticitySample {
  GalileiElement<Rational> g;
  Event<Rational> event;
};

inline nlohmann::json sample_json(const HermiticitySample& s, const Rational& m_gamma) {
  nlohmann::json rotation = nlohmann::json::array();
  for (const auto& row : s.g.rotation) rotation.push_back(vector_json(row));
  return {{"boost", vector_json(s.g.boost)},
          {"translation", vector_json(s.g.translation)},
          {"rotation", rotation},
          {"position", vector_json(s.event.position)},
          {"time", to_string(s.event.time)},
          {"m_gamma", to_string(m_gamma)},
          {"phase_xi", ExactComplex::exp_i(phase_symbol::kRadian, m_gamma).to_string()},
          {"phase_xi_dagger", ExactComplex::exp_i(phase_symbol::kRadian, -m_gamma).to_string()}};
}

/// Boost with |v| in [1/2, 2] drawn from a grid of quarter-integers.
inline Vec3<Rational> sample_boost(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-8, 8);
  while (true) {
    Vec3<Rational> v = {Rational(c(rng), 4), Rational(c(rng), 4), Rational(c(rng), 4)};
    const Rational n2 = vec::dot(v, v);
    if (n2 >= Rational(1, 4) && n2 <= 4) return v;
  }
}

inline double unitarity_residual(const SpinRep& rep, const Mat3<Rational>& r) {
  const Vec3<double> w = rotation_log(to_double(r));
  const double angle = std::sqrt(vec::dot(w, w));
  const auto n = static_cast<Eigen::Index>(rep.dimension());
  ComplexMatrix d = ComplexMatrix::Identity(n, n);
  if (angle > 1e-15) {
    // D(R^-1): rotation by -angle about the same axis
    d = rotation_matrix(rep, Eigen::Vector3d(w[0] / angle, w[1] / angle, w[2] / angle), -angle);
  }
  return (d * d.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Whether xi = xi+ can hold under the law: the two phase factors e^{+i m gamma}
/// and e^{-i m gamma} must agree at every (g, x, t). Exponents are rational, so
/// they agree iff m gamma = 0. details.result is COMPATIBLE or INCOMPATIBLE.
/// The verdict passes when that result matches "compatible iff m = 0"; with
/// boost-free sampling and no witness it is INCONCLUSIVE-UNDER-RESTRICTION.
inline Verdict hermiticity_compatible(const TransformLaw& law, const HermiticityOptions& opt = {},
                                      std::string label = "nogo") {
  if (opt.samples < 1) throw InputError("hermiticity check needs at least one sample");
  opt.lattice.validate();
  std::mt19937_64 rng(opt.seed);
  RationalElementSampler sampler(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto sites = opt.lattice.sites();
  std::uniform_int_distribution<std::size_t> pick_site(0, sites.size() - 1);
  std::uniform_int_distribution<int> pick_time(0, 16);

  std::vector<detail::HermiticitySample> samples;
  if (opt.sampling == Sampling::full) {
    // v = (1,0,0), x = (1,0,0), t = 0: gamma = 1 per unit mass
    detail::HermiticitySample fixed;
    fixed.g = GalileiElement<Rational>::pure_boost({Rational(1), Rational(0), Rational(0)});
    fixed.event = {{Rational(1), Rational(0), Rational(0)}, Rational(0)};
    samples.push_back(fixed);
  }
  for (std::size_t k = 0; k < opt.samples; ++k) {
    detail::HermiticitySample s;
    s.g.rotation = sampler.rotation();
    s.g.translation = sampler.vector();
    s.g.time_shift = sampler.rational();
    if (opt.sampling == Sampling::full) s.g.boost = detail::sample_boost(rng);
    const SpacetimePoint p = site_point(opt.lattice, sites[pick_site(rng)]);
    s.event = {p.position, Rational(pick_time(rng), 8)};
    samples.push_back(std::move(s));
  }

  std::size_t witnesses = 0;
  nlohmann::json witness;
  double unitarity = 0.0;
  for (const auto& s : samples) {
    const Rational m_gamma = gamma(s.g, law.mass, s.event);
    const ExactComplex xi_phase = ExactComplex::exp_i(phase_symbol::kRadian, m_gamma);
    const ExactComplex xi_dag_phase = ExactComplex::exp_i(phase_symbol::kRadian, -m_gamma);
    if (xi_phase != xi_dag_phase) {
      if (witnesses++ == 0) witness = detail::sample_json(s, m_gamma);
    }
    unitarity = std::max(unitarity, detail::unitarity_residual(law.rep, s.g.rotation));
  }
  if (unitarity > 1e-10) {
    return Verdict::fail(std::move(label), {{"rotation_unitarity_residual", unitarity}}, unitarity);
  }

  nlohmann::json details = {{"mass", to_string(law.mass)},
                            {"spin", std::to_string(law.twice_spin()) + "/2"},
                            {"samples", samples.size()},
                            {"witnesses", witnesses},
                            {"sampling", opt.sampling == Sampling::full ? "full" : "no_boosts"},
                            {"rotation_unitarity_residual", unitarity}};
  if (witnesses > 0) {
    details["result"] = "INCOMPATIBLE";
    if (law.mass == 0) return Verdict::fail(std::move(label), witness, {}, details);
    Verdict v = Verdict::pass(std::move(label), details);
    v.witness = witness;
    return v;
  }
  if (law.mass == 0) {
    details["result"] = "COMPATIBLE";
    return Verdict::pass(std::move(label), details);
  }
  details["result"] = "UNDETERMINED";
  if (opt.sampling == Sampling::no_boosts) {
    Verdict v = Verdict::pass(std::move(label), details);
    v.status = Status::inconclusive_under_restriction;
    return v;
  }
  return Verdict::fail(std::move(label), {{"reason", "no sample separated the phases"}}, {}, details);
}

/// psi+ = (xi + xi+)/2 and psi- = (xi - xi+)/(2i) at one spacetime point.
inline std::pair<OperatorExpr, OperatorExpr> decompose_hermitian_pair(const FieldSpec& spec,
                                                                      const SpacetimePoint& p,
                                                                      Statistics stats) {
  const OperatorExpr xi = build_field(spec, p, stats);
  const OperatorExpr xi_dag = adjoint(xi);
  const ExactComplex half(Rational(1, 2));
  const ExactComplex minus_half_i = ExactComplex::gaussian(0, Rational(-1, 2));
  return {scale(xi + xi_dag, half), scale(xi - xi_dag, minus_half_i)};
}

/// True when b = c a for one complex c (both nonzero): every coefficient
/// cross-product b_w a_w0 - a_w b_w0 vanishes.
inline bool proportional(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [w0, a0] = *a.terms().begin();
  const ExactComplex b0 = b.coefficient(w0);
  for (const auto& [w, aw] : a.terms()) {
    if (b.coefficient(w) * a0 != aw * b0) return false;
  }
  for (const auto& [w, bw] : b.terms()) {
    if (bw * a0 != a.coefficient(w) * b0) return false;
  }
  return true;
}

/// Hermiticity of psi+- and their mixing under the boost v = (1,0,0) at the
/// lattice site x = (L/N, 0, 0), t = 0. With theta = m gamma the transform of
/// psi+ is cos(theta) psi+ - sin(theta) psi-; the verdict checks that identity
/// exactly and that the result is not a multiple of psi+.
inline Verdict hermitian_pair_check(const FieldSpec& spec, Statistics stats,
                                    std::string label = "hermitian-pair") {
  spec.validate();
  std::array<int, 3> site{};
  site[0] = spec.lattice.points_per_side > 1 ? 1 : 0;
  const SpacetimePoint p = site_point(spec.lattice, site);
  const auto g = GalileiElement<Rational>::pure_boost({Rational(1), Rational(0), Rational(0)});
  const Rational theta = gamma(g, spec.mass, Event<Rational>{p.position, p.time});

  const auto [plus, minus] = decompose_hermitian_pair(spec, p, stats);
  const bool plus_hermitian = adjoint(plus) == plus;
  const bool minus_hermitian = adjoint(minus) == minus;

  // At t = 0 the boost leaves x fixed, so only the phases act.
  const OperatorExpr xi = build_field(spec, p, stats);
  const ExactComplex e_plus = ExactComplex::exp_i(phase_symbol::kRadian, theta);
  const ExactComplex e_minus = ExactComplex::exp_i(phase_symbol::kRadian, -theta);
  const ExactComplex half(Rational(1, 2));
  const OperatorExpr transformed = scale(scale(xi, e_plus) + scale(adjoint(xi), e_minus), half);
  const ExactComplex cos_theta = half * (e_plus + e_minus);
  const ExactComplex sin_theta = ExactComplex::gaussian(0, Rational(-1, 2)) * (e_plus - e_minus);
  const bool expansion_holds = transformed == scale(plus, cos_theta) - scale(minus, sin_theta);
  const bool mixes = !proportional(plus, transformed);

  nlohmann::json details = {{"theta", to_string(theta)},
                            {"cos_theta", cos_theta.to_string()},
                            {"sin_theta", sin_theta.to_string()},
                            {"psi_plus_hermitian", plus_hermitian},
                            {"psi_minus_hermitian", minus_hermitian},
                            {"cos_sin_expansion", expansion_holds},
                            {"mixes_psi_minus", mixes}};
  if (plus_hermitian && minus_hermitian && expansion_holds && mixes) {
    return Verdict::pass(std::move(label), details);
  }
  return Verdict::fail(std::move(label), details, {}, details);
}

/// M = m [[0, -i], [i, 0]]: eigenvalues from the exact characteristic
/// polynomial, eigenvectors (M01, lambda - M00) normalized, then the
/// equal-time brackets of a field mixing particle and antiparticle with the
/// eigenvector weights.
inline Verdict doubled_mass_analysis(const Rational& m, const LatticeSpec& lattice = {},
                                     std::string label = "doubled-mass") {
  if (m == 0) throw InputError("doubled-mass analysis needs m != 0");
  lattice.validate();
  const std::array<std::array<ExactComplex, 2>, 2> mm = {
      {{ExactComplex(0), ExactComplex::gaussian(0, -m)}, {ExactComplex::gaussian(0, m), ExactComplex(0)}}};
  const ExactComplex trace = mm[0][0] + mm[1][1];
  const ExactComplex det = mm[0][0] * mm[1][1] - mm[0][1] * mm[1][0];
  nlohmann::json details = {{"mass", to_string(m)}, {"trace", trace.to_string()}, {"det", det.to_string()}};
  auto failed = [&](const std::string& why) {
    return Verdict::fail(std::move(label), {{"reason", why}}, {}, details);
  };
  // lambda^2 - tr lambda + det = 0 with tr = 0, det = -m^2
  if (!trace.is_zero() || det != ExactComplex(-m * m)) return failed("characteristic polynomial is not x^2 - m^2");

  nlohmann::json eigen = nlohmann::json::array();
  std::array<Rational, 2> weights{};
  std::vector<std::array<ExactComplex, 2>> vectors;
  for (const Rational lambda : {m, Rational(-m)}) {
    std::array<ExactComplex, 2> v = {mm[0][1], ExactComplex(lambda) - mm[0][0]};
    const ExactComplex n2 = v[0].norm() + v[1].norm();
    const auto n2q = n2.as_rational();
    if (!n2q || *n2q <= 0) return failed("eigenvector norm is not a positive rational");
    const ExactComplex inv_norm = ExactComplex::sqrt(Rational(1) / *n2q);
    for (auto& c : v) c = c * inv_norm;
    for (int row = 0; row < 2; ++row) {
      const ExactComplex mv = mm[static_cast<std::size_t>(row)][0] * v[0] + mm[static_cast<std::size_t>(row)][1] * v[1];
      if (mv != ExactComplex(lambda) * v[static_cast<std::size_t>(row)]) return failed("M v != lambda v");
    }
    const auto w0 = v[0].norm().as_rational();
    const auto w1 = v[1].norm().as_rational();
    if (!w0 || !w1 || *w0 != *w1) return failed("eigenvector weights differ");
    weights = {*w0, *w1};
    eigen.push_back({{"eigenvalue", to_string(lambda)},
                     {"eigenvector", {v[0].to_string(), v[1].to_string()}},
                     {"weights", {to_string(*w0), to_string(*w1)}}});
    vectors.push_back(v);
  }
  const ExactComplex overlap = vectors[0][0].conj() * vectors[1][0] + vectors[0][1].conj() * vectors[1][1];
  details["eigen"] = eigen;
  details["orthogonal"] = overlap.is_zero();
  if (!overlap.is_zero()) return failed("eigenvectors are not orthogonal");

  FieldSpec spec;
  spec.mass = boost::multiprecision::abs(m);
  spec.alpha = ExactComplex::sqrt(weights[0]);
  spec.beta = ExactComplex::sqrt(weights[1]);
  spec.lattice = lattice;
  details["alpha"] = spec.alpha.to_string();
  details["beta"] = spec.beta.to_string();
  const auto sites = lattice.sites();
  for (Statistics s : {Statistics::bose, Statistics::fermi}) {
    std::vector<OperatorExpr> fields;
    std::vector<OperatorExpr> adjoints;
    for (const auto& j : sites) {
      fields.push_back(build_field(spec, site_point(lattice, j), s));
      adjoints.push_back(adjoint(fields.back()));
    }
    // Bose: |alpha|^2 - |beta|^2 = 0; Fermi: |alpha|^2 + |beta|^2 = 1
    const ExactComplex diagonal = s == Statistics::bose ? ExactComplex(0) : ExactComplex(1);
    for (std::size_t a = 0; a < sites.size(); ++a) {
      for (std::size_t b = 0; b < sites.size(); ++b) {
        const OperatorExpr br = bracket(fields[a], adjoints[b], s);
        const ExactComplex expected = a == b ? diagonal : ExactComplex(0);
        if (!br.is_scalar() || vacuum_expect(br) != expected) {
          details["statistics"] = to_string(s);
          return Verdict::fail(std::move(label),
                               {{"statistics", to_string(s)},
                                {"x", detail::site_json(lattice, sites[a])},
                                {"y", detail::site_json(lattice, sites[b])},
                                {"bracket", br.to_string()},
                                {"expected", expected.to_string()}},
                               {}, details);
        }
      }
    }
  }
  details["bose_bracket"] = "identically zero";
  details["fermi_bracket"] = "delta";
  return Verdict::pass(std::move(label), details);
}

}  // namespace galstat
