#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/algebra_table.hpp"
#include "galstat/field_kinematics.hpp"
#include "galstat/galilei.hpp"
#include "galstat/nogo.hpp"
#include "galstat/report/config.hpp"
#include "galstat/reps.hpp"
#include "galstat/schwinger.hpp"

namespace galstat {

/// Inputs read from disk before any suite starts, so a missing or malformed
/// file is a configuration error rather than a failing verdict.
struct SuiteInputs {
  AlgebraTable galilei = extended_galilei_table();
  AlgebraTable poincare = poincare_table();
  std::optional<UMatrixSet> u_matrices;
};

inline SuiteInputs load_inputs(const SuiteConfig& cfg) {
  SuiteInputs in;
  auto table = [](const std::filesystem::path& p, const char* field) {
    std::ifstream f(p);
    if (!f) throw ConfigError(0, field, "cannot open '" + p.string() + "'");
    try {
      return parse_algebra_table(f);
    } catch (const InputError& e) {
      throw ConfigError(0, field, e.what());
    }
  };
  if (cfg.galilei_table) in.galilei = table(*cfg.galilei_table, "algebra.galilei_table");
  if (cfg.poincare_table) in.poincare = table(*cfg.poincare_table, "algebra.poincare_table");
  if (cfg.u_matrices) {
    std::ifstream f(*cfg.u_matrices);
    if (!f) throw ConfigError(0, "schwinger.u_matrices", "cannot open '" + cfg.u_matrices->string() + "'");
    try {
      in.u_matrices = parse_umatrix_set(f);
    } catch (const InputError& e) {
      throw ConfigError(0, "schwinger.u_matrices", e.what());
    }
  }
  return in;
}

namespace fixtures {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, cdouble(0, -1), cdouble(0, 1), 0;
  return m;
}
inline ComplexMatrix real_antisymmetric() {
  ComplexMatrix m(2, 2);
  m << 0, 1, -1, 0;
  return m;
}

/// U^0 = 0, U^k = i sigma_x, D = sigma_y: a consistent Fermi pairing.
struct TimeReversalFixture {
  ComplexMatrix d;
  UMatrixSet u;
  FieldClass cls;
};

inline TimeReversalFixture pauli_fermi() { return {pauli_y(), UMatrixSet::spatial(cdouble(0, 1) * pauli_x()), FieldClass::fermi}; }

/// Same U with the real matrix i sigma_y as D: the conjugation relation holds,
/// the reality clause does not.
inline TimeReversalFixture class_mismatch() {
  return {cdouble(0, 1) * pauli_y(), UMatrixSet::spatial(cdouble(0, 1) * pauli_x()), FieldClass::fermi};
}

/// U^0 = 0, U^k = [[0,1],[-1,0]], D = I: a consistent Bose pairing.
inline TimeReversalFixture identity_bose() {
  return {ComplexMatrix::Identity(2, 2), UMatrixSet::spatial(real_antisymmetric()), FieldClass::bose};
}

/// i sigma_x on components {0,1} and [[0,1],[-1,0]] on {2,3}.
inline UMatrixSet mixed_blocks() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = cdouble(0, 1) * pauli_x();
  m.block(2, 2, 2, 2) = real_antisymmetric();
  return UMatrixSet::spatial(m);
}

inline ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = cdouble(g(rng), g(rng));
  }
  return m;
}

inline ComplexMatrix random_anti_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  ComplexMatrix b = random_complex(rng, n);
  return b - b.adjoint();
}

}  // namespace fixtures

namespace detail {

template <class F>
Verdict timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v = f();
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

/// Folds many verdicts into one: first failure becomes the witness, worst residual kept.
inline Verdict fold(std::string label, const std::vector<Verdict>& parts, nlohmann::json details) {
  std::optional<double> worst;
  details["checks"] = parts.size();
  for (const auto& p : parts) {
    if (p.residual) worst = std::max(worst.value_or(0.0), *p.residual);
  }
  for (const auto& p : parts) {
    if (p.status == Status::fail) {
      nlohmann::json w = {{"check", p.label}, {"witness", p.witness}};
      return Verdict::fail(std::move(label), w, worst, details);
    }
  }
  Verdict v = Verdict::pass(std::move(label), details);
  v.residual = worst;
  return v;
}

inline Verdict expect_failure(std::string label, const Verdict& inner) {
  nlohmann::json details = {{"expected", "FAIL"}, {"observed", to_string(inner.status)}, {"witness", inner.witness}};
  if (inner.status == Status::fail) return Verdict::pass(std::move(label), details);
  return Verdict::fail(std::move(label), {{"unexpected_status", to_string(inner.status)}}, {}, details);
}

}  // namespace detail

inline std::vector<Verdict> counterexample_suite(const SuiteConfig& cfg) {
  std::vector<Verdict> out;
  const FieldSpec spec = cfg.field();
  out.push_back(detail::timed([&] { return counterexample_report(spec, 0, "counterexample"); }));
  if (cfg.confirm_3d) {
    FieldSpec cube = spec;
    cube.lattice = {3, 4, cfg.lattice.side_length};
    out.push_back(detail::timed([&] { return counterexample_report(cube, 0, "counterexample-3d"); }));
  }
  return out;
}

inline std::vector<Verdict> cocycle_suite(const SuiteConfig& cfg) {
  std::vector<Verdict> out;
  RationalElementSampler sampler(cfg.seed ^ 0xc0c1c1eULL);
  const Rational m = cfg.mass;
  out.push_back(detail::timed([&] {
    for (std::size_t k = 0; k < cfg.cocycle_pairs; ++k) {
      const auto g = sampler.element();
      const auto h = sampler.element();
      Rational zeta;
      try {
        zeta = cocycle_exponent(g, h, m);
      } catch (const ConsistencyFailure&) {
        return Verdict::fail("cocycle", {{"sample", k}, {"reason", "defect depends on (x, t)"}});
      }
      if (zeta != cocycle_closed_form(g, h, m)) {
        return Verdict::fail("cocycle", {{"sample", k}, {"zeta", to_string(zeta)},
                                         {"closed_form", to_string(cocycle_closed_form(g, h, m))}});
      }
    }
    Verdict v = Verdict::pass("cocycle", {{"pairs", cfg.cocycle_pairs}, {"arithmetic", "exact"}});
    v.residual = 0.0;
    return v;
  }));
  out.push_back(detail::timed([&] {
    const Vec3<Rational> v = sampler.vector();
    const Vec3<Rational> a = sampler.vector();
    const auto g = GalileiElement<Rational>::pure_boost(v);
    const auto h = GalileiElement<Rational>::pure_translation(a);
    const Rational zeta = cocycle_exponent(g, h, m);
    const Rational expected = m * vec::dot(v, a);
    nlohmann::json d = {{"v", detail::vector_json(v)}, {"a", detail::vector_json(a)},
                        {"zeta", to_string(zeta)}, {"m_v_dot_a", to_string(expected)}};
    if (zeta != expected) return Verdict::fail("cocycle-boost-translation", d, {}, d);
    return Verdict::pass("cocycle-boost-translation", d);
  }));
  out.push_back(detail::timed([&] {
    for (std::size_t k = 0; k < cfg.cocycle_triples; ++k) {
      const auto g1 = sampler.element();
      const auto g2 = sampler.element();
      const auto g3 = sampler.element();
      // zeta(g1, g2) + zeta(g1 g2, g3) = zeta(g1, g2 g3) + zeta(g2, g3)
      const Rational lhs = cocycle_exponent(g1, g2, m) + cocycle_exponent(compose(g1, g2), g3, m);
      const Rational rhs = cocycle_exponent(g1, compose(g2, g3), m) + cocycle_exponent(g2, g3, m);
      if (lhs != rhs) {
        return Verdict::fail("cocycle-identity", {{"sample", k}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}});
      }
    }
    Verdict v = Verdict::pass("cocycle-identity", {{"triples", cfg.cocycle_triples}});
    v.residual = 0.0;
    return v;
  }));
  return out;
}

inline std::vector<Verdict> algebra_suite(const SuiteConfig& cfg, const SuiteInputs& in) {
  std::vector<Verdict> out;
  out.push_back(detail::timed([&] { return jacobi_check(in.poincare, "jacobi-poincare"); }));
  out.push_back(detail::timed([&] { return jacobi_check(in.galilei, "jacobi-galilei"); }));
  out.push_back(detail::timed([&] {
    if (!in.galilei.find("M")) return Verdict::fail("centrality", {{"missing", "M"}});
    return centrality_check(in.galilei, "M", "centrality");
  }));
  out.push_back(detail::timed([&] {
    BchOptions opt;
    opt.tolerance = cfg.tolerances.bch_relative;
    opt.mass = to_double(cfg.mass);
    std::vector<std::string> generators;
    for (const auto& l : in.galilei.labels()) {
      if (l == "M") continue;
      try {
        (void)detail::one_parameter(l, 0.0);
        generators.push_back(l);
      } catch (const InputError&) {
      }
    }
    std::vector<Verdict> parts;
    for (const auto& x : generators) {
      for (const auto& y : generators) parts.push_back(bch_crosscheck(x, y, in.galilei, opt, x + "," + y));
    }
    return detail::fold("bch", parts, {{"generators", generators}});
  }));
  return out;
}

inline std::vector<Verdict> reps_suite(const SuiteConfig&) {
  std::vector<Verdict> out;
  out.push_back(detail::timed([&] {
    double worst = 0.0;
    nlohmann::json signs = nlohmann::json::object();
    for (int ts = 0; ts <= 6; ++ts) {
      const SpinRep rep(ts);
      const auto n = static_cast<Eigen::Index>(rep.dimension());
      const cdouble i(0, 1);
      const double s = rep.spin();
      const ComplexMatrix& x = rep.jx();
      const ComplexMatrix& y = rep.jy();
      const ComplexMatrix& z = rep.jz();
      for (const ComplexMatrix& r : {ComplexMatrix(x * y - y * x - i * z), ComplexMatrix(y * z - z * y - i * x),
                                     ComplexMatrix(z * x - x * z - i * y),
                                     ComplexMatrix(x * x + y * y + z * z - s * (s + 1) * ComplexMatrix::Identity(n, n))}) {
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
      const int sign = two_pi_sign(rep);
      signs[to_string(Rational(ts, 2))] = sign;
      if (sign != (ts % 2 == 0 ? 1 : -1)) {
        return Verdict::fail("reps", {{"spin", to_string(Rational(ts, 2))}, {"two_pi_sign", sign}});
      }
    }
    nlohmann::json d = {{"two_pi_sign", signs}};
    if (worst > 1e-12) return Verdict::fail("reps", {{"commutation_or_casimir_residual", worst}}, worst, d);
    Verdict v = Verdict::pass("reps", d);
    v.residual = worst;
    return v;
  }));
  out.push_back(detail::timed([&] {
    // T = D K with D = phase * exp(-i pi J_y): T^2 = D D* = (-1)^{2s}
    // whatever the phase; the phase i^{2s} makes D real or imaginary.
    nlohmann::json rows = nlohmann::json::array();
    double worst = 0.0;
    for (int ts = 0; ts <= 6; ++ts) {
      const SpinRep rep(ts);
      const auto n = static_cast<Eigen::Index>(rep.dimension());
      const cdouble phase = std::pow(cdouble(0, 1), ts);
      const ComplexMatrix d = timereversal_candidate(rep, phase);
      const double kramers = ts % 2 == 0 ? 1.0 : -1.0;
      const double r = (d * d.conjugate() - kramers * ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
      worst = std::max(worst, r);
      const auto cls = reality_class(d).kind;
      const auto expected = ts % 2 == 1 ? RealityClass::Kind::imaginary : RealityClass::Kind::real;
      rows.push_back({{"spin", to_string(Rational(ts, 2))},
                      {"class_phase_1", to_string(reality_class(timereversal_candidate(rep, 1.0)).kind)},
                      {"class_phase_i", to_string(reality_class(timereversal_candidate(rep, cdouble(0, 1))).kind)},
                      {"class_phase_i^2s", to_string(cls)},
                      {"T_squared", kramers}});
      if (cls != expected || r > 1e-12) {
        return Verdict::fail("reality-vs-spin", {{"spin", to_string(Rational(ts, 2))}, {"D_class", to_string(cls)}, {"residual", r}}, r);
      }
    }
    Verdict v = Verdict::pass("reality-vs-spin", {{"spins", rows}});
    v.residual = worst;
    return v;
  }));
  return out;
}

inline std::vector<Verdict> schwinger_suite(const SuiteConfig& cfg, const SuiteInputs& in) {
  std::vector<Verdict> out;
  std::mt19937_64 rng(cfg.seed ^ 0x5c4e1e5ULL);
  std::uniform_int_distribution<int> dim(1, 6);
  const double tol = cfg.tolerances.anti_hermitian;

  out.push_back(detail::timed([&] {
    std::vector<Verdict> parts;
    for (const auto& f : {fixtures::pauli_fermi(), fixtures::identity_bose()}) parts.push_back(check_anti_hermitian(f.u, tol));
    if (in.u_matrices) parts.push_back(check_anti_hermitian(*in.u_matrices, tol));
    return detail::fold("anti-hermitian", parts, {{"user_matrices", in.u_matrices.has_value()}});
  }));
  out.push_back(detail::timed([&] {
    std::vector<Verdict> parts;
    for (std::size_t k = 0; k < cfg.random_matrices; ++k) {
      UMatrixSet set = UMatrixSet::zeros(dim(rng));
      for (auto& m : set.u) m = fixtures::random_anti_hermitian(rng, set.dimension());
      parts.push_back(check_part_reality(set, tol));
    }
    if (in.u_matrices && check_anti_hermitian(*in.u_matrices, tol).passed()) parts.push_back(check_part_reality(*in.u_matrices, tol));
    return detail::fold("part-reality", parts, {{"random_anti_hermitian_sets", cfg.random_matrices}});
  }));
  out.push_back(detail::timed([&] {
    const Classification c = classify(fixtures::mixed_blocks(), tol);
    nlohmann::json d = to_json(c);
    const std::vector<ComponentClass> expected = {ComponentClass::fermi, ComponentClass::fermi,
                                                  ComponentClass::bose, ComponentClass::bose};
    const std::vector<std::vector<int>> blocks = {{0, 1}, {2, 3}};
    if (in.u_matrices) d["user_matrices"] = to_json(classify(*in.u_matrices, tol));
    if (c.components != expected || c.blocks != blocks) return Verdict::fail("classification", d, {}, d);
    return Verdict::pass("classification", d);
  }));
  out.push_back(detail::timed([&] {
    std::size_t nonzero_matched = 0;
    for (std::size_t k = 0; k < cfg.lagrangian_samples; ++k) {
      const int n = dim(rng);
      UMatrixSet sym = UMatrixSet::zeros(n);
      UMatrixSet anti = UMatrixSet::zeros(n);
      for (std::size_t mu = 0; mu < 4; ++mu) {
        std::tie(sym.u[mu], std::ignore) = decompose(fixtures::random_complex(rng, n));
        std::tie(std::ignore, anti.u[mu]) = decompose(fixtures::random_complex(rng, n));
      }
      const std::vector<Parity> even(static_cast<std::size_t>(n), Parity::commuting);
      const std::vector<Parity> odd(static_cast<std::size_t>(n), Parity::anticommuting);
      for (const auto& [set, parity, kind] : {std::tuple{&sym, &even, "symmetric/commuting"},
                                              std::tuple{&anti, &odd, "antisymmetric/anticommuting"}}) {
        const GradedPoly l = lagrangian_kin(*set, *parity);
        if (!l.is_zero()) {
          return Verdict::fail("lagrangian", {{"sample", k}, {"pairing", kind}, {"dimension", n}, {"words", l.size()}});
        }
      }
      if (!lagrangian_kin(sym, odd).is_zero() && !lagrangian_kin(anti, even).is_zero()) ++nonzero_matched;
    }
    return Verdict::pass("lagrangian", {{"samples", cfg.lagrangian_samples},
                                {"mismatched_pairings_vanish", true},
                                {"matched_pairings_nonzero", nonzero_matched}});
  }));
  out.push_back(detail::timed([&] {
    std::vector<Verdict> parts;
    for (const auto& f : {fixtures::pauli_fermi(), fixtures::identity_bose()}) {
      parts.push_back(check_time_reversal(f.d, f.u, f.cls, cfg.tolerances.conjugation));
    }
    return detail::fold("time-reversal", parts, {{"fixtures", {"pauli-fermi", "identity-bose"}}});
  }));
  out.push_back(detail::timed([&] {
    const auto f = fixtures::class_mismatch();
    return detail::expect_failure("time-reversal-mismatch", check_time_reversal(f.d, f.u, f.cls, cfg.tolerances.conjugation));
  }));
  out.push_back(detail::timed([&] {
    // D from the spin representation fixes the class through the reality clause.
    nlohmann::json rows = nlohmann::json::array();
    std::vector<int> spins = {0, 1, 2, 3, 4, 5, 6};
    for (int ts : spins) {
      const ComplexMatrix d = timereversal_candidate(SpinRep(ts), std::pow(cdouble(0, 1), ts));
      const auto d_class = reality_class(d).kind;
      const FieldClass cls = d_class == RealityClass::Kind::imaginary ? FieldClass::fermi : FieldClass::bose;
      Verdict v = spin_statistics_verdict(ts, cls, d_class);
      rows.push_back(v.details);
      if (!v.passed()) return Verdict::fail("spin-statistics", v.witness, {}, {{"spins", rows}});
    }
    return Verdict::pass("spin-statistics", {{"spins", rows}, {"configured_spin", to_string(Rational(cfg.twice_spin, 2))}});
  }));
  out.push_back(detail::timed([&] {
    int agree = 0;
    for (int ts : {0, 1}) {
      for (FieldClass cls : {FieldClass::fermi, FieldClass::bose}) {
        for (auto k : {RealityClass::Kind::real, RealityClass::Kind::imaginary}) {
          const bool expected = (ts == 1 && cls == FieldClass::fermi && k == RealityClass::Kind::imaginary) ||
                                (ts == 0 && cls == FieldClass::bose && k == RealityClass::Kind::real);
          const Verdict v = spin_statistics_verdict(ts, cls, k);
          if (v.passed() != expected) {
            return Verdict::fail("spin-statistics-table", {{"spin", to_string(Rational(ts, 2))},
                                                    {"field_class", to_string(cls)},
                                                    {"D_class", to_string(k)}});
          }
          ++agree;
        }
      }
    }
    return Verdict::pass("spin-statistics-table", {{"cases", agree}});
  }));
  return out;
}

inline std::vector<Verdict> nogo_suite(const SuiteConfig& cfg) {
  std::vector<Verdict> out;
  out.push_back(detail::timed([&] {
    HermiticityOptions opt;
    opt.samples = cfg.nogo_samples;
    opt.seed = cfg.seed;
    opt.lattice = cfg.lattice;
    return hermiticity_compatible(TransformLaw(cfg.mass, cfg.twice_spin), opt, "nogo");
  }));
  if (cfg.mass != 0) {
    out.push_back(detail::timed([&] { return hermitian_pair_check(cfg.field(), Statistics::bose); }));
    out.push_back(detail::timed([&] { return doubled_mass_analysis(cfg.mass, cfg.lattice); }));
  }
  return out;
}

struct SuiteResult {
  std::string suite;
  std::vector<Verdict> verdicts;

  friend bool operator==(const SuiteResult&, const SuiteResult&) = default;
};

inline std::vector<Verdict> run_suite(const std::string& name, const SuiteConfig& cfg, const SuiteInputs& in) {
  if (name == "counterexample") {
    if (cfg.mass == 0) throw ConfigError(0, "field.mass", "the counterexample suite needs a nonzero mass");
    return counterexample_suite(cfg);
  }
  if (name == "cocycle") return cocycle_suite(cfg);
  if (name == "algebra") return algebra_suite(cfg, in);
  if (name == "reps") return reps_suite(cfg);
  if (name == "schwinger") return schwinger_suite(cfg, in);
  if (name == "nogo") return nogo_suite(cfg);
  throw ConfigError(0, "run.suites", "unknown suite '" + name + "'");
}

/// Runs the configured suites in order. With `parallel` the suites run
/// concurrently and results are merged back in declared order.
inline std::vector<SuiteResult> run(const SuiteConfig& cfg) {
  const auto names = expand_suites(cfg.suites);
  if (cfg.mass == 0 && std::find(names.begin(), names.end(), "counterexample") != names.end()) {
    throw ConfigError(0, "field.mass", "the counterexample suite needs a nonzero mass");
  }
  const SuiteInputs inputs = load_inputs(cfg);
  std::vector<SuiteResult> out;
  if (!cfg.parallel) {
    for (const auto& n : names) out.push_back({n, run_suite(n, cfg, inputs)});
    return out;
  }
  std::vector<std::future<std::vector<Verdict>>> pending;
  for (const auto& n : names) {
    pending.push_back(std::async(std::launch::async, [&cfg, &inputs, n] { return run_suite(n, cfg, inputs); }));
  }
  for (std::size_t k = 0; k < names.size(); ++k) out.push_back({names[k], pending[k].get()});
  return out;
}

}  // namespace galstat
