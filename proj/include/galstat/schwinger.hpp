#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/exact/complex_literal.hpp"
#include "galstat/reps.hpp"
#include "galstat/verdict.hpp"

namespace galstat {

/// The family U^0..U^3 of numerical matrices in pi^mu = chi U^mu.
struct UMatrixSet {
  std::array<ComplexMatrix, 4> u;

  static UMatrixSet zeros(Eigen::Index n) {
    UMatrixSet s;
    for (auto& m : s.u) m = ComplexMatrix::Zero(n, n);
    return s;
  }
  /// U^mu = m for the given mu, zero otherwise.
  static UMatrixSet single(int mu, const ComplexMatrix& m) {
    UMatrixSet s = zeros(m.rows());
    s.u[static_cast<std::size_t>(mu)] = m;
    return s;
  }
  /// U^0 = 0, U^1 = U^2 = U^3 = m.
  static UMatrixSet spatial(const ComplexMatrix& m) {
    UMatrixSet s = zeros(m.rows());
    for (std::size_t mu = 1; mu < 4; ++mu) s.u[mu] = m;
    return s;
  }

  Eigen::Index dimension() const { return u[0].rows(); }

  void validate() const {
    for (const auto& m : u) {
      if (m.rows() != dimension() || m.cols() != dimension()) {
        throw InputError("U matrices must share one square dimension");
      }
    }
  }
};

/// Plain-text form: the dimension n, then U^0..U^3 row-major as 4 n^2
/// complex tokens "re+imi". '#' starts a comment.
inline UMatrixSet parse_umatrix_set(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    for (std::string t; is >> t;) tokens.push_back(t);
  }
  std::size_t pos = 0;
  if (!tokens.empty() && tokens[0] == "dimension") ++pos;
  if (pos >= tokens.size()) throw InputError("U matrix file: missing dimension header");
  long n = 0;
  try {
    n = std::stol(tokens[pos++]);
  } catch (const std::exception&) {
    throw InputError("U matrix file: dimension header is not an integer");
  }
  if (n < 1) throw InputError("U matrix file: dimension must be positive");
  const std::size_t expected = 4 * static_cast<std::size_t>(n * n);
  if (tokens.size() - pos != expected) {
    throw InputError("U matrix file: expected " + std::to_string(expected) + " entries, found " +
                     std::to_string(tokens.size() - pos));
  }
  UMatrixSet set = UMatrixSet::zeros(n);
  for (auto& m : set.u) {
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        auto [re, im] = parse_complex_literal(tokens[pos++]);
        m(r, c) = cdouble(to_double(re), to_double(im));
      }
    }
  }
  return set;
}

/// Anti-hermiticity U^mu+ = -U^mu; FAIL names the worst entry.
inline Verdict check_anti_hermitian(const UMatrixSet& set, double tol = 1e-12) {
  set.validate();
  double worst = 0.0;
  nlohmann::json at;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    ComplexMatrix defect = set.u[mu] + set.u[mu].adjoint();
    for (Eigen::Index r = 0; r < defect.rows(); ++r) {
      for (Eigen::Index c = 0; c < defect.cols(); ++c) {
        if (std::abs(defect(r, c)) > worst) {
          worst = std::abs(defect(r, c));
          at = {{"mu", mu}, {"row", r}, {"col", c}};
        }
      }
    }
  }
  if (worst > tol) return Verdict::fail("anti-hermitian", at, worst);
  Verdict v = Verdict::pass("anti-hermitian");
  v.residual = worst;
  return v;
}

/// U = U_S + U_A with U_S = (U + U^T)/2 and U_A = (U - U^T)/2.
template <class Derived>
auto decompose(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  if (u.rows() != u.cols()) throw InputError("decompose needs a square matrix");
  Plain sym = (u + u.transpose()) / Scalar(2);
  Plain anti = (u - u.transpose()) / Scalar(2);
  return std::pair<Plain, Plain>{std::move(sym), std::move(anti)};
}

/// Symmetric parts imaginary, antisymmetric parts real.
inline Verdict check_part_reality(const UMatrixSet& set, double tol = 1e-12) {
  set.validate();
  double worst = 0.0;
  nlohmann::json at;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    auto [sym, anti] = decompose(set.u[mu]);
    const double ds = (sym.conjugate() + sym).cwiseAbs().maxCoeff();
    const double da = (anti.conjugate() - anti).cwiseAbs().maxCoeff();
    if (ds > worst) {
      worst = ds;
      at = {{"mu", mu}, {"part", "symmetric"}};
    }
    if (da > worst) {
      worst = da;
      at = {{"mu", mu}, {"part", "antisymmetric"}};
    }
  }
  if (worst > tol) return Verdict::fail("part-reality", at, worst);
  Verdict v = Verdict::pass("part-reality");
  v.residual = worst;
  return v;
}

/// Fermi fields pair with symmetric U, Bose fields with antisymmetric U.
enum class FieldClass { fermi, bose };

inline const char* to_string(FieldClass c) { return c == FieldClass::fermi ? "Fermi" : "Bose"; }

enum class ComponentClass { fermi, bose, unconstrained, conflict };

inline const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::fermi: return "Fermi";
    case ComponentClass::bose: return "Bose";
    case ComponentClass::unconstrained: return "unconstrained";
    case ComponentClass::conflict: return "conflict";
  }
  return "conflict";
}

struct Classification {
  std::vector<ComponentClass> components;
  std::vector<std::vector<int>> blocks;  // connected components of the coupling graph
  std::vector<int> conflicts;            // components coupled through both sectors

  bool consistent() const { return conflicts.empty(); }
};

/// Assigns each field component a class from which sector of U couples it.
inline Classification classify(const UMatrixSet& set, double tol = 1e-12) {
  set.validate();
  const auto n = static_cast<int>(set.dimension());
  std::vector<bool> via_sym(static_cast<std::size_t>(n)), via_anti(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& m : set.u) {
    auto [sym, anti] = decompose(m);
    for (int r = 0; r < n; ++r) {
      for (int l = 0; l < n; ++l) {
        const bool s = std::abs(sym(r, l)) > tol;
        const bool a = std::abs(anti(r, l)) > tol;
        if (s) via_sym[static_cast<std::size_t>(r)] = via_sym[static_cast<std::size_t>(l)] = true;
        if (a) via_anti[static_cast<std::size_t>(r)] = via_anti[static_cast<std::size_t>(l)] = true;
        if (s || a) parent[static_cast<std::size_t>(root(r))] = root(l);
      }
    }
  }
  Classification out;
  std::map<int, std::vector<int>> groups;
  for (int r = 0; r < n; ++r) {
    const auto rr = static_cast<std::size_t>(r);
    ComponentClass c = via_sym[rr] && via_anti[rr] ? ComponentClass::conflict
                       : via_sym[rr]               ? ComponentClass::fermi
                       : via_anti[rr]              ? ComponentClass::bose
                                                   : ComponentClass::unconstrained;
    out.components.push_back(c);
    if (c == ComponentClass::conflict) out.conflicts.push_back(r);
    groups[root(r)].push_back(r);
  }
  for (auto& [key, members] : groups) out.blocks.push_back(std::move(members));
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

inline nlohmann::json to_json(const Classification& c) {
  nlohmann::json comps = nlohmann::json::array();
  for (auto k : c.components) comps.push_back(to_string(k));
  return {{"components", comps}, {"blocks", c.blocks}, {"conflicts", c.conflicts}};
}

// ---------------------------------------------------------------------------
// Graded symbols for the kinematical Lagrangian

enum class Parity { commuting, anticommuting };

/// chi^index, or d_mu chi^index when derivative = mu >= 0.
struct GradedSymbol {
  int derivative = -1;
  int index = 0;
  Parity parity = Parity::commuting;

  friend auto operator<=>(const GradedSymbol&, const GradedSymbol&) = default;
};

inline std::string to_string(const GradedSymbol& s) {
  std::string out = s.derivative < 0 ? "" : "d" + std::to_string(s.derivative);
  return out + "chi" + std::to_string(s.index);
}

/// Sum of words in graded symbols, each word sorted with its exchange sign.
class GradedPoly {
 public:
  using Word = std::vector<GradedSymbol>;

  void add(Word w, cdouble c) {
    int sign = 1;
    for (std::size_t pass = 0; pass < w.size(); ++pass) {
      for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        if (w[k + 1] < w[k]) {
          if (w[k].parity == Parity::anticommuting && w[k + 1].parity == Parity::anticommuting) sign = -sign;
          std::swap(w[k], w[k + 1]);
        }
      }
    }
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k] == w[k + 1] && w[k].parity == Parity::anticommuting) return;
    }
    auto [it, inserted] = terms_.try_emplace(std::move(w), cdouble(0.0));
    it->second += static_cast<double>(sign) * c;
    if (it->second == cdouble(0.0)) terms_.erase(it);
  }

  const std::map<Word, cdouble>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      os << (first ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
      for (const auto& s : w) os << " " << galstat::to_string(s);
      first = false;
    }
    return os.str();
  }

 private:
  std::map<Word, cdouble> terms_;
};

/// L_kin = 1/2 sum_mu [chi^r U^mu_rl d_mu chi^l - d_mu chi^r U^mu_rl chi^l]
/// with the given parity per component.
inline GradedPoly lagrangian_kin(const UMatrixSet& set, const std::vector<Parity>& parity) {
  set.validate();
  const auto n = static_cast<int>(set.dimension());
  if (static_cast<int>(parity.size()) != n) throw InputError("one parity per field component is required");
  GradedPoly out;
  for (int mu = 0; mu < 4; ++mu) {
    const auto& m = set.u[static_cast<std::size_t>(mu)];
    for (int r = 0; r < n; ++r) {
      for (int l = 0; l < n; ++l) {
        const cdouble c = m(r, l);
        if (c == cdouble(0.0)) continue;
        const GradedSymbol chi_r{-1, r, parity[static_cast<std::size_t>(r)]};
        const GradedSymbol chi_l{-1, l, parity[static_cast<std::size_t>(l)]};
        const GradedSymbol dchi_r{mu, r, parity[static_cast<std::size_t>(r)]};
        const GradedSymbol dchi_l{mu, l, parity[static_cast<std::size_t>(l)]};
        out.add({chi_r, dchi_l}, 0.5 * c);
        out.add({dchi_r, chi_l}, -0.5 * c);
      }
    }
  }
  return out;
}

/// D U^mu D^-1 = (-1)^{delta_mu0} (+/-) U^mu with + on the antisymmetric and
/// - on the symmetric part, plus the reality clause: D imaginary for Fermi,
/// real for Bose. Outcomes are reported per mu.
inline Verdict check_time_reversal(const ComplexMatrix& d, const UMatrixSet& set, FieldClass cls, double tol = 1e-10) {
  set.validate();
  if (d.rows() != set.dimension() || d.cols() != d.rows()) throw InputError("D must match the U dimension");
  Eigen::FullPivLU<ComplexMatrix> lu(d);
  if (!lu.isInvertible()) throw InputError("D must be invertible");
  const ComplexMatrix d_inv = lu.inverse();
  double worst = 0.0;
  nlohmann::json per_mu = nlohmann::json::array();
  nlohmann::json witness;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const double time_sign = mu == 0 ? -1.0 : 1.0;
    auto [sym, anti] = decompose(set.u[mu]);
    const double rs = (d * sym * d_inv - (time_sign * -1.0) * sym).cwiseAbs().maxCoeff();
    const double ra = (d * anti * d_inv - (time_sign * 1.0) * anti).cwiseAbs().maxCoeff();
    const double r = std::max(rs, ra);
    worst = std::max(worst, r);
    per_mu.push_back({{"mu", mu}, {"symmetric_residual", rs}, {"antisymmetric_residual", ra}, {"ok", r <= tol}});
    if (r > tol && witness.is_null()) witness = {{"mu", mu}, {"residual", r}};
  }
  const RealityClass rc = reality_class(d);
  const auto needed = cls == FieldClass::fermi ? RealityClass::Kind::imaginary : RealityClass::Kind::real;
  const bool reality_ok = rc.kind == needed;
  nlohmann::json details = {{"per_mu", per_mu},
                            {"field_class", to_string(cls)},
                            {"D_class", to_string(rc.kind)},
                            {"reality_clause", reality_ok}};
  if (!reality_ok && witness.is_null()) {
    witness = {{"reality_clause", {{"D_class", to_string(rc.kind)}, {"required", to_string(needed)}}}};
  }
  if (!witness.is_null()) return Verdict::fail("time-reversal", witness, worst, details);
  Verdict v = Verdict::pass("time-reversal", details);
  v.residual = worst;
  return v;
}

/// Half-integer spin with Fermi class and imaginary D, or integer spin with
/// Bose class and real D. FAIL names the clauses that disagree.
inline Verdict spin_statistics_verdict(int twice_spin, FieldClass cls, RealityClass::Kind d_class) {
  const bool half = twice_spin % 2 == 1;
  const bool reality_matches_class =
      (cls == FieldClass::fermi && d_class == RealityClass::Kind::imaginary) ||
      (cls == FieldClass::bose && d_class == RealityClass::Kind::real);
  const bool reality_matches_spin = (half && d_class == RealityClass::Kind::imaginary) ||
                                    (!half && d_class == RealityClass::Kind::real);
  nlohmann::json details = {{"spin", std::to_string(twice_spin) + "/2"},
                            {"field_class", to_string(cls)},
                            {"D_class", to_string(d_class)}};
  if (reality_matches_class && reality_matches_spin) return Verdict::pass("spin-statistics", details);
  nlohmann::json violated = nlohmann::json::array();
  if (!reality_matches_class) violated.push_back("D reality vs field class");
  if (!reality_matches_spin) violated.push_back("D reality vs spin");
  details["violated"] = violated;
  return Verdict::fail("spin-statistics", details, {}, details);
}

}  // namespace galstat
