#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/exact/rational.hpp"
#include "galstat/verdict.hpp"

namespace galstat {

/// Real structure constants [X, Y] = sum_Z c(X, Y, Z) Z over a labelled basis
/// (anti-hermitian generator normalization, so no factors of i are stored).
class AlgebraTable {
 public:
  explicit AlgebraTable(std::vector<std::string> labels)
      : labels_(std::move(labels)), constants_(labels_.size() * labels_.size() * labels_.size()) {
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw InputError("duplicate basis label");
  }

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t index(const std::string& label) const {
    if (auto i = find(label)) return *i;
    throw InputError("unknown basis label '" + label + "'");
  }

  const Rational& constant(std::size_t x, std::size_t y, std::size_t z) const {
    return constants_[offset(x, y, z)];
  }
  void set(std::size_t x, std::size_t y, std::size_t z, const Rational& c) { constants_[offset(x, y, z)] = c; }

  /// Sets [X, Y] = c Z and [Y, X] = -c Z.
  void set_antisymmetric(const std::string& x, const std::string& y, const std::string& z,
                         const Rational& c) {
    set(index(x), index(y), index(z), c);
    set(index(y), index(x), index(z), -c);
  }

  std::vector<Rational> bracket(std::size_t x, std::size_t y) const {
    std::vector<Rational> out(size());
    for (std::size_t z = 0; z < size(); ++z) out[z] = constant(x, y, z);
    return out;
  }

  bool bracket_is_zero(std::size_t x, std::size_t y) const {
    for (std::size_t z = 0; z < size(); ++z) {
      if (constant(x, y, z) != 0) return false;
    }
    return true;
  }

  /// "c1 Z1 + c2 Z2" (or "0")
  std::string format_combination(const std::vector<Rational>& coeffs) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t z = 0; z < coeffs.size(); ++z) {
      if (coeffs[z] == 0) continue;
      Rational c = coeffs[z];
      if (!first) {
        os << (c < 0 ? " - " : " + ");
        c = boost::multiprecision::abs(c);
      } else if (c < 0) {
        os << "-";
        c = -c;
      }
      if (c != 1) os << c.str() << " ";
      os << labels_[z];
      first = false;
    }
    return first ? "0" : os.str();
  }

  friend bool operator==(const AlgebraTable&, const AlgebraTable&) = default;

 private:
  std::size_t offset(std::size_t x, std::size_t y, std::size_t z) const {
    const std::size_t n = labels_.size();
    return (x * n + y) * n + z;
  }

  std::vector<std::string> labels_;
  std::vector<Rational> constants_;
};

namespace detail {

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

inline std::string indexed(const char* base, int i) { return base + std::to_string(i + 1); }

inline void add_rotation_brackets(AlgebraTable& t, bool with_boosts_covariant) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e == 0 || i > j) continue;
        t.set_antisymmetric(indexed("J", i), indexed("J", j), indexed("J", k), e);
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e == 0) continue;
        t.set_antisymmetric(indexed("J", i), indexed("P", j), indexed("P", k), e);
        if (with_boosts_covariant) t.set_antisymmetric(indexed("J", i), indexed("K", j), indexed("K", k), e);
      }
    }
  }
}

}  // namespace detail

/// {H, P_i, K_i, J_i, M} with M central and [K_i, P_j] = delta_ij M.
inline AlgebraTable extended_galilei_table() {
  AlgebraTable t({"H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3", "M"});
  detail::add_rotation_brackets(t, true);
  for (int i = 0; i < 3; ++i) {
    t.set_antisymmetric(detail::indexed("K", i), "H", detail::indexed("P", i), 1);
    t.set_antisymmetric(detail::indexed("K", i), detail::indexed("P", i), "M", 1);
  }
  return t;
}

/// {H, P_i, K_i, J_i}: [K_i, P_j] = delta_ij H, [K_i, K_j] = -eps_ijk J_k.
inline AlgebraTable poincare_table() {
  AlgebraTable t({"H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"});
  detail::add_rotation_brackets(t, true);
  for (int i = 0; i < 3; ++i) {
    t.set_antisymmetric(detail::indexed("K", i), "H", detail::indexed("P", i), 1);
    t.set_antisymmetric(detail::indexed("K", i), detail::indexed("P", i), "H", 1);
    for (int j = i + 1; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        int e = detail::levi_civita(i, j, k);
        if (e != 0) t.set_antisymmetric(detail::indexed("K", i), detail::indexed("K", j), detail::indexed("J", k), -e);
      }
    }
  }
  return t;
}

namespace detail {

inline bool is_label_token(const std::string& tok) {
  if (tok.empty() || !std::isalpha(static_cast<unsigned char>(tok[0]))) return false;
  return std::all_of(tok.begin(), tok.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

struct TableLine {
  int line = 0;
  std::string x, y;
  std::vector<std::pair<Rational, std::string>> rhs;
};

inline TableLine parse_table_line(const std::string& text, int line_no) {
  auto err = [&](const std::string& what) {
    return InputError("algebra table line " + std::to_string(line_no) + ": " + what);
  };
  std::istringstream is(text);
  std::vector<std::string> toks;
  for (std::string t; is >> t;) toks.push_back(t);
  if (toks.size() < 4 || toks[2] != "->") throw err("expected 'X Y -> c Z [+ c2 Z2 ...]'");
  TableLine out;
  out.line = line_no;
  out.x = toks[0];
  out.y = toks[1];
  if (!is_label_token(out.x) || !is_label_token(out.y)) throw err("bad generator label");
  Rational sign = 1;
  std::optional<Rational> coeff;
  bool expect_term = true;
  for (std::size_t k = 3; k < toks.size(); ++k) {
    std::string tok = toks[k];
    if (tok == "+" || tok == "-") {
      if (expect_term && k != 3) throw err("dangling sign");
      sign = tok == "-" ? -1 : 1;
      expect_term = true;
      continue;
    }
    if (tok == "0" && toks.size() == 4) return out;
    if (!expect_term) throw err("missing '+' or '-' between terms");
    if (tok.size() > 1 && tok[0] == '-' && is_label_token(tok.substr(1))) {
      sign = -sign;
      tok = tok.substr(1);
    }
    if (is_label_token(tok)) {
      out.rhs.emplace_back(sign * coeff.value_or(Rational(1)), tok);
      sign = 1;
      coeff.reset();
      expect_term = false;
      continue;
    }
    if (coeff) throw err("two coefficients in a row");
    try {
      coeff = parse_rational(tok);
    } catch (const InputError&) {
      throw err("unreadable token '" + tok + "'");
    }
  }
  if (expect_term) throw err("expression ends without a generator");
  return out;
}

}  // namespace detail

/// Reads the plain-text table format: optional "basis: X Y ..." header, then
/// one line per nonzero bracket "X Y -> c Z [+ c2 Z2 ...]". When only [X, Y]
/// is listed, [Y, X] = -[X, Y] is filled in. Lines starting with '#' are comments.
inline AlgebraTable parse_algebra_table(std::istream& in) {
  std::vector<std::string> basis;
  std::vector<detail::TableLine> lines;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (auto colon = raw.find("basis:"); colon != std::string::npos) {
      if (!basis.empty()) throw InputError("algebra table line " + std::to_string(line_no) + ": second basis line");
      std::istringstream is(raw.substr(colon + 6));
      for (std::string t; is >> t;) {
        if (!detail::is_label_token(t)) {
          throw InputError("algebra table line " + std::to_string(line_no) + ": bad label '" + t + "'");
        }
        basis.push_back(t);
      }
      continue;
    }
    lines.push_back(detail::parse_table_line(raw, line_no));
  }
  if (basis.empty()) {
    auto note = [&](const std::string& l) {
      if (std::find(basis.begin(), basis.end(), l) == basis.end()) basis.push_back(l);
    };
    for (const auto& l : lines) {
      note(l.x);
      note(l.y);
      for (const auto& term : l.rhs) note(term.second);
    }
  }
  AlgebraTable table(basis);
  std::set<std::pair<std::size_t, std::size_t>> explicit_pairs;
  for (const auto& l : lines) {
    auto lookup = [&](const std::string& label) {
      if (auto i = table.find(label)) return *i;
      throw InputError("algebra table line " + std::to_string(l.line) + ": label '" + label +
                       "' is not in the basis");
    };
    std::size_t x = lookup(l.x);
    std::size_t y = lookup(l.y);
    if (!explicit_pairs.insert({x, y}).second) {
      throw InputError("algebra table line " + std::to_string(l.line) + ": bracket listed twice");
    }
    std::vector<Rational> coeffs(table.size());
    for (const auto& [c, label] : l.rhs) coeffs[lookup(label)] += c;
    for (std::size_t z = 0; z < table.size(); ++z) {
      table.set(x, y, z, coeffs[z]);
      if (!explicit_pairs.count({y, x})) table.set(y, x, z, -coeffs[z]);
    }
  }
  return table;
}

inline AlgebraTable parse_algebra_table(const std::string& text) {
  std::istringstream is(text);
  return parse_algebra_table(is);
}

/// Writes every nonzero [X, Y] with X before Y in basis order.
inline std::string format_algebra_table(const AlgebraTable& t) {
  std::ostringstream os;
  os << "basis:";
  for (const auto& l : t.labels()) os << " " << l;
  os << "\n";
  for (std::size_t x = 0; x < t.size(); ++x) {
    for (std::size_t y = x + 1; y < t.size(); ++y) {
      if (t.bracket_is_zero(x, y)) continue;
      os << t.labels()[x] << " " << t.labels()[y] << " -> " << t.format_combination(t.bracket(x, y)) << "\n";
    }
  }
  return os.str();
}

/// Exact check of antisymmetry and of the Jacobi identity on every triple.
inline Verdict jacobi_check(const AlgebraTable& t, std::string label = "jacobi") {
  const std::size_t n = t.size();
  const auto& names = t.labels();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (t.constant(x, y, z) != -t.constant(y, x, z)) {
          return Verdict::fail(std::move(label), {{"antisymmetry", {names[x], names[y]}}});
        }
      }
    }
  }
  std::size_t violations = 0;
  nlohmann::json witness;
  std::vector<Rational> cyc(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z) {
        std::fill(cyc.begin(), cyc.end(), Rational(0));
        // [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]
        const std::size_t triple[3][3] = {{x, y, z}, {y, z, x}, {z, x, y}};
        for (const auto& tr : triple) {
          for (std::size_t w = 0; w < n; ++w) {
            const Rational& c1 = t.constant(tr[0], tr[1], w);
            if (c1 == 0) continue;
            for (std::size_t u = 0; u < n; ++u) cyc[u] += c1 * t.constant(w, tr[2], u);
          }
        }
        if (std::any_of(cyc.begin(), cyc.end(), [](const Rational& c) { return c != 0; })) {
          ++violations;
          if (witness.is_null()) {
            witness = {{"triple", {names[x], names[y], names[z]}},
                       {"jacobiator", t.format_combination(cyc)}};
          }
        }
      }
    }
  }
  nlohmann::json details = {{"dimension", n}, {"violations", violations}};
  if (violations > 0) return Verdict::fail(std::move(label), witness, {}, details);
  return Verdict::pass(std::move(label), details);
}

/// PASS iff [Z, X] = 0 for every X. When the basis carries K1..K3 and P1..P3,
/// also requires [K_i, P_j] = delta_ij Z.
inline Verdict centrality_check(const AlgebraTable& t, const std::string& central,
                                std::string label = "centrality") {
  const std::size_t zc = t.index(central);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (!t.bracket_is_zero(zc, x)) {
      return Verdict::fail(std::move(label),
                           {{"element", central},
                            {"bracket_with", t.labels()[x]},
                            {"value", t.format_combination(t.bracket(zc, x))}});
    }
  }
  nlohmann::json details = {{"element", central}};
  bool has_kp = true;
  for (int i = 0; i < 3; ++i) {
    has_kp = has_kp && t.find(detail::indexed("K", i)) && t.find(detail::indexed("P", i));
  }
  if (has_kp) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        auto value = t.bracket(t.index(detail::indexed("K", i)), t.index(detail::indexed("P", j)));
        std::vector<Rational> expected(t.size());
        if (i == j) expected[zc] = 1;
        if (value != expected) {
          return Verdict::fail(std::move(label),
                               {{"element", central},
                                {"bracket", {detail::indexed("K", i), detail::indexed("P", j)}},
                                {"value", t.format_combination(value)},
                                {"expected", t.format_combination(expected)}});
        }
      }
    }
    details["boost_translation_extension"] = true;
  }
  return Verdict::pass(std::move(label), details);
}

}  // namespace galstat
