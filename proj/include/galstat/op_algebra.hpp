#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galstat/errors.hpp"
#include "galstat/exact/exact_complex.hpp"

namespace galstat {

enum class Species : std::uint8_t { particle, antiparticle };
enum class LadderKind : std::uint8_t { create, annihilate };

/// Grading of the ladder algebra: Bose uses commutators, Fermi anticommutators.
enum class Statistics : std::uint8_t { bose, fermi };

/// The s in [x, y]_s = x y + s y x: -1 for Bose, +1 for Fermi.
constexpr int bracket_sign(Statistics s) { return s == Statistics::bose ? -1 : +1; }

/// Sign picked up by exchanging two distinct ladder factors.
constexpr int exchange_sign(Statistics s) { return s == Statistics::bose ? +1 : -1; }

inline const char* to_string(Statistics s) { return s == Statistics::bose ? "bose" : "fermi"; }

/// Momentum lattice and spin multiplet the modes live on.
struct ModeSpace {
  int dimension = 1;
  int points_per_side = 2;
  int twice_spin = 0;

  void validate() const {
    if (dimension < 1 || dimension > 3) throw StructuralError("lattice dimension must be 1, 2 or 3");
    if (points_per_side < 2 || points_per_side % 2 != 0) {
      throw StructuralError("points_per_side must be even and >= 2");
    }
    if (twice_spin < 0) throw StructuralError("spin must be non-negative");
  }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;
};

/// Field order matters: the defaulted ordering is the canonical mode order
/// (species, spin component, lexicographic momentum).
struct Mode {
  Species species = Species::particle;
  int twice_spin_component = 0;
  std::array<int, 3> momentum{};

  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// Creators sort before annihilators, then by mode.
struct Ladder {
  LadderKind kind = LadderKind::annihilate;
  Mode mode;

  Ladder adjoint() const {
    return {kind == LadderKind::create ? LadderKind::annihilate : LadderKind::create, mode};
  }

  friend auto operator<=>(const Ladder&, const Ladder&) = default;
};

inline void validate_mode(const ModeSpace& space, const Mode& mode) {
  const int half = space.points_per_side / 2;
  for (int c = 0; c < 3; ++c) {
    const int n = mode.momentum[static_cast<std::size_t>(c)];
    if (c < space.dimension ? (n < -half || n >= half) : n != 0) {
      throw StructuralError("momentum index outside the lattice");
    }
  }
  const int lambda = mode.twice_spin_component;
  if (lambda < -space.twice_spin || lambda > space.twice_spin ||
      (space.twice_spin - lambda) % 2 != 0) {
    throw StructuralError("spin component outside the multiplet");
  }
}

inline std::string to_string(const Ladder& l) {
  std::ostringstream os;
  os << (l.mode.species == Species::particle ? "a" : "b");
  if (l.kind == LadderKind::create) os << "+";
  os << "(";
  for (int c = 0; c < 3; ++c) os << (c ? "," : "") << l.mode.momentum[static_cast<std::size_t>(c)];
  if (l.mode.twice_spin_component != 0) os << ";" << l.mode.twice_spin_component << "/2";
  os << ")";
  return os.str();
}

using Word = std::vector<Ladder>;

namespace detail {

/// Index of the first adjacent pair that violates normal order, or -1.
/// Under Fermi grading an adjacent repeated ladder also counts (it is zero).
inline int first_disorder(const Word& w, Statistics s) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i + 1] < w[i]) return static_cast<int>(i);
    if (s == Statistics::fermi && w[i] == w[i + 1]) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace detail

/// Polynomial in ladder operators, always kept in normal order.
class OperatorExpr {
 public:
  using TermMap = std::map<Word, ExactComplex>;

  OperatorExpr(ModeSpace space, Statistics stats) : space_(space), stats_(stats) {
    space_.validate();
  }

  static OperatorExpr scalar(ModeSpace space, Statistics stats, const ExactComplex& c) {
    OperatorExpr out(space, stats);
    out.accumulate(Word{}, c);
    return out;
  }

  static OperatorExpr ladder(ModeSpace space, Statistics stats, const Ladder& l,
                             const ExactComplex& c = ExactComplex(1)) {
    validate_mode(space, l.mode);
    OperatorExpr out(space, stats);
    out.accumulate(Word{l}, c);
    return out;
  }

  /// Builds a normal-ordered expression from arbitrary (unordered) words.
  static OperatorExpr from_words(ModeSpace space, Statistics stats,
                                 const std::vector<std::pair<Word, ExactComplex>>& words) {
    OperatorExpr out(space, stats);
    for (const auto& [w, c] : words) {
      for (const auto& l : w) validate_mode(space, l.mode);
      out.add_normal_ordered(w, c);
    }
    return out;
  }

  const ModeSpace& space() const { return space_; }
  Statistics statistics() const { return stats_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  ExactComplex coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ExactComplex() : it->second;
  }

  /// True when only the empty word survives (or the expression is zero).
  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  bool is_homogeneous_linear() const {
    for (const auto& [w, c] : terms_) {
      if (w.size() != 1) return false;
    }
    return !terms_.empty();
  }

  /// Adds c * w where w is already in normal order.
  void accumulate(const Word& w, const ExactComplex& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Rewrites c * w into normal order with the CCR/CAR rules and adds it.
  void add_normal_ordered(Word w, const ExactComplex& c) {
    std::vector<std::pair<Word, ExactComplex>> stack;
    stack.emplace_back(std::move(w), c);
    while (!stack.empty()) {
      auto [word, coeff] = std::move(stack.back());
      stack.pop_back();
      int i = detail::first_disorder(word, stats_);
      if (i < 0) {
        accumulate(word, coeff);
        continue;
      }
      const auto idx = static_cast<std::size_t>(i);
      if (word[idx] == word[idx + 1]) continue;  // Fermi: x x = 0
      const Ladder left = word[idx];
      const Ladder right = word[idx + 1];
      if (left.kind == LadderKind::annihilate && right.kind == LadderKind::create &&
          left.mode == right.mode) {
        // a a+ = (+/-) a+ a + 1
        Word contracted;
        contracted.reserve(word.size() - 2);
        contracted.insert(contracted.end(), word.begin(), word.begin() + i);
        contracted.insert(contracted.end(), word.begin() + i + 2, word.end());
        stack.emplace_back(std::move(contracted), coeff);
      }
      std::swap(word[idx], word[idx + 1]);
      stack.emplace_back(std::move(word),
                         exchange_sign(stats_) < 0 ? ExactComplex(-coeff) : std::move(coeff));
    }
  }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.space_ == b.space_ && a.stats_ == b.stats_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      os << (first ? "" : " + ") << "(" << c.to_string() << ")";
      for (const auto& l : w) os << " " << galstat::to_string(l);
      first = false;
    }
    return os.str();
  }

 private:
  ModeSpace space_;
  Statistics stats_;
  TermMap terms_;
};

inline void require_compatible(const OperatorExpr& a, const OperatorExpr& b) {
  if (!(a.space() == b.space())) throw StructuralError("operands live on different mode spaces");
  if (a.statistics() != b.statistics()) throw StructuralError("operands have different statistics");
}

inline OperatorExpr add(const OperatorExpr& a, const OperatorExpr& b) {
  require_compatible(a, b);
  OperatorExpr out = a;
  for (const auto& [w, c] : b.terms()) out.accumulate(w, c);
  return out;
}

inline OperatorExpr scale(const OperatorExpr& a, const ExactComplex& factor) {
  OperatorExpr out(a.space(), a.statistics());
  if (factor.is_zero()) return out;
  for (const auto& [w, c] : a.terms()) out.accumulate(w, c * factor);
  return out;
}

inline OperatorExpr subtract(const OperatorExpr& a, const OperatorExpr& b) {
  return add(a, scale(b, ExactComplex(-1)));
}

/// Re-normal-orders every word. The stored form is already canonical, so this
/// is the identity on valid expressions; it exists to make that checkable.
inline OperatorExpr canonicalize(const OperatorExpr& a) {
  OperatorExpr out(a.space(), a.statistics());
  for (const auto& [w, c] : a.terms()) out.add_normal_ordered(w, c);
  return out;
}

/// Reinterprets the normal-ordered words under another grading. Words that
/// repeat a ladder vanish under Fermi grading.
inline OperatorExpr regraded(const OperatorExpr& a, Statistics s) {
  OperatorExpr out(a.space(), s);
  for (const auto& [w, c] : a.terms()) out.add_normal_ordered(w, c);
  return out;
}

inline OperatorExpr multiply(const OperatorExpr& a, const OperatorExpr& b, Statistics s) {
  require_compatible(a, b);
  if (a.statistics() != s) throw StructuralError("operand statistics differ from requested grading");
  OperatorExpr out(a.space(), s);
  Word joined;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      joined.clear();
      joined.reserve(wa.size() + wb.size());
      joined.insert(joined.end(), wa.begin(), wa.end());
      joined.insert(joined.end(), wb.begin(), wb.end());
      ExactComplex c = ca * cb;
      if (wa.empty() || wb.empty() || wa.back() < wb.front()) {
        out.accumulate(joined, c);
      } else {
        out.add_normal_ordered(joined, c);
      }
    }
  }
  return out;
}

inline OperatorExpr adjoint(const OperatorExpr& a) {
  OperatorExpr out(a.space(), a.statistics());
  for (const auto& [w, c] : a.terms()) {
    Word reversed;
    reversed.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) reversed.push_back(it->adjoint());
    out.add_normal_ordered(std::move(reversed), c.conj());
  }
  return out;
}

/// [e, f]_s for single ladders; always a c-number in {-1, 0, 1}.
inline int ladder_bracket(const Ladder& e, const Ladder& f, Statistics s) {
  if (!(e.mode == f.mode) || e.kind == f.kind) return 0;
  if (e.kind == LadderKind::annihilate) return 1;      // [a, a+]_s = 1
  return s == Statistics::bose ? -1 : 1;                // [a+, a] = -1, {a+, a} = 1
}

namespace detail {

inline OperatorExpr bracket_by_products(const OperatorExpr& a, const OperatorExpr& b, Statistics s) {
  OperatorExpr ab = multiply(a, b, s);
  OperatorExpr ba = multiply(b, a, s);
  return add(ab, scale(ba, ExactComplex(bracket_sign(s))));
}

/// Bilinear evaluation for expressions linear in ladders: only factor pairs on
/// the same mode contribute.
inline OperatorExpr bracket_linear(const OperatorExpr& a, const OperatorExpr& b, Statistics s) {
  std::map<Mode, std::vector<std::pair<const Ladder*, const ExactComplex*>>> by_mode;
  for (const auto& [w, c] : b.terms()) by_mode[w.front().mode].emplace_back(&w.front(), &c);
  ExactComplex total;
  for (const auto& [w, c] : a.terms()) {
    auto it = by_mode.find(w.front().mode);
    if (it == by_mode.end()) continue;
    for (const auto& [lb, cb] : it->second) {
      int v = ladder_bracket(w.front(), *lb, s);
      if (v == 0) continue;
      ExactComplex term = c * *cb;
      total += v > 0 ? term : -term;
    }
  }
  return OperatorExpr::scalar(a.space(), s, total);
}

}  // namespace detail

/// a b - (+/-) b a: the commutator for Bose, the anticommutator for Fermi.
inline OperatorExpr bracket(const OperatorExpr& a, const OperatorExpr& b, Statistics s) {
  require_compatible(a, b);
  if (a.statistics() != s) throw StructuralError("operand statistics differ from requested grading");
  if (a.is_homogeneous_linear() && b.is_homogeneous_linear()) return detail::bracket_linear(a, b, s);
  return detail::bracket_by_products(a, b, s);
}

inline ExactComplex vacuum_expect(const OperatorExpr& a) { return a.coefficient(Word{}); }

inline OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) { return add(a, b); }
inline OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return subtract(a, b); }
inline OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  return multiply(a, b, a.statistics());
}
inline OperatorExpr operator*(const ExactComplex& c, const OperatorExpr& a) { return scale(a, c); }

}  // namespace galstat
