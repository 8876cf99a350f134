#pragma once

#include <random>
#include <vector>

#include "galstat/op_algebra.hpp"

namespace galstat::testing {

inline ModeSpace small_space() { return {1, 4, 0}; }

/// Up to three modes, mixing species so the grading between species is exercised.
inline std::vector<Mode> small_modes(int count) {
  const std::vector<Mode> all = {{Species::particle, 0, {-1, 0, 0}},
                                 {Species::particle, 0, {1, 0, 0}},
                                 {Species::antiparticle, 0, {0, 0, 0}}};
  return {all.begin(), all.begin() + count};
}

struct ExprSampler {
  explicit ExprSampler(std::uint64_t seed) : rng(seed) {}

  std::mt19937_64 rng;

  ExactComplex coefficient() {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 4);
    Rational re(num(rng), den(rng));
    Rational im(num(rng), den(rng));
    if (re == 0 && im == 0) re = 1;
    return ExactComplex::gaussian(re, im);
  }

  Ladder ladder(const std::vector<Mode>& modes) {
    std::uniform_int_distribution<std::size_t> m(0, modes.size() - 1);
    std::bernoulli_distribution create(0.5);
    return {create(rng) ? LadderKind::create : LadderKind::annihilate, modes[m(rng)]};
  }

  /// c0 + sum of one to three ladders with random coefficients.
  OperatorExpr factor(const std::vector<Mode>& modes, Statistics s) {
    OperatorExpr f(small_space(), s);
    std::uniform_int_distribution<int> terms(1, 3);
    std::bernoulli_distribution with_scalar(0.2);
    if (with_scalar(rng)) f = f + OperatorExpr::scalar(small_space(), s, coefficient());
    for (int k = terms(rng); k > 0; --k) f = f + OperatorExpr::ladder(small_space(), s, ladder(modes), coefficient());
    return f;
  }

  std::vector<OperatorExpr> factors(const std::vector<Mode>& modes, Statistics s, int max_factors = 4) {
    std::uniform_int_distribution<int> count(1, max_factors);
    std::vector<OperatorExpr> out;
    for (int k = count(rng); k > 0; --k) out.push_back(factor(modes, s));
    return out;
  }

  int mode_count() { return std::uniform_int_distribution<int>(1, 3)(rng); }
  Statistics statistics() { return std::bernoulli_distribution(0.5)(rng) ? Statistics::fermi : Statistics::bose; }
};

inline OperatorExpr product(const std::vector<OperatorExpr>& fs, Statistics s) {
  OperatorExpr out = OperatorExpr::scalar(fs.front().space(), s, 1);
  for (const auto& f : fs) out = multiply(out, f, s);
  return out;
}

}  // namespace galstat::testing
