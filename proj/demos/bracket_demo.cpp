// Equal-time brackets of a Galilean scalar field on a small periodic lattice,
// once with unequal and once with equal particle/antiparticle weights.
#include <iostream>

#include "galstat/field_kinematics.hpp"

int main() {
  using namespace galstat;

  FieldSpec spec;
  spec.lattice = {1, 8, 1};
  const auto x0 = site_point(spec.lattice, {0, 0, 0});
  const auto x1 = site_point(spec.lattice, {3, 0, 0});

  for (const auto& [alpha, beta] : {std::pair{ExactComplex(Rational(3, 5)), ExactComplex(Rational(4, 5))},
                                    std::pair{ExactComplex::sqrt(Rational(1, 2)), ExactComplex::sqrt(Rational(1, 2))}}) {
    spec.alpha = alpha;
    spec.beta = beta;
    std::cout << "alpha = " << alpha.to_string() << ", beta = " << beta.to_string() << "\n";
    for (Statistics s : {Statistics::bose, Statistics::fermi}) {
      std::cout << "  " << to_string(s) << ": [xi(0), xi+(0)] = " << equal_time_bracket(spec, x0, x0, s).to_string()
                << ", [xi(0), xi+(3/8)] = " << equal_time_bracket(spec, x0, x1, s).to_string() << "\n";
    }
  }
}
