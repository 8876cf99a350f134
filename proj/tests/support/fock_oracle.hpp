#pragma once

// Dense truncated Fock space on a handful of modes, used to check the
// symbolic normal-ordering engine against explicit matrix products.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "galstat/op_algebra.hpp"

namespace galstat::testing {

class FockOracle {
 public:
  using Vector = Eigen::VectorXcd;

  FockOracle(std::vector<Mode> modes, Statistics stats, int bose_levels = 8)
      : modes_(std::move(modes)), stats_(stats), levels_(stats == Statistics::fermi ? 2 : bose_levels) {
    dim_ = 1;
    for (std::size_t k = 0; k < modes_.size(); ++k) dim_ *= levels_;
  }

  int dimension() const { return dim_; }
  int levels() const { return levels_; }

  std::vector<int> occupations(int index) const {
    std::vector<int> n(modes_.size());
    for (std::size_t k = modes_.size(); k-- > 0;) {
      n[k] = index % levels_;
      index /= levels_;
    }
    return n;
  }

  int index(const std::vector<int>& n) const {
    int out = 0;
    for (int v : n) out = out * levels_ + v;
    return out;
  }

  Vector basis(const std::vector<int>& n) const {
    Vector v = Vector::Zero(dim_);
    v(index(n)) = 1.0;
    return v;
  }

  Vector vacuum() const { return basis(std::vector<int>(modes_.size(), 0)); }

  /// Applies one ladder; raising past the truncation throws so a test can
  /// never silently compare against a clipped state.
  Vector apply(const Ladder& l, const Vector& in) const {
    const auto it = std::find(modes_.begin(), modes_.end(), l.mode);
    if (it == modes_.end()) throw std::out_of_range("mode not in oracle");
    const auto k = static_cast<std::size_t>(it - modes_.begin());
    Vector out = Vector::Zero(dim_);
    for (int b = 0; b < dim_; ++b) {
      if (in(b) == 0.0) continue;
      std::vector<int> n = occupations(b);
      double amp = 1.0;
      if (stats_ == Statistics::fermi) {
        // Jordan-Wigner string over the modes before k
        for (std::size_t j = 0; j < k; ++j) amp *= n[j] ? -1.0 : 1.0;
      }
      if (l.kind == LadderKind::annihilate) {
        if (n[k] == 0) continue;
        amp *= std::sqrt(static_cast<double>(n[k]));
        --n[k];
      } else {
        if (n[k] + 1 >= levels_) {
          if (stats_ == Statistics::fermi) continue;
          throw std::overflow_error("truncation reached");
        }
        ++n[k];
        amp *= std::sqrt(static_cast<double>(n[k]));
      }
      out(index(n)) += amp * in(b);
    }
    return out;
  }

  Vector apply(const Word& w, Vector v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = apply(*it, v);
    return v;
  }

  /// Sum of c_w * w acting on v, for a symbolic expression.
  Vector apply(const OperatorExpr& e, const Vector& v) const {
    Vector out = Vector::Zero(dim_);
    for (const auto& [w, c] : e.terms()) out += c.to_complex() * apply(w, v);
    return out;
  }

 private:
  std::vector<Mode> modes_;
  Statistics stats_;
  int levels_;
  int dim_ = 1;
};

}  // namespace galstat::testing
