#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "galstat/errors.hpp"

namespace galstat {

using ComplexMatrix = Eigen::MatrixXcd;
using cdouble = std::complex<double>;

/// Spin-s angular momentum matrices in the |s, m> basis, m = s, s-1, ..., -s
/// (Condon-Shortley phases). Spin is carried as 2s.
class SpinRep {
 public:
  explicit SpinRep(int twice_spin) : twice_spin_(twice_spin) {
    if (twice_spin < 0) throw InputError("spin must be non-negative");
    const int dim = twice_spin + 1;
    const double s = twice_spin / 2.0;
    ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
    jz_ = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      const double m = s - k;
      jz_(k, k) = m;
      // J+ |s, m> = sqrt(s(s+1) - m(m+1)) |s, m+1>, and |s, m+1> sits at row k-1
      if (k > 0) raise(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
    ComplexMatrix lower = raise.adjoint();
    jx_ = 0.5 * (raise + lower);
    jy_ = cdouble(0.0, -0.5) * (raise - lower);
  }

  int twice_spin() const { return twice_spin_; }
  double spin() const { return twice_spin_ / 2.0; }
  int dimension() const { return twice_spin_ + 1; }
  bool half_integer() const { return twice_spin_ % 2 == 1; }

  const ComplexMatrix& jx() const { return jx_; }
  const ComplexMatrix& jy() const { return jy_; }
  const ComplexMatrix& jz() const { return jz_; }

  /// n . J
  ComplexMatrix along(const Eigen::Vector3d& axis) const {
    return axis.x() * jx_ + axis.y() * jy_ + axis.z() * jz_;
  }

 private:
  int twice_spin_;
  ComplexMatrix jx_, jy_, jz_;
};

/// D(R) = exp(-i angle n.J). The axis must be a unit vector.
inline ComplexMatrix rotation_matrix(const SpinRep& rep, const Eigen::Vector3d& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw InputError("rotation axis must be a unit vector");
  ComplexMatrix generator = cdouble(0.0, -angle) * rep.along(axis);
  return generator.exp();
}

/// The scalar c with D(2 pi) = c I, checked about x, y and z; (-1)^{2s}.
inline int two_pi_sign(const SpinRep& rep) {
  const double two_pi = 2.0 * std::acos(-1.0);
  std::optional<int> sign;
  for (const Eigen::Vector3d& axis :
       {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()}) {
    ComplexMatrix d = rotation_matrix(rep, axis, two_pi);
    const cdouble c = d(0, 0);
    const ComplexMatrix residual = d - c * ComplexMatrix::Identity(rep.dimension(), rep.dimension());
    if (residual.cwiseAbs().maxCoeff() > 1e-10 || std::abs(std::abs(c.real()) - 1.0) > 1e-10 ||
        std::abs(c.imag()) > 1e-10) {
      throw ConsistencyFailure("2 pi rotation is not +-identity");
    }
    const int s = c.real() > 0 ? 1 : -1;
    if (sign && *sign != s) throw ConsistencyFailure("2 pi rotation sign depends on the axis");
    sign = s;
  }
  return *sign;
}

/// Real: M* = M. Imaginary: M* = -M. Neither carries the first entry that
/// contradicts the class suggested by the entries before it.
struct RealityClass {
  enum class Kind { real, imaginary, neither };
  Kind kind = Kind::real;
  std::optional<std::pair<int, int>> witness;

  /// e^{2 i pi k}: +1 for Real, -1 for Imaginary, 0 for Neither.
  int conjugation_sign() const {
    return kind == Kind::real ? 1 : kind == Kind::imaginary ? -1 : 0;
  }
};

inline const char* to_string(RealityClass::Kind k) {
  switch (k) {
    case RealityClass::Kind::real: return "Real";
    case RealityClass::Kind::imaginary: return "Imaginary";
    case RealityClass::Kind::neither: return "Neither";
  }
  return "Neither";
}

/// The zero matrix is classified Real.
inline RealityClass reality_class(const ComplexMatrix& m, double tol = 1e-12) {
  std::optional<RealityClass::Kind> tentative;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const bool re = std::abs(m(r, c).real()) > tol;
      const bool im = std::abs(m(r, c).imag()) > tol;
      if (!re && !im) continue;
      const auto here = std::make_pair(static_cast<int>(r), static_cast<int>(c));
      if (re && im) return {RealityClass::Kind::neither, here};
      const auto kind = re ? RealityClass::Kind::real : RealityClass::Kind::imaginary;
      if (!tentative) {
        tentative = kind;
      } else if (*tentative != kind) {
        return {RealityClass::Kind::neither, here};
      }
    }
  }
  return {tentative.value_or(RealityClass::Kind::real), std::nullopt};
}

/// convention_phase * exp(-i pi J_y): a time-reversal representative up to the
/// phase convention, which the caller chooses.
inline ComplexMatrix timereversal_candidate(const SpinRep& rep, cdouble convention_phase) {
  if (std::abs(std::abs(convention_phase) - 1.0) > 1e-12) throw InputError("convention phase must be unimodular");
  return convention_phase * rotation_matrix(rep, Eigen::Vector3d::UnitY(), std::acos(-1.0));
}

}  // namespace galstat
