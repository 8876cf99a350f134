#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "galstat/galilei.hpp"
#include "galstat/reps.hpp"
#include "galstat/schwinger.hpp"

using namespace galstat;

namespace {

const cdouble I(0.0, 1.0);

ComplexMatrix mat2(cdouble a, cdouble b, cdouble c, cdouble d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const ComplexMatrix sx = mat2(0, 1, 1, 0);
const ComplexMatrix sy = mat2(0, -I, I, 0);
const ComplexMatrix eps = mat2(0, 1, -1, 0);

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd random_real(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = g(rng);
  return m;
}

ComplexMatrix random_anti_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  const ComplexMatrix b = random_real(rng, n).cast<cdouble>() + I * random_real(rng, n).cast<cdouble>();
  return b - b.adjoint();
}

Eigen::Vector3d random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  return v.normalized();
}

}  // namespace

TEST(SpinRep, AngularMomentumAlgebraUpToSpinThree) {
  for (int ts = 0; ts <= 6; ++ts) {
    const SpinRep rep(ts);
    const auto& x = rep.jx();
    const auto& y = rep.jy();
    const auto& z = rep.jz();
    EXPECT_LE(max_abs(x * y - y * x - I * z), 1e-12) << ts;
    EXPECT_LE(max_abs(y * z - z * y - I * x), 1e-12) << ts;
    EXPECT_LE(max_abs(z * x - x * z - I * y), 1e-12) << ts;
    const double s = rep.spin();
    const ComplexMatrix casimir = x * x + y * y + z * z;
    EXPECT_LE(max_abs(casimir - s * (s + 1) * ComplexMatrix::Identity(rep.dimension(), rep.dimension())), 1e-12);
    EXPECT_LE(max_abs(x - x.adjoint()), 1e-15);
  }
  EXPECT_THROW(SpinRep(-1), InputError);
}

TEST(SpinRep, HalfSpinMatchesPauliMatrices) {
  const SpinRep half(1);
  EXPECT_LE(max_abs(half.jx() - 0.5 * sx), 1e-15);
  EXPECT_LE(max_abs(half.jy() - 0.5 * sy), 1e-15);
}

TEST(SpinRep, TwoPiSign) {
  for (int ts = 0; ts <= 6; ++ts) EXPECT_EQ(two_pi_sign(SpinRep(ts)), ts % 2 == 0 ? 1 : -1) << ts;
}

TEST(SpinRep, RotationsFormARepresentation) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int ts : {1, 2, 3, 4}) {
    const SpinRep rep(ts);
    const auto n = rep.dimension();
    for (int k = 0; k < 10; ++k) {
      const Eigen::Vector3d axis = random_axis(rng);
      const double a = angle(rng);
      const double b = angle(rng);
      const ComplexMatrix da = rotation_matrix(rep, axis, a);
      EXPECT_LE(max_abs(da * rotation_matrix(rep, axis, b) - rotation_matrix(rep, axis, a + b)), 1e-12);
      EXPECT_LE(max_abs(rotation_matrix(rep, axis, -a) - da.adjoint()), 1e-12);
      EXPECT_LE(max_abs(da * da.adjoint() - ComplexMatrix::Identity(n, n)), 1e-12);
    }
  }
}

TEST(SpinRep, GeneratorsTransformAsAVector) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int ts : {1, 2, 5}) {
    const SpinRep rep(ts);
    const std::array<ComplexMatrix, 3> j = {rep.jx(), rep.jy(), rep.jz()};
    for (int k = 0; k < 5; ++k) {
      const Eigen::Vector3d axis = random_axis(rng);
      const double a = angle(rng);
      const ComplexMatrix d = rotation_matrix(rep, axis, a);
      const Mat3<double> r = rotation_axis_angle({axis.x(), axis.y(), axis.z()}, a);
      for (std::size_t i = 0; i < 3; ++i) {
        ComplexMatrix expected = ComplexMatrix::Zero(rep.dimension(), rep.dimension());
        for (std::size_t l = 0; l < 3; ++l) expected += r[i][l] * j[l];
        EXPECT_LE(max_abs(d.adjoint() * j[i] * d - expected), 1e-12);
      }
    }
  }
}

TEST(RealityClass, Examples) {
  EXPECT_EQ(reality_class(sx).kind, RealityClass::Kind::real);
  EXPECT_EQ(reality_class(sy).kind, RealityClass::Kind::imaginary);
  EXPECT_EQ(reality_class(ComplexMatrix::Zero(3, 3)).kind, RealityClass::Kind::real);
  const RealityClass mixed = reality_class(sx + sy);
  EXPECT_EQ(mixed.kind, RealityClass::Kind::neither);
  ASSERT_TRUE(mixed.witness.has_value());
  EXPECT_EQ(*mixed.witness, std::make_pair(0, 1));
  EXPECT_EQ(reality_class(sx).conjugation_sign(), 1);
  EXPECT_EQ(reality_class(sy).conjugation_sign(), -1);
  EXPECT_EQ(mixed.conjugation_sign(), 0);
  // entries below the tolerance do not count
  EXPECT_EQ(reality_class(sx + 1e-14 * sy).kind, RealityClass::Kind::real);
}

TEST(RealityClass, ConstructedMatricesAndPhaseFlip) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 1 + k % 5;
    const ComplexMatrix re = random_real(rng, n).cast<cdouble>();
    const ComplexMatrix im = I * random_real(rng, n).cast<cdouble>();
    EXPECT_EQ(reality_class(re).kind, RealityClass::Kind::real);
    EXPECT_EQ(reality_class(im).kind, RealityClass::Kind::imaginary);
    EXPECT_EQ(reality_class(re + im).kind, RealityClass::Kind::neither);
    EXPECT_EQ(reality_class(I * re).kind, RealityClass::Kind::imaginary);
    EXPECT_EQ(reality_class(I * im).kind, RealityClass::Kind::real);
  }
}

TEST(TimeReversal, ClassDependsOnThePhaseConvention) {
  for (int ts = 0; ts <= 6; ++ts) {
    const SpinRep rep(ts);
    const bool half = ts % 2 == 1;
    const ComplexMatrix unit_phase = timereversal_candidate(rep, 1.0);
    EXPECT_EQ(reality_class(unit_phase).kind, RealityClass::Kind::real) << ts;
    const ComplexMatrix spin_phase = timereversal_candidate(rep, std::pow(I, ts));
    EXPECT_EQ(reality_class(spin_phase).kind, half ? RealityClass::Kind::imaginary : RealityClass::Kind::real) << ts;
    for (cdouble phase : {cdouble(1.0), I, std::polar(1.0, 0.7)}) {
      const ComplexMatrix d = timereversal_candidate(rep, phase);
      const double sign = half ? -1.0 : 1.0;
      EXPECT_LE(max_abs(d * d.conjugate() - sign * ComplexMatrix::Identity(rep.dimension(), rep.dimension())), 1e-12);
    }
  }
  EXPECT_THROW(timereversal_candidate(SpinRep(1), 2.0), InputError);
}

TEST(Schwinger, AntiHermiticityExamples) {
  EXPECT_TRUE(check_anti_hermitian(UMatrixSet::spatial(I * sx)).passed());
  EXPECT_TRUE(check_anti_hermitian(UMatrixSet::zeros(3)).passed());
  const Verdict bad = check_anti_hermitian(UMatrixSet::single(2, sx));
  ASSERT_EQ(bad.status, Status::fail);
  EXPECT_EQ(bad.witness["mu"], 2);
  EXPECT_NEAR(*bad.residual, 2.0, 1e-15);
  UMatrixSet ragged = UMatrixSet::zeros(2);
  ragged.u[3] = ComplexMatrix::Zero(3, 3);
  EXPECT_THROW(check_anti_hermitian(ragged), InputError);
}

TEST(Schwinger, DecompositionParts) {
  const ComplexMatrix u = mat2(1, 2, I, 3);
  auto [s, a] = decompose(u);
  EXPECT_LE(max_abs(s + a - u), 0.0);
  EXPECT_LE(max_abs(s - s.transpose()), 0.0);
  EXPECT_LE(max_abs(a + a.transpose()), 0.0);
  EXPECT_THROW(decompose(ComplexMatrix::Zero(2, 3)), InputError);
}

TEST(Schwinger, AntiHermitianImpliesPartReality) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = 1 + k % 4;
    UMatrixSet set;
    for (auto& m : set.u) m = random_anti_hermitian(rng, n);
    ASSERT_TRUE(check_anti_hermitian(set).passed());
    EXPECT_TRUE(check_part_reality(set).passed());
  }
  // real symmetric is not anti-hermitian and fails on the symmetric part
  const Verdict v = check_part_reality(UMatrixSet::single(1, sx));
  ASSERT_EQ(v.status, Status::fail);
  EXPECT_EQ(v.witness["part"], "symmetric");
}

TEST(Schwinger, HermiticityChecksAreOrthogonallyInvariant) {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index n = 2 + k % 3;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_real(rng, n));
    const ComplexMatrix o = Eigen::MatrixXd(qr.householderQ()).cast<cdouble>();
    UMatrixSet set;
    UMatrixSet rotated;
    for (std::size_t mu = 0; mu < 4; ++mu) {
      set.u[mu] = k % 2 == 0 ? random_anti_hermitian(rng, n) : random_real(rng, n).cast<cdouble>();
      rotated.u[mu] = o * set.u[mu] * o.transpose();
    }
    EXPECT_EQ(check_anti_hermitian(set, 1e-10).status, check_anti_hermitian(rotated, 1e-10).status);
    EXPECT_EQ(check_part_reality(set, 1e-10).status, check_part_reality(rotated, 1e-10).status);
  }
}

TEST(Schwinger, ClassifyExamples) {
  const Classification fermi = classify(UMatrixSet::spatial(I * sx));
  EXPECT_EQ(fermi.components, std::vector<ComponentClass>(2, ComponentClass::fermi));
  EXPECT_TRUE(fermi.consistent());
  const Classification bose = classify(UMatrixSet::spatial(eps));
  EXPECT_EQ(bose.components, std::vector<ComponentClass>(2, ComponentClass::bose));

  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = I * sx;
  m.block(2, 2, 2, 2) = eps;
  const Classification mixed = classify(UMatrixSet::spatial(m));
  EXPECT_EQ(mixed.components, (std::vector<ComponentClass>{ComponentClass::fermi, ComponentClass::fermi,
                                                            ComponentClass::bose, ComponentClass::bose}));
  EXPECT_EQ(mixed.blocks, (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
  EXPECT_TRUE(mixed.consistent());

  // both sectors touch component 0
  ComplexMatrix c = ComplexMatrix::Zero(3, 3);
  c(0, 1) = c(1, 0) = I;
  c(0, 2) = 1;
  c(2, 0) = -1;
  const Classification conflict = classify(UMatrixSet::single(0, c));
  EXPECT_EQ(conflict.components[0], ComponentClass::conflict);
  EXPECT_EQ(conflict.conflicts, std::vector<int>{0});
  EXPECT_EQ(to_json(conflict)["components"][1], "Fermi");

  const Classification free = classify(UMatrixSet::zeros(2));
  EXPECT_EQ(free.components, std::vector<ComponentClass>(2, ComponentClass::unconstrained));
  EXPECT_EQ(free.blocks.size(), 2u);
}

TEST(Lagrangian, TwoWordExample) {
  const GradedPoly l = lagrangian_kin(UMatrixSet::single(0, I * sx), {Parity::anticommuting, Parity::anticommuting});
  ASSERT_EQ(l.size(), 2u);
  const GradedSymbol chi0{-1, 0, Parity::anticommuting};
  const GradedSymbol chi1{-1, 1, Parity::anticommuting};
  const GradedSymbol d_chi0{0, 0, Parity::anticommuting};
  const GradedSymbol d_chi1{0, 1, Parity::anticommuting};
  EXPECT_EQ(l.terms().at({chi0, d_chi1}), I);
  EXPECT_EQ(l.terms().at({chi1, d_chi0}), I);
}

TEST(Lagrangian, MismatchedPairingsCancel) {
  std::mt19937_64 rng(36);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 1 + k % 4;
    const ComplexMatrix b = random_anti_hermitian(rng, n);
    const auto [sym, anti] = decompose(b);
    const std::vector<Parity> odd(static_cast<std::size_t>(n), Parity::anticommuting);
    const std::vector<Parity> even(static_cast<std::size_t>(n), Parity::commuting);
    const int mu = k % 4;
    EXPECT_TRUE(lagrangian_kin(UMatrixSet::single(mu, anti), odd).is_zero());
    EXPECT_TRUE(lagrangian_kin(UMatrixSet::single(mu, sym), even).is_zero());
    EXPECT_FALSE(lagrangian_kin(UMatrixSet::single(mu, sym), odd).is_zero());
    if (n > 1) EXPECT_FALSE(lagrangian_kin(UMatrixSet::single(mu, anti), even).is_zero());
  }
}

TEST(GradedPoly, ExchangeSignsAndNilpotence) {
  const GradedSymbol a{-1, 0, Parity::anticommuting};
  const GradedSymbol b{-1, 1, Parity::anticommuting};
  const GradedSymbol c{-1, 2, Parity::commuting};
  GradedPoly p;
  p.add({b, a}, 1.0);
  EXPECT_EQ(p.terms().at({a, b}), cdouble(-1.0));
  p.add({a, b}, 1.0);
  EXPECT_TRUE(p.is_zero());
  p.add({a, a}, 1.0);
  EXPECT_TRUE(p.is_zero());
  p.add({c, c}, 2.0);
  p.add({c, a}, 1.0);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.terms().at({a, c}), cdouble(1.0));
}

TEST(Schwinger, TimeReversalFixtures) {
  const Verdict fermi = check_time_reversal(sy, UMatrixSet::spatial(I * sx), FieldClass::fermi);
  EXPECT_TRUE(fermi.passed()) << nlohmann::json(fermi).dump();

  const Verdict bose = check_time_reversal(ComplexMatrix::Identity(2, 2), UMatrixSet::spatial(eps), FieldClass::bose);
  EXPECT_TRUE(bose.passed());

  // i sigma_y is real: conjugation holds for every mu, the reality clause fails
  const Verdict mismatch = check_time_reversal(I * sy, UMatrixSet::spatial(I * sx), FieldClass::fermi);
  ASSERT_EQ(mismatch.status, Status::fail);
  EXPECT_EQ(mismatch.details["reality_clause"], false);
  EXPECT_EQ(mismatch.details["D_class"], "Real");
  for (const auto& row : mismatch.details["per_mu"]) EXPECT_EQ(row["ok"], true);

  // identity D leaves the symmetric spatial part unchanged, which is the wrong sign
  const Verdict wrong_sign = check_time_reversal(ComplexMatrix::Identity(2, 2), UMatrixSet::spatial(I * sx), FieldClass::bose);
  ASSERT_EQ(wrong_sign.status, Status::fail);
  EXPECT_EQ(wrong_sign.witness["mu"], 1);

  // the time component picks up the opposite sign
  EXPECT_TRUE(check_time_reversal(sy, UMatrixSet::single(0, I * sx), FieldClass::fermi).status == Status::fail);
  EXPECT_TRUE(check_time_reversal(ComplexMatrix::Identity(2, 2), UMatrixSet::single(0, I * sx), FieldClass::fermi)
                  .details["per_mu"][0]["ok"]
                  .get<bool>());

  EXPECT_THROW(check_time_reversal(ComplexMatrix::Zero(2, 2), UMatrixSet::zeros(2), FieldClass::bose), InputError);
  EXPECT_THROW(check_time_reversal(ComplexMatrix::Identity(3, 3), UMatrixSet::zeros(2), FieldClass::bose), InputError);
}

TEST(Schwinger, SpinStatisticsTruthTable) {
  using K = RealityClass::Kind;
  for (int ts = 0; ts <= 5; ++ts) {
    for (FieldClass cls : {FieldClass::fermi, FieldClass::bose}) {
      for (K k : {K::real, K::imaginary, K::neither}) {
        const bool half = ts % 2 == 1;
        const bool expected = (half && cls == FieldClass::fermi && k == K::imaginary) ||
                              (!half && cls == FieldClass::bose && k == K::real);
        const Verdict v = spin_statistics_verdict(ts, cls, k);
        EXPECT_EQ(v.passed(), expected) << ts << " " << to_string(cls) << " " << to_string(k);
        if (!expected) EXPECT_FALSE(v.details["violated"].empty());
      }
    }
  }
  const Verdict only_spin = spin_statistics_verdict(1, FieldClass::bose, K::real);
  EXPECT_EQ(only_spin.details["violated"].size(), 1u);
}

TEST(UMatrixFile, ParsesAndRejects) {
  std::istringstream ok("# spin 1/2\ndimension 2\n0 0 0 0\n0 i i 0\n0 i i 0\n0 i i 0\n");
  const UMatrixSet set = parse_umatrix_set(ok);
  EXPECT_EQ(set.dimension(), 2);
  EXPECT_LE(max_abs(set.u[2] - I * sx), 0.0);
  EXPECT_LE(max_abs(set.u[0]), 0.0);

  std::istringstream bare("1\n1/2i -1 2.5 0\n");
  EXPECT_EQ(parse_umatrix_set(bare).u[0](0, 0), cdouble(0.0, 0.5));

  std::istringstream short_file("2\n0 0 0\n");
  EXPECT_THROW(parse_umatrix_set(short_file), InputError);
  std::istringstream bad_token("1\n0 0 x 0\n");
  EXPECT_THROW(parse_umatrix_set(bad_token), InputError);
  std::istringstream no_header("");
  EXPECT_THROW(parse_umatrix_set(no_header), InputError);
}
