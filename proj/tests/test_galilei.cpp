#include <gtest/gtest.h>

#include <random>

#include "galstat/algebra_table.hpp"
#include "galstat/galilei.hpp"

using namespace galstat;

namespace {

using G = GalileiElement<Rational>;
using E = Event<Rational>;

Vec3<Rational> v3(Rational a, Rational b, Rational c) { return {a, b, c}; }

}  // namespace

TEST(Galilei, ActionExamples) {
  const E p{v3(1, 2, 3), Rational(1, 2)};
  EXPECT_EQ(act(G::identity(), p), p);
  const E origin{v3(0, 0, 0), 1};
  EXPECT_EQ(act(G::pure_boost(v3(2, -1, Rational(1, 3))), origin), (E{v3(2, -1, Rational(1, 3)), 1}));
}

TEST(Galilei, ComposeIsTheActionOfTheProduct) {
  RationalElementSampler s(21);
  for (int k = 0; k < 100; ++k) {
    const G g = s.element();
    const G h = s.element();
    const E p = s.event();
    EXPECT_EQ(act(g, act(h, p)), act(compose(g, h), p));
  }
  EXPECT_EQ(compose(G::pure_translation(v3(1, 0, 2)), G::pure_translation(v3(0, 3, -1))), G::pure_translation(v3(1, 3, 1)));
  const G g = s.element();
  EXPECT_EQ(compose(g, G::identity()), g);
  EXPECT_EQ(compose(G::identity(), g), g);
}

TEST(Galilei, GroupLawsAreExact) {
  RationalElementSampler s(22);
  for (int k = 0; k < 100; ++k) {
    const G a = s.element();
    const G b = s.element();
    const G c = s.element();
    EXPECT_TRUE(a.valid());
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    EXPECT_EQ(compose(a, inverse(a)), G::identity());
    EXPECT_EQ(compose(inverse(a), a), G::identity());
  }
}

TEST(Galilei, GammaExamples) {
  RationalElementSampler s(23);
  const Rational m(3, 2);
  for (int k = 0; k < 20; ++k) {
    G rotation_only = G::pure_rotation(s.rotation());
    rotation_only.translation = s.vector();
    EXPECT_EQ(gamma(rotation_only, m, s.event()), 0);
    const Vec3<Rational> v = s.vector();
    const E p = s.event();
    EXPECT_EQ(gamma(G::pure_boost(v), m, p), m * (Rational(1, 2) * vec::dot(v, v) * p.time + vec::dot(v, p.position)));
  }
}

TEST(Galilei, CocycleExamples) {
  RationalElementSampler s(24);
  const Rational m(5, 3);
  EXPECT_EQ(cocycle_exponent(G::pure_translation(s.vector()), G::pure_translation(s.vector()), m), 0);
  const Vec3<Rational> v = s.vector();
  const Vec3<Rational> a = s.vector();
  EXPECT_EQ(cocycle_exponent(G::pure_boost(v), G::pure_translation(a), m), m * vec::dot(v, a));
  const G g = s.element();
  EXPECT_EQ(cocycle_exponent(g, G::identity(), m), 0);
  EXPECT_EQ(cocycle_exponent(G::identity(), g, m), 0);
}

TEST(Galilei, CocycleIsPositionIndependentAndClosed) {
  RationalElementSampler s(25);
  const Rational m(7, 4);
  for (int k = 0; k < 300; ++k) {
    const G g = s.element();
    const G h = s.element();
    const Rational zeta = cocycle_exponent(g, h, m);
    EXPECT_EQ(zeta, cocycle_closed_form(g, h, m));
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m * cocycle_defect(g, h, s.event()), zeta);
  }
  for (int k = 0; k < 100; ++k) {
    const G a = s.element();
    const G b = s.element();
    const G c = s.element();
    EXPECT_EQ(cocycle_exponent(a, b, m) + cocycle_exponent(compose(a, b), c, m),
              cocycle_exponent(a, compose(b, c), m) + cocycle_exponent(b, c, m));
  }
}

TEST(Galilei, CocycleFloatingPointPathAgrees) {
  RationalElementSampler s(26);
  for (int k = 0; k < 100; ++k) {
    const G g = s.element();
    const G h = s.element();
    GalileiElement<double> gd;
    GalileiElement<double> hd;
    auto conv = [](const G& x, GalileiElement<double>& y) {
      y.time_shift = to_double(x.time_shift);
      for (std::size_t i = 0; i < 3; ++i) {
        y.translation[i] = to_double(x.translation[i]);
        y.boost[i] = to_double(x.boost[i]);
      }
      y.rotation = to_double(x.rotation);
    };
    conv(g, gd);
    conv(h, hd);
    const double exact = to_double(cocycle_exponent(g, h, Rational(2)));
    EXPECT_NEAR(cocycle_exponent(gd, hd, 2.0), exact, 1e-10 * std::max(1.0, std::abs(exact)));
  }
}

TEST(Galilei, WrongActionIsDetected) {
  // a rotation that is not orthogonal makes the defect position dependent
  Mat3<Rational> stretch = vec::identity<Rational>();
  stretch[0][0] = 2;
  const G bad = G::pure_rotation(stretch);
  EXPECT_FALSE(bad.valid());
  EXPECT_THROW(cocycle_exponent(bad, G::pure_boost(v3(1, 0, 0)), Rational(1)), ConsistencyFailure);
}

TEST(Galilei, QuaternionRotationsAreExactlyOrthogonal) {
  EXPECT_EQ(orthogonality_defect(rotation_from_quaternion(1, 2, 3, 4)), 0);
  Mat3<Rational> quarter_turn{};
  quarter_turn[0][1] = -1;
  quarter_turn[1][0] = 1;
  quarter_turn[2][2] = 1;
  EXPECT_EQ(rotation_from_quaternion(1, 0, 0, 1), quarter_turn);
  EXPECT_THROW(rotation_from_quaternion(0, 0, 0, 0), InputError);
  EXPECT_THROW(rotation_axis_angle({1, 1, 0}, 0.3), InputError);
}

TEST(AlgebraTable, StandardTablesSatisfyJacobi) {
  EXPECT_TRUE(jacobi_check(extended_galilei_table()).passed());
  EXPECT_TRUE(jacobi_check(poincare_table()).passed());
}

TEST(AlgebraTable, PerturbedConstantNamesATriple) {
  AlgebraTable t = extended_galilei_table();
  t.set_antisymmetric("K1", "P1", "M", 2);
  const Verdict v = jacobi_check(t);
  ASSERT_EQ(v.status, Status::fail);
  EXPECT_TRUE(v.witness.contains("triple"));
  EXPECT_EQ(v.witness["triple"].size(), 3u);

  AlgebraTable lopsided = poincare_table();
  lopsided.set(lopsided.index("K1"), lopsided.index("K2"), lopsided.index("J3"), 1);
  const Verdict anti = jacobi_check(lopsided);
  ASSERT_EQ(anti.status, Status::fail);
  EXPECT_TRUE(anti.witness.contains("antisymmetry"));
}

TEST(AlgebraTable, Centrality) {
  const AlgebraTable g = extended_galilei_table();
  EXPECT_TRUE(centrality_check(g, "M").passed());
  const Verdict h = centrality_check(g, "H");
  EXPECT_EQ(h.status, Status::fail);
  EXPECT_EQ(h.witness["element"], "H");
  const AlgebraTable p = poincare_table();
  for (const auto& label : p.labels()) EXPECT_EQ(centrality_check(p, label).status, Status::fail) << label;
}

TEST(AlgebraTable, ParseAndFormatRoundTrip) {
  for (const AlgebraTable& t : {extended_galilei_table(), poincare_table()}) {
    EXPECT_EQ(parse_algebra_table(format_algebra_table(t)), t);
  }
  const AlgebraTable small = parse_algebra_table("# sl2\nbasis: E F H\nE F -> H\nH E -> 2 E\nH F -> -2 F\n");
  EXPECT_TRUE(jacobi_check(small).passed());
  EXPECT_EQ(small.constant(small.index("F"), small.index("E"), small.index("H")), -1);
}

TEST(AlgebraTable, ParseErrorsCarryLineNumbers) {
  try {
    parse_algebra_table("basis: A B\nA B -> C\n");
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_algebra_table("A B -> A\nA B -> B\n"), InputError);
  EXPECT_THROW(parse_algebra_table("A B => A\n"), InputError);
  EXPECT_THROW(parse_algebra_table("A B -> 2\n"), InputError);
}

TEST(Bch, MatchesTableOnEveryGeneratorPair) {
  const AlgebraTable t = extended_galilei_table();
  const std::vector<std::string> gens = {"H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"};
  for (const auto& x : gens) {
    for (const auto& y : gens) {
      const Verdict v = bch_crosscheck(x, y, t);
      EXPECT_TRUE(v.passed()) << x << "," << y << " " << nlohmann::json(v).dump();
    }
  }
}

TEST(Bch, Examples) {
  const AlgebraTable t = extended_galilei_table();
  const Verdict jp = bch_crosscheck("J3", "P1", t);
  EXPECT_TRUE(jp.passed());
  EXPECT_NEAR(jp.details["estimates"]["P2"].get<double>(), 1.0, 1e-6);
  const Verdict pp = bch_crosscheck("P1", "P2", t);
  EXPECT_TRUE(pp.passed());
  EXPECT_TRUE(pp.details["estimates"].empty());
  BchOptions heavy;
  heavy.mass = 2.5;
  const Verdict kp = bch_crosscheck("K1", "P1", t, heavy);
  EXPECT_TRUE(kp.passed());
  EXPECT_NEAR(kp.details["estimates"]["M"].get<double>(), 2.5, 1e-6);
  // a table with the wrong central charge is caught
  AlgebraTable wrong = t;
  wrong.set_antisymmetric("K1", "P1", "M", 3);
  EXPECT_EQ(bch_crosscheck("K1", "P1", wrong).status, Status::fail);
}
