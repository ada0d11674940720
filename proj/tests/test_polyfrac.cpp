#include "qszego/kernel.hpp"
#include "qszego/polyfrac.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qszego;
using qszego::testing::random_poly;

namespace {

RatPoly x(int i, int dim = 4) { return RatPoly::variable(dim, i); }

std::vector<Rational> qpoint(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long c : v) out.emplace_back(c);
  return out;
}

}  // namespace

TEST(RatPoly, RingOperations) {
  EXPECT_TRUE((x(0) + (-x(0))).is_zero());
  const RatPoly prod = x(0) * x(1);
  ASSERT_EQ(prod.terms().size(), 1u);
  EXPECT_EQ(prod.terms().begin()->second, Rational(1));
  EXPECT_EQ(prod.terms().begin()->first.exp[0], 1);
  EXPECT_EQ(prod.terms().begin()->first.exp[1], 1);
  const RatPoly s = (x(0) * x(0)).scaled(Rational(3, 2));
  EXPECT_EQ(s.terms().begin()->second, Rational(3, 2));
  EXPECT_THROW(x(0, 4) + x(0, 8), DimensionMismatch);
}

TEST(RatPoly, NoStoredZeros) {
  RatPoly p = x(0) + x(1);
  p -= x(1);
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_TRUE(p.scaled(Rational(0)).is_zero());
}

TEST(RatPoly, DivisionByNormSquared) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    RatPoly q = random_poly(rng, 4, 4, 5);
    RatPoly p = q * RatPoly::norm_sq(4);
    RatPoly out;
    ASSERT_TRUE(p.divide_by_norm_sq(out));
    EXPECT_EQ(out, q);
  }
  RatPoly out;
  EXPECT_FALSE((x(0) * x(0)).divide_by_norm_sq(out));
  EXPECT_FALSE(x(1).divide_by_norm_sq(out));
}

TEST(RadialFraction, NewtonPotentialValues) {
  const RadialFraction n = newton_potential();
  EXPECT_EQ(n.eval<Rational>(qpoint({1, 0, 0, 0})), Rational(1));
  EXPECT_EQ(n.eval<Rational>(qpoint({2, 0, 0, 0})), Rational(1, 4));
  EXPECT_EQ(n.eval<Rational>(qpoint({0, 2, 0, 0})), Rational(1, 4));
  EXPECT_TRUE(n.laplacian().is_zero());
  EXPECT_THROW(n.eval<Rational>(qpoint({0, 0, 0, 0})), SingularPoint);
  EXPECT_THROW(n.eval<double>(std::vector<double>{0, 0, 0, 0}), SingularPoint);
}

TEST(RadialFraction, QuotientRule) {
  const RadialFraction d0 = newton_potential().derivative(0);
  EXPECT_EQ(d0, RadialFraction(x(0).scaled(Rational(-2)), 2));
  EXPECT_EQ(d0.eval<Rational>(qpoint({1, 1, 0, 0})), Rational(-1, 2));
  const RadialFraction d00 = d0.derivative(0);
  EXPECT_EQ(d00.eval<Rational>(qpoint({1, 0, 0, 0})), Rational(6));
  // -2/|x|^4 + 8 x0^2/|x|^6 from a second route.
  RadialFraction other(RatPoly::norm_sq(4).scaled(Rational(-2)) + (x(0) * x(0)).scaled(Rational(8)), 3);
  EXPECT_EQ(d00, other);
}

TEST(RadialFraction, CanonicalizesOnConstruction) {
  RadialFraction f(RatPoly::norm_sq(4) * x(2), 3);
  EXPECT_EQ(f.k(), 2);
  EXPECT_EQ(f.numerator(), x(2));
  EXPECT_TRUE(f.is_canonical());
  RadialFraction zero(RatPoly(4), 5);
  EXPECT_EQ(zero.k(), 0);
  EXPECT_TRUE(zero.is_zero());
}

TEST(RadialFractionProperty, MixedPartialsCommute) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 40; ++k) {
    RadialFraction f(random_poly(rng, 4, 6, 6), k % 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        auto a = f.derivative(i).derivative(j);
        auto b = f.derivative(j).derivative(i);
        ASSERT_EQ(a, b);
        ASSERT_TRUE(a.is_canonical());
      }
    }
  }
}

TEST(RadialFractionProperty, DerivativesStayCanonical) {
  RadialFraction f = newton_potential();
  for (int step = 0; step < 8; ++step) {
    f = f.derivative(step % 4);
    ASSERT_TRUE(f.is_canonical());
    RatPoly q;
    ASSERT_TRUE(f.k() == 0 || !f.numerator().divide_by_norm_sq(q));
  }
}

TEST(RadialFractionProperty, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> nd;
  RadialFraction f(random_poly(rng, 4, 4, 6), 2);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> p(4);
    for (auto& v : p) v = nd(rng);
    const int axis = k % 4;
    const double exact = f.derivative(axis).eval<double>(p);
    const double h = 1e-4;
    auto pp = p, pm = p;
    pp[axis] += h;
    pm[axis] -= h;
    const double fd = (f.eval<double>(pp) - f.eval<double>(pm)) / (2 * h);
    const double scale = std::max(std::abs(exact), 1e-3 * (std::abs(f.eval<double>(p)) + 1));
    EXPECT_LE(std::abs(fd - exact) / scale, 1e-6);
  }
}

TEST(RadialFraction, CompiledEvaluationMatches) {
  std::mt19937_64 rng(14);
  HyperFrac f({RadialFraction(random_poly(rng, 4, 5, 8), 3), RadialFraction(random_poly(rng, 4, 5, 8), 1),
               RadialFraction(random_poly(rng, 4, 5, 8), 0), RadialFraction(random_poly(rng, 4, 5, 8), 2)});
  CompiledHyperFrac c(f);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> p(4);
    for (auto& v : p) v = nd(rng);
    auto slow = f.eval<double>(p);
    std::vector<double> fast(4);
    c.eval(p, fast);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(fast[i], slow[i], 1e-10 * (1 + std::abs(slow[i])));
  }
}

TEST(Dirac, IdentityMapGivesMinusTwo) {
  HyperFrac id = HyperFrac::from_polys({x(0), x(1), x(2), x(3)});
  HyperFrac d = dirac(id, Side::left);
  EXPECT_EQ(d, HyperFrac::from_polys({RatPoly::constant(4, Rational(-2)), RatPoly(4), RatPoly(4), RatPoly(4)}));
  EXPECT_EQ(dirac(id, Side::right), d);
}

TEST(Dirac, CauchyKernelBodyIsRegular) {
  const PiScaledKernel e = cauchy_kernel(4);
  EXPECT_TRUE(dirac(e.body, Side::left).is_zero());
  EXPECT_TRUE(dirac(e.body, Side::right).is_zero());
}

TEST(Dirac, OctonionTwistedLinearIsRegular) {
  std::vector<RatPoly> c(8, RatPoly(8));
  c[2] = x(1, 8);
  c[1] = -x(2, 8);
  c[3] = x(0, 8).scaled(Rational(-2));
  EXPECT_TRUE(dirac(HyperFrac::from_polys(c), Side::left).is_zero());
}

TEST(Dirac, ShapeChecks) {
  HyperFrac f(8, 4);
  EXPECT_THROW(dirac(f, Side::left), DimensionMismatch);
  EXPECT_NO_THROW(dirac(f, Side::left, false, 4));
  EXPECT_THROW(dirac(f, Side::left, false, 5), DimensionMismatch);
}

TEST(DiracProperty, ConjugateDiracComposesToLaplacian) {
  std::mt19937_64 rng(15);
  for (int dim : {4, 8}) {
    for (int k = 0; k < 5; ++k) {
      std::vector<RatPoly> c;
      for (int i = 0; i < dim; ++i) c.push_back(random_poly(rng, dim, 4, 4));
      HyperFrac f = HyperFrac::from_polys(c);
      EXPECT_EQ(dirac(dirac(f, Side::left), Side::left, true), f.laplacian());
    }
  }
}

TEST(LinearSubstitute, Examples) {
  RationalMatrix id(4, std::vector<Rational>(4, Rational(0)));
  for (int i = 0; i < 4; ++i) id[i][i] = 1;
  std::mt19937_64 rng(16);
  RatPoly p = random_poly(rng, 4, 3, 6);
  EXPECT_EQ(linear_substitute(p, id), p);

  const RationalMatrix m = left_mul_matrix(QuaternionQ::basis(1));
  EXPECT_EQ(linear_substitute(x(0), m), -x(1));

  RationalMatrix two = id;
  for (int i = 0; i < 4; ++i) two[i][i] = 2;
  EXPECT_EQ(linear_substitute(x(1) * x(1), two), (x(1) * x(1)).scaled(Rational(4)));

  HyperFrac rational_body = cauchy_kernel(4).body;
  EXPECT_THROW(linear_substitute(rational_body, id), PreconditionError);
}

TEST(PolyfracIO, JsonRoundTrip) {
  RadialFraction d = newton_potential().derivative(0).derivative(3).derivative(3);
  auto j = to_json(d);
  EXPECT_EQ(j["dim"], 4);
  EXPECT_EQ(j["k"], d.k());
  EXPECT_TRUE(j["terms"][0]["coef"].is_string());
  EXPECT_EQ(radial_fraction_from_json(j), d);
  HyperFrac body = szego_density({2, 4}).kernel.body;
  EXPECT_EQ(hyperfrac_from_json(to_json(body)), body);
  EXPECT_EQ(hyperfrac_from_json(nlohmann::json::parse(to_json(body).dump())), body);
}
