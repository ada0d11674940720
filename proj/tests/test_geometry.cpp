#include "qszego/geometry.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qszego;
using qszego::testing::random_hc;
using qszego::testing::random_hcd;
using qszego::testing::random_rational;

namespace {

QuaternionQ qe(std::size_t i) { return QuaternionQ::basis(i); }

template <std::size_t D>
GroupElement<Rational, D> random_element(std::mt19937_64& rng, std::size_t n) {
  GroupElement<Rational, D> h;
  for (std::size_t i = 0; i < n; ++i) h.omega.push_back(random_hc<D>(rng));
  for (std::size_t i = 0; i + 1 < D; ++i) h.t.push_back(random_rational(rng));
  return h;
}

template <std::size_t D>
SiegelPoint<Rational, D> random_point(std::mt19937_64& rng, std::size_t n) {
  SiegelPoint<Rational, D> p;
  for (std::size_t i = 0; i < n; ++i) p.horizontal.push_back(random_hc<D>(rng));
  p.vertical = random_hc<D>(rng);
  return p;
}

template <std::size_t D>
void check_axioms(std::size_t n, HeisenbergLaw law, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto id = GroupElement<Rational, D>::identity(n);
  for (int k = 0; k < 300; ++k) {
    auto a = random_element<D>(rng, n), b = random_element<D>(rng, n), c = random_element<D>(rng, n);
    ASSERT_EQ(group_mul(group_mul(a, b, law), c, law), group_mul(a, group_mul(b, c, law), law));
    ASSERT_EQ(group_mul(a, id, law), a);
    ASSERT_EQ(group_mul(id, a, law), a);
    ASSERT_EQ(group_mul(a, group_inverse(a), law), id);
    ASSERT_EQ(group_mul(group_inverse(a), a, law), id);
  }
}

template <std::size_t D>
bool action_compatible(std::size_t n, HeisenbergLaw law, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 200; ++k) {
    auto a = random_element<D>(rng, n), b = random_element<D>(rng, n);
    auto p = random_point<D>(rng, n);
    if (!(translate(group_mul(a, b, law), p) == translate(a, translate(b, p)))) return false;
  }
  return true;
}

}  // namespace

TEST(Group, QuaternionicProductExample) {
  GroupElement<Rational, 4> a{{qe(1)}, {0, 0, 0}}, b{{qe(2)}, {0, 0, 0}};
  GroupElement<Rational, 4> expected{{qe(1) + qe(2)}, {0, 0, -2}};
  EXPECT_EQ(group_mul(a, b), expected);
  GroupElement<Rational, 4> c{{QuaternionQ()}, {1, 2, 3}};
  GroupElement<Rational, 4> d{{qe(3)}, {Rational(1, 2), 0, 0}};
  EXPECT_EQ(group_mul(d, c), (GroupElement<Rational, 4>{{qe(3)}, {Rational(3, 2), 2, 3}}));
}

TEST(Group, ShapeErrors) {
  GroupElement<Rational, 4> a{{qe(1)}, {0, 0}};
  EXPECT_THROW(group_mul(a, a), DimensionMismatch);
  GroupElement<Rational, 4> one{{qe(1)}, {0, 0, 0}}, two{{qe(1), qe(2)}, {0, 0, 0}};
  EXPECT_THROW(group_mul(one, two), DimensionMismatch);
}

TEST(GroupProperty, AxiomsHoldExactly) {
  check_axioms<4>(1, HeisenbergLaw::quaternionic, 1);
  check_axioms<4>(2, HeisenbergLaw::quaternionic, 2);
  check_axioms<4>(1, HeisenbergLaw::octonionic, 3);
  check_axioms<8>(1, HeisenbergLaw::octonionic, 4);
}

TEST(GroupProperty, BothPrintedLawsActCompatibly) {
  // The two printed laws agree: Im(conj(a) b) = -Im(conj(b) a).
  EXPECT_TRUE(action_compatible<4>(1, HeisenbergLaw::quaternionic, 5));
  EXPECT_TRUE(action_compatible<4>(1, HeisenbergLaw::octonionic, 6));
  EXPECT_TRUE(action_compatible<4>(2, HeisenbergLaw::quaternionic, 7));
  EXPECT_TRUE(action_compatible<8>(1, HeisenbergLaw::octonionic, 8));
  EXPECT_TRUE(action_compatible<8>(1, HeisenbergLaw::quaternionic, 9));
}

TEST(Translate, Examples) {
  SiegelPoint<Rational, 4> p{{QuaternionQ()}, QuaternionQ::real(1)};
  GroupElement<Rational, 4> h{{qe(1)}, {0, 0, 0}};
  auto q = translate(h, p);
  EXPECT_EQ(q, (SiegelPoint<Rational, 4>{{qe(1)}, QuaternionQ::real(2)}));
  EXPECT_EQ(q.height(), Rational(1));
  EXPECT_EQ(translate(GroupElement<Rational, 4>::identity(1), p), p);
}

TEST(TranslateProperty, PreservesHeight) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 1000; ++k) {
    auto h = random_element<4>(rng, 2);
    auto p = random_point<4>(rng, 2);
    ASSERT_EQ(translate(h, p).height(), p.height());
    auto b = boundary_param(random_element<4>(rng, 2));
    ASSERT_TRUE(b.on_boundary());
    ASSERT_TRUE(translate(h, b).on_boundary());
  }
  for (int k = 0; k < 1000; ++k) {
    GroupElement<double, 4> h{{random_hcd<4>(rng)}, {1.5, -0.3, 2.0}};
    SiegelPoint<double, 4> p{{random_hcd<4>(rng)}, random_hcd<4>(rng)};
    EXPECT_NEAR(translate(h, p).height(), p.height(), 1e-12 * (1 + std::abs(p.height()) + norm_sq(h.omega)));
  }
}

TEST(Dilate, Examples) {
  SiegelPoint<Rational, 4> p{{QuaternionQ()}, QuaternionQ::real(1)};
  EXPECT_EQ(dilate(Rational(2), p), (SiegelPoint<Rational, 4>{{QuaternionQ()}, QuaternionQ::real(4)}));
  EXPECT_THROW(dilate(Rational(0), p), PreconditionError);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    auto h = random_element<4>(rng, 1);
    auto q = random_point<4>(rng, 1);
    const Rational d(3, 2);
    EXPECT_EQ(dilate(d, translate(h, q)), translate(dilate(d, h), dilate(d, q)));
  }
}

TEST(Rotate, Examples) {
  SiegelPoint<Rational, 4> p{{qe(2)}, QuaternionQ::real(1)};
  auto r = rotate({qe(1)}, p);
  EXPECT_EQ(r, (SiegelPoint<Rational, 4>{{qe(3)}, QuaternionQ::real(1)}));
  EXPECT_EQ(r.height(), p.height());
  EXPECT_THROW(rotate({QuaternionQ::real(2)}, p), PreconditionError);
}

TEST(BoundaryParam, Examples) {
  auto o = boundary_param(GroupElement<Rational, 4>::identity(1));
  EXPECT_EQ(o, (SiegelPoint<Rational, 4>{{QuaternionQ()}, QuaternionQ()}));
  GroupElement<Rational, 4> h{{qe(1)}, {1, 0, 0}};
  auto b = boundary_param(h);
  EXPECT_EQ(b, (SiegelPoint<Rational, 4>{{qe(1)}, QuaternionQ{1, 1, 0, 0}}));
  EXPECT_EQ(boundary_unparam(b), h);
  EXPECT_THROW(boundary_unparam(SiegelPoint<Rational, 4>{{QuaternionQ()}, QuaternionQ::real(1)}), PreconditionError);
}

TEST(Cayley, Examples) {
  SiegelPoint<Rational, 8> center{{OctonionQ()}, OctonionQ::real(1)};
  auto c = cayley(center);
  EXPECT_TRUE(c.sigma1.is_zero());
  EXPECT_TRUE(c.sigma2.is_zero());
  SiegelPoint<Rational, 8> edge{{OctonionQ()}, OctonionQ::basis(1)};
  auto e = cayley(edge);
  EXPECT_EQ(e.sigma2, -OctonionQ::basis(1));
  EXPECT_EQ(e.norm_sq(), Rational(1));
  EXPECT_THROW(cayley(SiegelPoint<Rational, 8>{{OctonionQ()}, OctonionQ::real(-1)}), SingularPoint);
}

TEST(CayleyProperty, RoundTripOnRandomInteriorPoints) {
  std::mt19937_64 rng(12);
  std::exponential_distribution<double> gap(1.0);
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    SiegelPoint<double, 8> tau{{random_hcd<8>(rng, 0.8)}, random_hcd<8>(rng, 1.0)};
    tau.vertical[0] = norm_sq(tau.horizontal) + gap(rng);
    ASSERT_TRUE(tau.in_domain());
    auto s = cayley(tau);
    ASSERT_LT(s.norm_sq(), 1.0);
    auto back = cayley_inv(s);
    double err = abs(back.vertical - tau.vertical) + abs(back.horizontal[0] - tau.horizontal[0]);
    worst = std::max(worst, err / (1 + abs(tau.vertical)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(RhoLength, Examples) {
  EXPECT_EQ(rho_length(GroupElement<Rational, 4>{{QuaternionQ()}, {4, 0, 0}}), 2.0);
  EXPECT_EQ(rho_length(GroupElement<Rational, 4>{{qe(1)}, {0, 0, 0}}), 1.0);
  GroupElement<double, 4> h{{QuaternionD{0.3, 0, 0, 0}}, {0, -9, 1}};
  EXPECT_DOUBLE_EQ(rho_length(h), 3.0);
  EXPECT_DOUBLE_EQ(rho_length(dilate(2.0, h)), 6.0);
  EXPECT_EQ(homogeneous_dim(1), 10);
}

TEST(GeometryIO, JsonRoundTrip) {
  std::mt19937_64 rng(13);
  auto h = random_element<8>(rng, 1);
  EXPECT_EQ((group_element_from_json<Rational, 8>(nlohmann::json::parse(to_json(h).dump()))), h);
  auto p = random_point<4>(rng, 2);
  EXPECT_EQ((siegel_point_from_json<Rational, 4>(to_json(p))), p);
  nlohmann::json bad = to_json(random_element<4>(rng, 1));
  bad["t"].erase(0);
  EXPECT_THROW((group_element_from_json<Rational, 4>(bad)), DimensionMismatch);
}
