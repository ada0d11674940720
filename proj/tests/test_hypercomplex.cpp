#include "qszego/hypercomplex.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qszego;
using qszego::testing::random_hc;

namespace {

QuaternionQ qe(std::size_t i) { return QuaternionQ::basis(i); }
OctonionQ oe(std::size_t i) { return OctonionQ::basis(i); }

}  // namespace

TEST(Hypercomplex, QuaternionUnitProducts) {
  EXPECT_EQ(qe(1) * qe(2), qe(3));
  EXPECT_EQ(qe(2) * qe(3), qe(1));
  EXPECT_EQ(qe(3) * qe(1), qe(2));
  EXPECT_EQ(qe(2) * qe(1), -qe(3));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(qe(i) * qe(i), QuaternionQ::real(-1));
}

TEST(Hypercomplex, OctonionTableFollowsTriples) {
  EXPECT_EQ(oe(2) * oe(5), oe(7));
  for (const auto& [a, b, c] : kOctonionTriples) {
    EXPECT_EQ(oe(a) * oe(b), oe(c));
    EXPECT_EQ(oe(b) * oe(c), oe(a));
    EXPECT_EQ(oe(c) * oe(a), oe(b));
    EXPECT_EQ(oe(b) * oe(a), -oe(c));
  }
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(oe(0) * oe(i), oe(i));
    EXPECT_EQ(oe(i) * oe(0), oe(i));
    if (i > 0) {
      EXPECT_EQ(oe(i) * oe(i), OctonionQ::real(-1));
    }
  }
}

TEST(Hypercomplex, OctonionTableIsComplete) {
  // Every product of distinct imaginary units is +-(another imaginary unit),
  // and each row is a signed permutation.
  for (std::size_t i = 1; i < 8; ++i) {
    std::vector<bool> hit(8, false);
    for (std::size_t j = 0; j < 8; ++j) {
      auto [sign, k] = basis_product(8, static_cast<int>(i), static_cast<int>(j));
      EXPECT_TRUE(sign == 1 || sign == -1);
      EXPECT_FALSE(hit[k]);
      hit[k] = true;
    }
  }
}

TEST(Hypercomplex, QuaternionTableIsOctonionSubalgebra) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(basis_product(4, i, j), basis_product(8, i, j));
  }
}

TEST(Hypercomplex, DifferenceOfSquares) {
  QuaternionQ a{1, 1, 0, 0}, b{1, -1, 0, 0};
  EXPECT_EQ(a * b, QuaternionQ::real(2));
}

TEST(Hypercomplex, ConjNormInverse) {
  QuaternionQ a{0, 1, 1, 0};
  EXPECT_EQ(a.conj(), (QuaternionQ{0, -1, -1, 0}));
  EXPECT_EQ(a.norm_sq(), Rational(2));
  EXPECT_EQ(QuaternionQ::real(2).inverse(), QuaternionQ::real(Rational(1, 2)));
  EXPECT_THROW(QuaternionQ().inverse(), std::domain_error);
  EXPECT_THROW(OctonionD().inverse(), std::domain_error);
}

TEST(Hypercomplex, Associator) {
  EXPECT_EQ(associator(oe(1), oe(2), oe(4)), oe(7) * Rational(2));
  EXPECT_EQ(associator(oe(1), oe(2), oe(3)), OctonionQ());
  EXPECT_EQ(associator(qe(1), qe(2), qe(3)), QuaternionQ());
}

TEST(Hypercomplex, ComponentAccess) {
  OctonionQ a{3, 0, 0, 0, 0, 1};
  EXPECT_EQ(a.re(), Rational(3));
  EXPECT_EQ(QuaternionQ::basis(1, Rational(2)).im(1), Rational(2));
  EXPECT_EQ((QuaternionQ{1, 0, 1, 0}).vector_part(), qe(2));
  EXPECT_THROW(a.im(0), std::out_of_range);
  EXPECT_THROW(a.im(8), std::out_of_range);
  EXPECT_THROW(QuaternionQ::basis(4), std::out_of_range);
}

template <std::size_t D>
void check_norm_and_conj(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    auto a = random_hc<D>(rng);
    auto b = random_hc<D>(rng);
    const auto ab = a * b;
    ASSERT_EQ(ab.norm_sq(), Rational(a.norm_sq() * b.norm_sq()));
    ASSERT_EQ(ab.conj(), b.conj() * a.conj());
  }
}

TEST(HypercomplexProperty, NormMultiplicativeAndConjReverses) {
  check_norm_and_conj<4>(1, 10000);
  check_norm_and_conj<8>(2, 10000);
}

TEST(HypercomplexProperty, QuaternionAssociative) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 2000; ++k) {
    auto a = random_hc<4>(rng), b = random_hc<4>(rng), c = random_hc<4>(rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(HypercomplexProperty, OctonionAlternative) {
  std::mt19937_64 rng(4);
  bool saw_nonassociative = false;
  for (int k = 0; k < 2000; ++k) {
    auto x = random_hc<8>(rng), y = random_hc<8>(rng), z = random_hc<8>(rng);
    ASSERT_TRUE(associator(x, x, y).is_zero());
    ASSERT_TRUE(associator(x.conj(), x, y).is_zero());
    ASSERT_TRUE(associator(y, x, x).is_zero());
    saw_nonassociative = saw_nonassociative || !associator(x, y, z).is_zero();
  }
  EXPECT_TRUE(saw_nonassociative);
}

TEST(HypercomplexProperty, InverseBothSides) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 2000; ++k) {
    auto a = random_hc<8>(rng);
    if (a.is_zero()) continue;
    ASSERT_EQ(a * a.inverse(), OctonionQ::real(1));
    ASSERT_EQ(a.inverse() * a, OctonionQ::real(1));
    auto q = random_hc<4>(rng);
    if (q.is_zero()) continue;
    ASSERT_EQ(q * q.inverse(), QuaternionQ::real(1));
  }
}

TEST(Hypercomplex, RationalsStayCanonical) {
  QuaternionQ a{Rational(2, 4), Rational(-3, 6)};
  a = a * QuaternionQ::real(Rational(4, 2));
  EXPECT_EQ(a[0].get_num(), 1);
  EXPECT_EQ(a[0].get_den(), 1);
  EXPECT_EQ(a[1].get_num(), -1);
  EXPECT_EQ(parse_rational("6/-4").get_den(), 2);
}

TEST(Hypercomplex, FloatingAgreesWithExact) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    auto a = random_hc<8>(rng), b = random_hc<8>(rng);
    auto exact = to_double(a * b);
    auto fl = to_double(a) * to_double(b);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(exact[i], fl[i], 1e-12 * (1 + std::abs(exact[i])));
  }
}

TEST(HypercomplexIO, TextRoundTrip) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    auto a = random_hc<8>(rng);
    EXPECT_EQ((parse_text<Rational, 8>(to_text(a))), a);
  }
  EXPECT_EQ(to_text(QuaternionQ{1, Rational(1, 2)}), "1/1 + 1/2 e1 + 0/1 e2 + 0/1 e3");
  EXPECT_EQ((parse_text<Rational, 4>("3 + 1/2 e2")), (QuaternionQ{3, 0, Rational(1, 2), 0}));
  EXPECT_THROW((parse_text<Rational, 4>("1 + 2 e7")), std::out_of_range);
  EXPECT_THROW((parse_text<Rational, 4>("1 + x e1")), std::invalid_argument);
}

TEST(HypercomplexIO, JsonRoundTrip) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    auto a = random_hc<8>(rng);
    auto j = to_json(a);
    ASSERT_TRUE(j.is_array());
    EXPECT_TRUE(j[0].is_string());
    EXPECT_EQ((hypercomplex_from_json<Rational, 8>(j)), a);
  }
  QuaternionD d{0.25, -1.5, 3, 1e-300};
  EXPECT_EQ((hypercomplex_from_json<double, 4>(to_json(d))), d);
  EXPECT_THROW((hypercomplex_from_json<Rational, 4>(nlohmann::json::array({"1/1", "2/1"}))), DimensionMismatch);
}
