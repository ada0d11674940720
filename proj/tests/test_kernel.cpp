#include "qszego/kernel.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qszego;
using std::numbers::pi;
using qszego::testing::random_hcd;

namespace {

SiegelPoint<double, 4> point(std::vector<QuaternionD> h, QuaternionD v) { return {std::move(h), v}; }

double rel(const QuaternionD& a, const QuaternionD& b) { return abs(a - b) / std::max(abs(b), 1e-300); }

SiegelPoint<double, 4> random_interior(std::mt19937_64& rng, int n) {
  SiegelPoint<double, 4> p;
  for (int i = 0; i < n; ++i) p.horizontal.push_back(random_hcd<4>(rng, 0.7));
  p.vertical = random_hcd<4>(rng, 1.0);
  p.vertical[0] = norm_sq(p.horizontal) + 0.2 + std::abs(p.vertical[0]);
  return p;
}

}  // namespace

TEST(NewtonPotential, ValuesAndHarmonicity) {
  const auto n = newton_potential();
  EXPECT_EQ(n.eval<double>(std::vector<double>{1, 0, 0, 0}), 1.0);
  EXPECT_EQ(n.eval<double>(std::vector<double>{0, 2, 0, 0}), 0.25);
  EXPECT_TRUE(n.laplacian().is_zero());
  EXPECT_EQ(newton_derivative({2, 0, 0, 0}), n.derivative(0).derivative(0));
  EXPECT_EQ(newton_derivative({1, 0, 0, 1}), n.derivative(3).derivative(0));
}

TEST(CauchyKernel, Values) {
  const auto e = cauchy_kernel(4);
  auto v = e.eval(std::vector<double>{1, 0, 0, 0});
  EXPECT_NEAR(v[0], 1 / (2 * pi * pi), 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(v[i], 0.0);
  v = e.eval(std::vector<double>{0, 1, 0, 0});
  EXPECT_NEAR(v[1], -1 / (2 * pi * pi), 1e-15);
  EXPECT_TRUE(dirac(e.body, Side::left).is_zero());
  EXPECT_THROW(cauchy_kernel(8), PreconditionError);
}

TEST(SzegoDensity, ValueAtOne) {
  const auto& s = szego_density({1, 4});
  EXPECT_EQ(s.kernel.pi_pow, -4);
  const QuaternionD v = s(QuaternionD::real(1));
  EXPECT_NEAR(v[0], 24 / std::pow(pi, 4), 1e-15);
  EXPECT_NEAR(v[0], 0.246384, 1e-6);
  const QuaternionD w = s(QuaternionD::real(2));
  EXPECT_NEAR(w[0], 24 / std::pow(pi, 4) / 32, 1e-15);
  EXPECT_THROW(s(QuaternionD()), SingularPoint);
}

TEST(SzegoDensity, RejectsOctonionicOrder) {
  EXPECT_THROW(KernelOrder(1, 8), PreconditionError);
  EXPECT_THROW(KernelOrder(0, 4), PreconditionError);
  try {
    KernelOrder(1, 8);
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("m = 8"), std::string::npos);
  }
}

class DensityOrder : public ::testing::TestWithParam<int> {};

TEST_P(DensityOrder, RegularAndHomogeneous) {
  const int n = GetParam();
  const auto& s = szego_density({n, 4});
  EXPECT_TRUE(dirac(s.kernel.body, Side::left).is_zero());
  EXPECT_TRUE(dirac(s.kernel.body, Side::right).is_zero());
  for (const auto& c : s.kernel.body.comps()) {
    if (!c.is_zero()) {
      EXPECT_EQ(c.homogeneity_degree(), -(2 * n + 3));
    }
  }
  std::mt19937_64 rng(100 + n);
  for (int k = 0; k < 20; ++k) {
    QuaternionD nu = random_hcd<4>(rng, 1.0);
    for (double t : {0.5, 2.0, 5.0}) {
      QuaternionD lhs = s(nu * t) * std::pow(t, 2 * n + 3);
      EXPECT_LE(rel(lhs, s(nu)), 1e-12);
    }
  }
}

TEST_P(DensityOrder, ComplexCaseMatchesClosedForm) {
  const int n = GetParam();
  const auto& s = szego_density({n, 2});
  EXPECT_TRUE(same_function(s.kernel, complex_szego_symbolic(n)));
  EXPECT_TRUE(dirac(s.kernel.body, Side::left).is_zero());
  const std::complex<double> nu(0.7, -1.3);
  Hypercomplex<double, 2> z{nu.real(), nu.imag()};
  auto v = s(z);
  auto c = complex_szego_closed_form(n, nu);
  EXPECT_NEAR(v[0], c.real(), 1e-12 * std::abs(c));
  EXPECT_NEAR(v[1], c.imag(), 1e-12 * std::abs(c));
}

INSTANTIATE_TEST_SUITE_P(N1to4, DensityOrder, ::testing::Values(1, 2, 3, 4));

TEST(ComplexClosedForm, Values) {
  EXPECT_NEAR(complex_szego_closed_form(1, 2.0).real(), 1 / (4 * pi * pi), 1e-15);
  EXPECT_NEAR(complex_szego_closed_form(1, 1.0).real(), 1 / (pi * pi), 1e-15);
  EXPECT_THROW(complex_szego_closed_form(1, 0.0), SingularPoint);
}

TEST(SzegoKernel, ValueAtCenter) {
  auto p = point({QuaternionD()}, QuaternionD::real(1));
  EXPECT_NEAR(szego_eval(1, p, p)[0], 3 / (4 * std::pow(pi, 4)), 1e-15);
  EXPECT_THROW(szego_eval(2, p, p), DimensionMismatch);
  auto o = point({QuaternionD()}, QuaternionD());
  EXPECT_THROW(szego_eval(1, o, o), SingularPoint);
}

TEST(SzegoKernel, HermitianSymmetry) {
  std::mt19937_64 rng(21);
  for (int n : {1, 2}) {
    for (int k = 0; k < 200; ++k) {
      auto q = random_interior(rng, n), w = random_interior(rng, n);
      EXPECT_LE(rel(szego_eval(n, q, w), szego_eval(n, w, q).conj()), 1e-12);
    }
  }
}

TEST(SzegoKernel, DilationAndTranslationInvariance) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 200; ++k) {
    auto q = random_interior(rng, 1), w = random_interior(rng, 1);
    const double lhs_scale = std::pow(2.0, 10);
    QuaternionD a = szego_eval(1, dilate(2.0, q), dilate(2.0, w)) * lhs_scale;
    EXPECT_LE(rel(a, szego_eval(1, q, w)), 1e-12);
    GroupElement<double, 4> h{{random_hcd<4>(rng, 1.0)}, {0.3, -1.1, 0.4}};
    EXPECT_LE(rel(szego_eval(1, translate(h, q), translate(h, w)), szego_eval(1, q, w)), 1e-10);
  }
}

TEST(GroupKernel, Examples) {
  GroupElement<double, 4> h = GroupElement<double, 4>::identity(1);
  EXPECT_NEAR(group_kernel(1, h, 1)[0], 24 / std::pow(pi, 4), 1e-15);
  EXPECT_THROW(group_kernel(1, h, 0), SingularPoint);
  EXPECT_THROW(group_kernel(1, h, -1), PreconditionError);

  h.t = {1, 0, 0};
  auto direct = szego_density({1, 4}).kernel.eval(std::vector<double>{0, 1, 0, 0});
  QuaternionD k = group_kernel(1, h, 0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(k[i], direct[i], 1e-15);

  std::mt19937_64 rng(23);
  for (int j = 0; j < 100; ++j) {
    GroupElement<double, 4> g{{random_hcd<4>(rng, 1.0)}, {0.5, -0.2, 1.5}};
    QuaternionD scaled = group_kernel(1, dilate(3.0, g), 0) * std::pow(3.0, homogeneous_dim(1));
    EXPECT_LE(rel(scaled, group_kernel(1, g, 0)), 1e-12);
  }
}

TEST(KernelIO, JsonRoundTrip) {
  for (int n : {1, 2}) {
    const auto& k = szego_density({n, 4}).kernel;
    auto j = nlohmann::json::parse(to_json(k).dump());
    auto back = pi_scaled_kernel_from_json(j);
    EXPECT_EQ(back.coeff, k.coeff);
    EXPECT_EQ(back.pi_pow, k.pi_pow);
    EXPECT_EQ(back.body, k.body);
  }
}
