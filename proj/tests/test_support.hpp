#pragma once

#include "qszego/hypercomplex.hpp"
#include "qszego/polyfrac.hpp"

#include <random>

namespace qszego::testing {

inline Rational random_rational(std::mt19937_64& rng, int range = 5, int max_den = 4) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(-range * d, range * d);
  return make_rational(num(rng), d);
}

template <std::size_t D>
Hypercomplex<Rational, D> random_hc(std::mt19937_64& rng) {
  Hypercomplex<Rational, D> h;
  for (std::size_t i = 0; i < D; ++i) h[i] = random_rational(rng);
  return h;
}

template <std::size_t D>
Hypercomplex<double, D> random_hcd(std::mt19937_64& rng, double scale = 1) {
  std::normal_distribution<double> nd(0.0, scale);
  Hypercomplex<double, D> h;
  for (std::size_t i = 0; i < D; ++i) h[i] = nd(rng);
  return h;
}

inline RatPoly random_poly(std::mt19937_64& rng, int dim, int max_deg, int terms) {
  RatPoly p(dim);
  std::uniform_int_distribution<int> var(0, dim - 1), deg(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim, 0);
    const int dg = deg(rng);
    for (int k = 0; k < dg; ++k) ++e[var(rng)];
    p += RatPoly::monomial(dim, e, random_rational(rng));
  }
  return p;
}

}  // namespace qszego::testing
