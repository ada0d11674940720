// Closed-form Newton potential, Cauchy kernels, and the Cauchy-Szego density
// s(nu) = (-2/pi)^(mn/2) d^(mn/2)/dx_0^(mn/2) E(nu) for m = 2 (complex) and
// m = 4 (quaternionic).
#pragma once

#include "qszego/errors.hpp"
#include "qszego/geometry.hpp"
#include "qszego/hypercomplex.hpp"
#include "qszego/polyfrac.hpp"
#include "qszego/rational.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>

#include "json.hpp"

namespace qszego {

/// coeff * pi^pi_pow * body(x). pi never enters the body coefficients.
struct PiScaledKernel {
  Rational coeff{1};
  int pi_pow = 0;
  HyperFrac body;

  double scale() const { return coeff.get_d() * std::pow(std::numbers::pi, pi_pow); }

  std::vector<double> eval(std::span<const double> x) const {
    auto v = body.eval<double>(x);
    const double s = scale();
    for (auto& c : v) c *= s;
    return v;
  }

  /// Same function: equal pi power and coeff * body equal as canonical forms.
  friend bool same_function(const PiScaledKernel& a, const PiScaledKernel& b) {
    if (a.body.is_zero() || b.body.is_zero()) return a.body.is_zero() && b.body.is_zero();
    return a.pi_pow == b.pi_pow && a.body.scaled(a.coeff) == b.body.scaled(b.coeff);
  }
};

struct KernelOrder {
  int n = 1;
  int m = 4;

  KernelOrder() = default;
  KernelOrder(int n_, int m_) : n(n_), m(m_) {
    if (n < 1) throw PreconditionError("kernel order n must be positive");
    if (m != 2 && m != 4) {
      throw PreconditionError("only m = 2 and m = 4 admit a Szego density; m = " + std::to_string(m) +
                              " is unsupported");
    }
  }
  int derivative_order() const { return m * n / 2; }
  auto operator<=>(const KernelOrder&) const = default;
};

/// 1/|x|^2 on R^4.
inline RadialFraction newton_potential() { return RadialFraction(RatPoly::constant(4, Rational(1)), 1); }

/// d^a N / dx_0^a0 ... dx_3^a3, memoized across calls.
inline const RadialFraction& newton_derivative(const std::array<int, 4>& a) {
  static std::recursive_mutex mu;
  static std::map<std::array<int, 4>, RadialFraction> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  for (int v : a) {
    if (v < 0) throw PreconditionError("derivative orders must be nonnegative");
  }
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  RadialFraction f = newton_potential();
  for (int axis = 0; axis < 4; ++axis) {
    if (a[axis] == 0) continue;
    std::array<int, 4> lower = a;
    --lower[axis];
    f = newton_derivative(lower).derivative(axis);
    break;
  }
  return cache.emplace(a, std::move(f)).first->second;
}

/// E(nu) = Gamma(m/2) / (2 pi^(m/2)) * conj(nu) / |nu|^m
inline PiScaledKernel cauchy_kernel(int m) {
  if (m != 2 && m != 4) throw PreconditionError("Cauchy kernel supports m = 2 or m = 4");
  const int k = m / 2;
  std::vector<RadialFraction> comps;
  for (int i = 0; i < m; ++i) {
    comps.emplace_back(RatPoly::variable(m, i, Rational(i == 0 ? 1 : -1)), k);
  }
  // Gamma(1) = Gamma(2) = 1, so the prefactor is 1/2 * pi^(-m/2).
  return {Rational(1, 2), -k, HyperFrac(std::move(comps))};
}

namespace detail {

inline PiScaledKernel build_szego_density(const KernelOrder& order) {
  PiScaledKernel e = cauchy_kernel(order.m);
  const int r = order.derivative_order();
  HyperFrac body = e.body;
  for (int i = 0; i < r; ++i) body = body.derivative(0);
  Rational c = e.coeff * rational_pow(Rational(-2), r);
  return {c, e.pi_pow - r, std::move(body)};
}

}  // namespace detail

/// Symbolic density together with a compiled evaluator. Built once per (n, m).
struct SzegoDensity {
  KernelOrder order;
  PiScaledKernel kernel;
  CompiledHyperFrac compiled;
  double scale = 0;

  template <std::size_t D>
  Hypercomplex<double, D> operator()(const Hypercomplex<double, D>& nu) const {
    if (static_cast<int>(D) != order.m) throw DimensionMismatch("argument dimension does not match m");
    if (nu.is_zero()) throw SingularPoint("singular point: Szego density at nu = 0");
    Hypercomplex<double, D> out;
    std::array<double, D> buf;
    compiled.eval(std::span<const double>(nu.coeffs()), std::span<double>(buf));
    for (std::size_t i = 0; i < D; ++i) out[i] = buf[i] * scale;
    return out;
  }
};

inline const SzegoDensity& szego_density(const KernelOrder& order) {
  static std::mutex mu;
  static std::map<KernelOrder, std::unique_ptr<SzegoDensity>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) {
    auto d = std::make_unique<SzegoDensity>();
    d->order = order;
    d->kernel = detail::build_szego_density(order);
    d->compiled = CompiledHyperFrac(d->kernel.body);
    d->scale = d->kernel.scale();
    slot = std::move(d);
  }
  return *slot;
}

/// nu = q_{n+1} + conj(w_{n+1}) - 2 conj(w') . q'
template <Scalar T>
Quaternion<T> szego_argument(const SiegelPoint<T, 4>& q, const SiegelPoint<T, 4>& w) {
  if (q.n() != w.n()) throw DimensionMismatch("points of different n");
  return q.vertical + w.vertical.conj() - conj_dot(w.horizontal, q.horizontal) * T(2);
}

/// S(q, w) = s(q_{n+1} + conj(w_{n+1}) - 2 conj(w') . q')
inline QuaternionD szego_eval(int n, const SiegelPoint<double, 4>& q, const SiegelPoint<double, 4>& w) {
  if (static_cast<int>(q.n()) != n || static_cast<int>(w.n()) != n) throw DimensionMismatch("points must have n horizontal variables");
  const QuaternionD nu = szego_argument(q, w);
  if (nu.is_zero()) throw SingularPoint("singular point: coincident boundary points");
  return szego_density({n, 4})(nu);
}

/// 2^(n-1) n! pi^-(n+1) nu^-(n+1): the complex Szego kernel n!/(4 pi^(n+1)) r^-(n+1)
/// rewritten through r = nu / 2.
inline std::complex<double> complex_szego_closed_form(int n, std::complex<double> nu) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (nu == 0.0) throw SingularPoint("singular point: nu = 0");
  double c = std::ldexp(1.0, n - 1) * std::tgamma(n + 1.0) * std::pow(std::numbers::pi, -(n + 1));
  return c * std::pow(nu, -(n + 1));
}

/// The same closed form as an exact kernel: conj(nu)^(n+1) / |nu|^(2(n+1)).
inline PiScaledKernel complex_szego_symbolic(int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  RatPoly re = RatPoly::constant(2, Rational(1));
  RatPoly im(2);
  const RatPoly x0 = RatPoly::variable(2, 0);
  const RatPoly mx1 = RatPoly::variable(2, 1, Rational(-1));
  for (int i = 0; i < n + 1; ++i) {
    // (re + i im)(x0 - i x1)
    RatPoly nre = re * x0 - im * mx1;
    RatPoly nim = re * mx1 + im * x0;
    re = std::move(nre);
    im = std::move(nim);
  }
  HyperFrac body({RadialFraction(re, n + 1), RadialFraction(im, n + 1)});
  Rational c = rational_pow(Rational(2), n - 1) * factorial(n);
  return {c, -(n + 1), std::move(body)};
}

/// K_eps(h) = S(h(0) + eps e_0, 0) = s(|w'|^2 + eps + e . t).
inline QuaternionD group_kernel(int n, const GroupElement<double, 4>& h, double eps) {
  if (eps < 0) throw PreconditionError("epsilon must be nonnegative");
  if (static_cast<int>(h.n()) != n) throw DimensionMismatch("group element must have n horizontal variables");
  QuaternionD nu = QuaternionD::real(norm_sq(h.omega) + eps) + h.e_dot_t();
  if (nu.is_zero()) throw SingularPoint("singular point: K at the identity with eps = 0");
  return szego_density({n, 4})(nu);
}

// ---- JSON interchange ----

inline nlohmann::json to_json(const PiScaledKernel& k) {
  return {{"coeff", to_string(k.coeff)}, {"pi_pow", k.pi_pow}, {"body", to_json(k.body)}};
}

inline PiScaledKernel pi_scaled_kernel_from_json(const nlohmann::json& j) {
  return {parse_rational(j.at("coeff").get<std::string>()), j.at("pi_pow").get<int>(),
          hyperfrac_from_json(j.at("body"))};
}

}  // namespace qszego
