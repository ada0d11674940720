// Quadrature engines: spherical product rules on R^3, tensor rules on the
// boundary of the Siegel half space (H^n x R^3), importance-sampled Monte
// Carlo, and exact half-integer Gamma arithmetic for the closed forms they
// are checked against.
#pragma once

#include "qszego/errors.hpp"
#include "qszego/hypercomplex.hpp"
#include "qszego/rational.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qszego {

template <class V>
struct QuadratureResult {
  V value{};
  double error_estimate = 0;
  long n_evals = 0;
  /// Integral of |f| on the final grid; the natural scale for "is zero" tests.
  double magnitude = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

namespace detail {

inline double magnitude_of(double v) { return std::abs(v); }
template <std::size_t D>
double magnitude_of(const Hypercomplex<double, D>& v) {
  return abs(v);
}

}  // namespace detail

template <class V>
nlohmann::json to_json(const QuadratureResult<V>& r) {
  nlohmann::json value;
  if constexpr (std::is_same_v<V, double>) {
    value = r.value;
  } else {
    value = to_json(r.value);
  }
  return {{"value", value},
          {"error_estimate", r.error_estimate},
          {"n_evals", r.n_evals},
          {"seed", r.seed},
          {"converged", r.converged}};
}

// ---- Gauss-Legendre ----

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], cached.
inline const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw PreconditionError("Gauss-Legendre rule needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1);
    double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

/// Gauss-Legendre nodes/weights mapped to [a, b].
inline GaussRule gauss_legendre(int n, double a, double b) {
  const auto& ref = gauss_legendre(n);
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double h = 0.5 * (b - a), c = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * ref.nodes[i];
    r.weights[i] = h * ref.weights[i];
  }
  return r;
}

// ---- exact Gamma at half-integers ----

/// Gamma(x) for x in (1/2) Z_{>0}: coeff * sqrt(pi)^(has_sqrt_pi ? 1 : 0).
struct HalfIntegerGamma {
  Rational coeff;
  bool has_sqrt_pi = false;

  PiMonomial as_pi_monomial() const { return {coeff, has_sqrt_pi ? 1 : 0}; }
  double to_double() const { return as_pi_monomial().to_double(); }
};

/// Gamma(twice_x / 2) exactly.
inline HalfIntegerGamma gamma_half(int twice_x) {
  if (twice_x < 1) throw PreconditionError("gamma_half needs a positive argument");
  if (twice_x % 2 == 0) return {factorial(twice_x / 2 - 1), false};
  // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
  const int k = (twice_x - 1) / 2;
  Rational c = factorial(2 * k) / (rational_pow(Rational(4), k) * factorial(k));
  return {c, true};
}

inline PiMonomial gamma_pm(int twice_x) { return gamma_half(twice_x).as_pi_monomial(); }

/// Closed form of
///   int_{R^3} |x|^l0 x1^l1 x2^l2 x3^l3 exp(-a |x|) dx
///   = 2 a^(-l-3) Gamma(l+3) Gamma(k1+1/2) Gamma(k2+1/2) Gamma(k3+1/2) / Gamma(k1+k2+k3+3/2)
/// when l_i = 2 k_i, and 0 otherwise. l0 may be as small as -2 as long as
/// l + 3 >= 1 (the integral converges at the origin).
inline PiMonomial prop32_closed_form(const Rational& a, const std::array<int, 4>& l) {
  if (sgn(a) <= 0) throw PreconditionError("prop32 needs a > 0");
  for (int i = 1; i < 4; ++i) {
    if (l[i] < 0) throw PreconditionError("monomial exponents must be nonnegative");
  }
  const int total = l[0] + l[1] + l[2] + l[3];
  if (total + 3 < 1) throw PreconditionError("integral diverges at the origin");
  if (l[1] % 2 || l[2] % 2 || l[3] % 2) return {};
  const int k1 = l[1] / 2, k2 = l[2] / 2, k3 = l[3] / 2;
  PiMonomial v = PiMonomial::rational(Rational(2) * rational_pow(a, -total - 3));
  v = v * gamma_pm(2 * (total + 3)) * gamma_pm(2 * k1 + 1) * gamma_pm(2 * k2 + 1) * gamma_pm(2 * k3 + 1);
  return v / gamma_pm(2 * (k1 + k2 + k3) + 3);
}

inline double prop32_closed_form(double a, const std::array<int, 4>& l) {
  if (!(a > 0)) throw PreconditionError("prop32 needs a > 0");
  PiMonomial unit = prop32_closed_form(Rational(1), l);
  const int total = l[0] + l[1] + l[2] + l[3];
  return unit.to_double() * std::pow(a, -total - 3);
}

/// Fourier transform of the slice xi -> 1/(x0^2 + |xi|^2) at frequency radius rho:
/// (pi / rho) exp(-2 pi x0 rho).
inline double fourier_newton(double x0, double rho) {
  if (!(x0 > 0) || !(rho > 0)) throw PreconditionError("fourier_newton needs x0 > 0 and rho > 0");
  return std::numbers::pi / rho * std::exp(-2 * std::numbers::pi * x0 * rho);
}

// ---- spherical product rule on R^3 ----

/// How the radial half-line is mapped to a finite interval.
struct RadialMap {
  enum class Kind { exponential, algebraic };
  Kind kind = Kind::exponential;
  /// Decay rate a for exp(-a r) integrands; length scale L for r = L tan(psi).
  double scale = 1;

  static RadialMap exponential(double rate) { return {Kind::exponential, rate}; }
  static RadialMap algebraic(double length) { return {Kind::algebraic, length}; }
};

struct R3Options {
  double rel_tol = 1e-10;
  /// Absolute floor, relative to the integral of |f|.
  double abs_tol_factor = 1e-13;
  long budget = 20'000'000;
  int max_level = 4;
};

namespace detail {

struct AngularGrid {
  std::vector<double> ux, uy, uz, w;
};

inline AngularGrid sphere_grid(int m_theta) {
  AngularGrid g;
  const auto& gl = gauss_legendre(m_theta);
  const int m_phi = 2 * m_theta;
  for (int i = 0; i < m_theta; ++i) {
    const double c = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1 - c * c));
    for (int j = 0; j < m_phi; ++j) {
      const double phi = 2 * std::numbers::pi * j / m_phi;
      g.ux.push_back(c);
      g.uy.push_back(s * std::cos(phi));
      g.uz.push_back(s * std::sin(phi));
      g.w.push_back(gl.weights[i] * 2 * std::numbers::pi / m_phi);
    }
  }
  return g;
}

/// Radial nodes r_i and weights (including the r^2 Jacobian).
inline std::pair<std::vector<double>, std::vector<double>> radial_rule(const RadialMap& map, int per_panel,
                                                                        const std::function<double(double)>& probe) {
  std::vector<double> r, w;
  if (map.kind == RadialMap::Kind::algebraic) {
    auto gl = gauss_legendre(per_panel * 4, 0.0, std::numbers::pi / 2);
    for (int i = 0; i < static_cast<int>(gl.nodes.size()); ++i) {
      const double psi = gl.nodes[i];
      const double c = std::cos(psi);
      const double rr = map.scale * std::tan(psi);
      r.push_back(rr);
      w.push_back(gl.weights[i] * map.scale / (c * c) * rr * rr);
    }
    return {r, w};
  }
  // r = -log(u) / a on geometric panels u in [2^-(k+1), 2^-k]; panels are added
  // until their contribution to the probe is negligible.
  double running = 0;
  int quiet = 0;
  for (int k = 0; k < 2000 && quiet < 3; ++k) {
    auto gl = gauss_legendre(per_panel, std::ldexp(1.0, -(k + 1)), std::ldexp(1.0, -k));
    double panel = 0;
    for (int i = 0; i < per_panel; ++i) {
      const double u = gl.nodes[i];
      const double rr = -std::log(u) / map.scale;
      const double ww = gl.weights[i] / (map.scale * u) * rr * rr;
      r.push_back(rr);
      w.push_back(ww);
      panel += ww * std::abs(probe(rr));
    }
    running += panel;
    quiet = (panel <= 1e-18 * running && k > 4) ? quiet + 1 : 0;
  }
  return {r, w};
}

}  // namespace detail

/// Integral of f over R^3 in spherical coordinates: a mapped Gauss-Legendre
/// rule in r, Gauss-Legendre in cos(theta), and the trapezoid rule in phi.
/// Every refinement doubles all point counts; the error estimate is the
/// difference between the last two levels.
inline QuadratureResult<double> integrate_r3(const std::function<double(double, double, double)>& f,
                                             const RadialMap& map, const R3Options& opt = {}) {
  if (!(map.scale > 0)) throw PreconditionError("radial scale must be positive");
  QuadratureResult<double> res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int level = 0; level <= opt.max_level; ++level) {
    const int per_panel = 8 << level;
    const int m_theta = 8 << level;
    auto grid = detail::sphere_grid(m_theta);
    // Probe along a fixed direction to size the exponential panel range.
    auto probe = [&](double r) { return f(r * 0.6, r * 0.48, r * 0.64) + f(r, 0, 0); };
    auto [rs, ws] = detail::radial_rule(map, per_panel, probe);
    const long cost = static_cast<long>(rs.size()) * static_cast<long>(grid.w.size());
    if (res.n_evals + cost > opt.budget && level > 0) break;
    double sum = 0, mag = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const double r = rs[i];
      double shell = 0, shell_abs = 0;
      for (std::size_t j = 0; j < grid.w.size(); ++j) {
        const double v = f(r * grid.ux[j], r * grid.uy[j], r * grid.uz[j]);
        shell += grid.w[j] * v;
        shell_abs += grid.w[j] * std::abs(v);
      }
      sum += ws[i] * shell;
      mag += ws[i] * shell_abs;
    }
    res.n_evals += cost;
    res.value = sum;
    res.magnitude = mag;
    if (level > 0) {
      res.error_estimate = std::abs(sum - prev);
      if (res.error_estimate <= opt.rel_tol * std::abs(sum) || res.error_estimate <= opt.abs_tol_factor * mag) {
        res.converged = true;
        break;
      }
    }
    prev = sum;
  }
  return res;
}

// ---- boundary of the Siegel half space: H^n x R^3 ----

/// f(w', t) with w' flattened to 4n reals. Declared properties steer the rule:
/// radial_in_omega means f depends on w' only through |w'|; even_in_t means
/// f is even in each t_i separately. decay_power is the caller's assertion
/// that |f| <~ (1 + |w'|^2 + |t|)^-decay_power.
template <class V>
struct BoundaryIntegrand {
  std::function<V(std::span<const double>, std::span<const double>)> f;
  bool radial_in_omega = false;
  bool even_in_t = false;
  double decay_power = 0;
  /// Optional length scale of the t integration as a function of |w'|; the
  /// t profile of a kernel evaluated at 1 + |w'|^2 + e.t widens with |w'|.
  std::function<double(double)> t_scale_at;
};

struct BoundaryOptions {
  double tol = 1e-6;
  long budget = 20'000'000;
  int base_radial = 16;
  int base_angular = 8;
  int max_level = 5;
  /// Length scales of the tan maps for |w'| and |t|.
  double omega_scale = 1;
  double t_scale = 1;
};

namespace detail {

/// Product rule on the unit sphere S^(dim-1) in hyperspherical coordinates.
inline void hypersphere_rule(int dim, int m, std::vector<std::vector<double>>& dirs, std::vector<double>& weights) {
  dirs.clear();
  weights.clear();
  if (dim == 1) {
    dirs = {{1.0}, {-1.0}};
    weights = {1.0, 1.0};
    return;
  }
  const auto polar = gauss_legendre(m, 0.0, std::numbers::pi);
  const int m_phi = 2 * m;
  const int n_polar = dim - 2;
  std::vector<int> idx(n_polar, 0);
  while (true) {
    double w = 1;
    std::vector<double> sines(n_polar), cosines(n_polar);
    for (int k = 0; k < n_polar; ++k) {
      const double a = polar.nodes[idx[k]];
      sines[k] = std::sin(a);
      cosines[k] = std::cos(a);
      w *= polar.weights[idx[k]] * std::pow(sines[k], dim - 2 - k);
    }
    for (int j = 0; j < m_phi; ++j) {
      const double phi = 2 * std::numbers::pi * j / m_phi;
      std::vector<double> x(dim);
      double prod = 1;
      for (int k = 0; k < n_polar; ++k) {
        x[k] = prod * cosines[k];
        prod *= sines[k];
      }
      x[dim - 2] = prod * std::cos(phi);
      x[dim - 1] = prod * std::sin(phi);
      dirs.push_back(std::move(x));
      weights.push_back(w * 2 * std::numbers::pi / m_phi);
    }
    int k = n_polar - 1;
    while (k >= 0 && ++idx[k] == m) idx[k--] = 0;
    if (k < 0) break;
  }
}

/// Surface area of S^(dim-1): 2 pi^(dim/2) / Gamma(dim/2).
inline double sphere_area(int dim) { return 2 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim); }

template <class V>
V zero_like() {
  return V{};
}

}  // namespace detail

/// Integral over the boundary identified with H^n x R^3 (Lebesgue measure
/// dw' dt). Radial maps w = L tan(pi u / 2) in |w'| and |t| with Gauss-Legendre
/// in u, product rules on the spheres. Levels double the radial point counts;
/// the error estimate is the difference between the last two levels.
template <class V>
QuadratureResult<V> integrate_boundary(int n, const BoundaryIntegrand<V>& g, const BoundaryOptions& opt = {}) {
  if (n < 1) throw PreconditionError("n must be positive");
  const int wdim = 4 * n;
  // Absolute convergence on H^n x R^3 with weight (1 + |w'|^2 + |t|)^-p needs p > 2n + 3.
  if (!(g.decay_power > 2 * n + 3)) {
    throw PreconditionError("integrand is not absolutely integrable over the boundary (declared decay " +
                            std::to_string(g.decay_power) + " <= " + std::to_string(2 * n + 3) + ")");
  }
  QuadratureResult<V> res;
  V prev{};
  for (int level = 0; level <= opt.max_level; ++level) {
    const int nr = opt.base_radial << level;
    const int ma = opt.base_angular + 4 * level;
    std::vector<std::vector<double>> wdirs;
    std::vector<double> wweights;
    if (g.radial_in_omega) {
      std::vector<double> e(wdim, 0.0);
      e[0] = 1;
      wdirs = {e};
      wweights = {detail::sphere_area(wdim)};
    } else {
      detail::hypersphere_rule(wdim, ma, wdirs, wweights);
    }
    std::vector<std::array<double, 3>> tdirs;
    std::vector<double> tweights;
    if (g.even_in_t) {
      auto ct = gauss_legendre(ma, 0.0, 1.0);
      auto ph = gauss_legendre(ma, 0.0, std::numbers::pi / 2);
      for (int i = 0; i < ma; ++i) {
        const double c = ct.nodes[i], s = std::sqrt(1 - c * c);
        for (int j = 0; j < ma; ++j) {
          tdirs.push_back({c, s * std::cos(ph.nodes[j]), s * std::sin(ph.nodes[j])});
          tweights.push_back(8 * ct.weights[i] * ph.weights[j]);
        }
      }
    } else {
      auto sg = detail::sphere_grid(ma);
      for (std::size_t j = 0; j < sg.w.size(); ++j) {
        tdirs.push_back({sg.ux[j], sg.uy[j], sg.uz[j]});
        tweights.push_back(sg.w[j]);
      }
    }
    const long cost = static_cast<long>(nr) * nr * static_cast<long>(wdirs.size()) * static_cast<long>(tdirs.size());
    if (res.n_evals + cost > opt.budget) {
      if (level == 0) throw PreconditionError("quadrature budget too small for a single level");
      break;
    }
    const auto u = gauss_legendre(nr, 0.0, 1.0);
    std::vector<double> rw(nr), rv(nr), tw(nr), tv(nr);
    for (int i = 0; i < nr; ++i) {
      const double a = std::numbers::pi / 2 * u.nodes[i];
      const double c = std::cos(a);
      const double jac = std::numbers::pi / 2 / (c * c);
      rv[i] = opt.omega_scale * std::tan(a);
      rw[i] = u.weights[i] * opt.omega_scale * jac * std::pow(rv[i], wdim - 1);
      tv[i] = opt.t_scale * std::tan(a);
      tw[i] = u.weights[i] * opt.t_scale * jac * tv[i] * tv[i];
    }
    V sum{};
    double mag = 0;
    std::vector<double> w(wdim), tv_local(nr), tw_local(nr);
    std::array<double, 3> t{};
    for (int i = 0; i < nr; ++i) {
      for (std::size_t a = 0; a < wdirs.size(); ++a) {
        for (int d = 0; d < wdim; ++d) w[d] = rv[i] * wdirs[a][d];
        const double wa = rw[i] * wweights[a];
        const double ts = g.t_scale_at ? g.t_scale_at(rv[i]) : 1.0;
        for (int k = 0; k < nr; ++k) {
          tv_local[k] = ts * tv[k];
          tw_local[k] = ts * ts * ts * tw[k];
        }
        V inner{};
        double inner_abs = 0;
        for (int k = 0; k < nr; ++k) {
          V shell{};
          double shell_abs = 0;
          for (std::size_t b = 0; b < tdirs.size(); ++b) {
            for (int d = 0; d < 3; ++d) t[d] = tv_local[k] * tdirs[b][d];
            V v = g.f(std::span<const double>(w), std::span<const double>(t));
            shell_abs += tweights[b] * detail::magnitude_of(v);
            v *= tweights[b];
            shell += v;
          }
          shell *= tw_local[k];
          inner += shell;
          inner_abs += tw_local[k] * shell_abs;
        }
        inner *= wa;
        sum += inner;
        mag += wa * inner_abs;
      }
    }
    res.n_evals += cost;
    res.value = sum;
    res.magnitude = mag;
    if (level > 0) {
      V diff = sum;
      diff -= prev;
      res.error_estimate = detail::magnitude_of(diff);
      if (res.error_estimate <= opt.tol * std::max(detail::magnitude_of(sum), 1e-300) ||
          res.error_estimate <= 1e-14 * mag) {
        res.converged = true;
        break;
      }
    }
    prev = sum;
  }
  return res;
}

// ---- Monte Carlo ----

/// Sampling distribution on R^dim with its normalized density.
struct Sampler {
  int dim = 0;
  std::function<void(std::mt19937_64&, std::span<double>)> sample;
  std::function<double(std::span<const double>)> density;
};

/// Density proportional to (1 + |x|^2)^-power on R^dim (power > dim / 2):
/// |x|^2 is beta-prime(dim/2, power - dim/2), the direction is uniform.
inline Sampler radial_power_sampler(int dim, double power) {
  if (!(power > 0.5 * dim)) throw PreconditionError("radial power sampler needs power > dim/2");
  const double norm = std::pow(std::numbers::pi, 0.5 * dim) * std::tgamma(power - 0.5 * dim) / std::tgamma(power);
  Sampler s;
  s.dim = dim;
  s.sample = [dim, power](std::mt19937_64& rng, std::span<double> out) {
    std::gamma_distribution<double> ga(0.5 * dim, 1.0), gb(power - 0.5 * dim, 1.0);
    std::normal_distribution<double> nd;
    const double r = std::sqrt(ga(rng) / gb(rng));
    double len = 0;
    for (int i = 0; i < dim; ++i) {
      out[i] = nd(rng);
      len += out[i] * out[i];
    }
    len = std::sqrt(len);
    for (int i = 0; i < dim; ++i) out[i] *= r / len;
  };
  s.density = [dim, power, norm](std::span<const double> x) {
    double q = 0;
    for (int i = 0; i < dim; ++i) q += x[i] * x[i];
    return std::pow(1 + q, -power) / norm;
  };
  return s;
}

/// Multivariate Cauchy: density Gamma((dim+1)/2) / pi^((dim+1)/2) (1 + |x|^2)^-((dim+1)/2).
inline Sampler multivariate_cauchy_sampler(int dim) {
  const double c = std::tgamma(0.5 * (dim + 1)) / std::pow(std::numbers::pi, 0.5 * (dim + 1));
  Sampler s;
  s.dim = dim;
  s.sample = [dim](std::mt19937_64& rng, std::span<double> out) {
    std::normal_distribution<double> nd;
    const double g = std::abs(nd(rng));
    for (int i = 0; i < dim; ++i) out[i] = nd(rng) / g;
  };
  s.density = [dim, c](std::span<const double> x) {
    double q = 0;
    for (int i = 0; i < dim; ++i) q += x[i] * x[i];
    return c * std::pow(1 + q, -0.5 * (dim + 1));
  };
  return s;
}

inline Sampler gaussian_sampler(int dim, double sigma = 1) {
  Sampler s;
  s.dim = dim;
  s.sample = [dim, sigma](std::mt19937_64& rng, std::span<double> out) {
    std::normal_distribution<double> nd(0.0, sigma);
    for (int i = 0; i < dim; ++i) out[i] = nd(rng);
  };
  s.density = [dim, sigma](std::span<const double> x) {
    double q = 0;
    for (int i = 0; i < dim; ++i) q += x[i] * x[i];
    return std::exp(-0.5 * q / (sigma * sigma)) / std::pow(2 * std::numbers::pi * sigma * sigma, 0.5 * dim);
  };
  return s;
}

/// Independent product of two samplers on R^(a.dim + b.dim).
inline Sampler product_sampler(Sampler a, Sampler b) {
  Sampler s;
  s.dim = a.dim + b.dim;
  const int da = a.dim;
  s.sample = [a, b, da](std::mt19937_64& rng, std::span<double> out) {
    a.sample(rng, out.subspan(0, da));
    b.sample(rng, out.subspan(da));
  };
  s.density = [a, b, da](std::span<const double> x) { return a.density(x.subspan(0, da)) * b.density(x.subspan(da)); };
  return s;
}

/// Importance-sampled mean of f / density with a standard-error estimate.
/// Deterministic for a fixed seed.
template <class V>
QuadratureResult<V> mc_integrate(const std::function<V(std::span<const double>)>& f, const Sampler& sampler,
                                 long samples, std::uint64_t seed = 0) {
  if (samples < 2) throw PreconditionError("Monte Carlo needs at least two samples");
  std::mt19937_64 rng(seed);
  std::vector<double> x(sampler.dim);
  std::vector<double> m2;
  std::vector<double> mu;
  for (long i = 0; i < samples; ++i) {
    sampler.sample(rng, std::span<double>(x));
    const double p = sampler.density(std::span<const double>(x));
    if (!(p > 0) || !std::isfinite(p)) throw PreconditionError("sampler produced a zero or NaN weight");
    V v = f(std::span<const double>(x));
    v *= 1.0 / p;
    std::vector<double> comps;
    if constexpr (std::is_same_v<V, double>) {
      comps = {v};
    } else {
      comps.assign(v.coeffs().begin(), v.coeffs().end());
    }
    if (mu.empty()) {
      mu.assign(comps.size(), 0.0);
      m2.assign(comps.size(), 0.0);
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (!std::isfinite(comps[c])) throw PreconditionError("integrand weight is not finite");
      const double d = comps[c] - mu[c];
      mu[c] += d / (i + 1);
      m2[c] += d * (comps[c] - mu[c]);
    }
  }
  QuadratureResult<V> res;
  if constexpr (std::is_same_v<V, double>) {
    res.value = mu[0];
  } else {
    for (std::size_t c = 0; c < mu.size(); ++c) res.value[c] = mu[c];
  }
  double var = 0;
  for (double v : m2) var += v / (samples - 1);
  res.error_estimate = std::sqrt(var / samples);
  res.n_evals = samples;
  res.magnitude = detail::magnitude_of(res.value);
  res.converged = true;
  res.seed = seed;
  return res;
}

}  // namespace qszego
