// Siegel half spaces over H^n and O, the quaternionic and octonionic
// Heisenberg groups acting on them, and the octonionic Cayley transform.
#pragma once

#include "qszego/errors.hpp"
#include "qszego/hypercomplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "json.hpp"

namespace qszego {

/// (q', q_{n+1}): horizontal part in A^n and the vertical coordinate in A.
template <Scalar T, std::size_t D>
struct SiegelPoint {
  using Number = Hypercomplex<T, D>;
  std::vector<Number> horizontal;
  Number vertical;

  std::size_t n() const { return horizontal.size(); }

  /// Re(q_{n+1}) - |q'|^2
  T height() const {
    T r = vertical.re();
    for (const auto& q : horizontal) r -= q.norm_sq();
    return r;
  }

  bool in_domain() const { return to_double(height()) > 0; }

  bool on_boundary(double tol = 1e-12) const {
    if constexpr (scalar_traits<T>::exact) {
      return scalar_traits<T>::is_zero(height());
    } else {
      return std::abs(height()) <= tol;
    }
  }

  friend bool operator==(const SiegelPoint&, const SiegelPoint&) = default;
};

/// [omega', t] with omega' in A^n and t in R^(D-1).
template <Scalar T, std::size_t D>
struct GroupElement {
  using Number = Hypercomplex<T, D>;
  std::vector<Number> omega;
  std::vector<T> t;

  static GroupElement identity(std::size_t n) {
    return {std::vector<Number>(n), std::vector<T>(D - 1, T(0))};
  }

  std::size_t n() const { return omega.size(); }

  /// e . t = sum_i t_i e_i
  Number e_dot_t() const {
    Number v;
    for (std::size_t i = 1; i < D; ++i) v[i] = t[i - 1];
    return v;
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// The two multiplication laws as printed: the quaternionic group uses
/// t + s - 2 Im(conj(beta) . alpha), the octonionic group t + s + 2 Im(conj(alpha) beta).
enum class HeisenbergLaw { quaternionic, octonionic };

template <std::size_t D>
constexpr HeisenbergLaw default_law() {
  return D == 8 ? HeisenbergLaw::octonionic : HeisenbergLaw::quaternionic;
}

/// conj(a') . b' = sum_i conj(a_i) b_i
template <Scalar T, std::size_t D>
Hypercomplex<T, D> conj_dot(const std::vector<Hypercomplex<T, D>>& a, const std::vector<Hypercomplex<T, D>>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("horizontal length mismatch");
  Hypercomplex<T, D> s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
  return s;
}

template <Scalar T, std::size_t D>
T norm_sq(const std::vector<Hypercomplex<T, D>>& v) {
  T s(0);
  for (const auto& q : v) s += q.norm_sq();
  return s;
}

template <Scalar T, std::size_t D>
void check_shape(const GroupElement<T, D>& h) {
  if (h.t.size() != D - 1) throw DimensionMismatch("central coordinate length must be dim - 1");
}

template <Scalar T, std::size_t D>
GroupElement<T, D> group_mul(const GroupElement<T, D>& a, const GroupElement<T, D>& b,
                             HeisenbergLaw law = default_law<D>()) {
  check_shape(a);
  check_shape(b);
  if (a.n() != b.n()) throw DimensionMismatch("group elements of different n");
  GroupElement<T, D> out;
  out.omega.resize(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) out.omega[i] = a.omega[i] + b.omega[i];
  Hypercomplex<T, D> twist;
  T sign(1);
  if (law == HeisenbergLaw::quaternionic) {
    twist = conj_dot(b.omega, a.omega);
    sign = T(-2);
  } else {
    twist = conj_dot(a.omega, b.omega);
    sign = T(2);
  }
  out.t.resize(D - 1);
  for (std::size_t i = 1; i < D; ++i) out.t[i - 1] = a.t[i - 1] + b.t[i - 1] + sign * twist[i];
  return out;
}

template <Scalar T, std::size_t D>
GroupElement<T, D> group_inverse(const GroupElement<T, D>& h) {
  GroupElement<T, D> out = h;
  for (auto& w : out.omega) w = -w;
  for (auto& x : out.t) x = -x;
  return out;
}

/// h(q) = (q' + w', q_{n+1} + |w'|^2 + 2 conj(w') . q' + e . t)
template <Scalar T, std::size_t D>
SiegelPoint<T, D> translate(const GroupElement<T, D>& h, const SiegelPoint<T, D>& p) {
  check_shape(h);
  if (h.n() != p.n()) throw DimensionMismatch("group element and point have different n");
  SiegelPoint<T, D> out;
  out.horizontal.resize(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) out.horizontal[i] = p.horizontal[i] + h.omega[i];
  out.vertical = p.vertical + Hypercomplex<T, D>::real(norm_sq(h.omega)) + conj_dot(h.omega, p.horizontal) * T(2) +
                 h.e_dot_t();
  return out;
}

template <Scalar T, std::size_t D>
SiegelPoint<T, D> dilate(const T& delta, const SiegelPoint<T, D>& p) {
  if (!(to_double(delta) > 0)) throw PreconditionError("dilation factor must be positive");
  SiegelPoint<T, D> out = p;
  for (auto& q : out.horizontal) q *= delta;
  out.vertical *= T(delta * delta);
  return out;
}

template <Scalar T, std::size_t D>
GroupElement<T, D> dilate(const T& delta, const GroupElement<T, D>& h) {
  if (!(to_double(delta) > 0)) throw PreconditionError("dilation factor must be positive");
  GroupElement<T, D> out = h;
  for (auto& w : out.omega) w *= delta;
  for (auto& x : out.t) x *= T(delta * delta);
  return out;
}

/// R(q', q_{n+1}) = (R_1 q_1, ..., R_n q_n, q_{n+1}) with |R_i| = 1.
template <Scalar T, std::size_t D>
SiegelPoint<T, D> rotate(const std::vector<Hypercomplex<T, D>>& rot, const SiegelPoint<T, D>& p,
                         double tol = 1e-12) {
  if (rot.size() != p.n()) throw DimensionMismatch("rotation length mismatch");
  for (const auto& r : rot) {
    if constexpr (scalar_traits<T>::exact) {
      if (r.norm_sq() != T(1)) throw PreconditionError("rotation component must have unit norm");
    } else {
      if (std::abs(r.norm_sq() - 1.0) > tol) throw PreconditionError("rotation component must have unit norm");
    }
  }
  SiegelPoint<T, D> out = p;
  for (std::size_t i = 0; i < p.n(); ++i) out.horizontal[i] = rot[i] * p.horizontal[i];
  return out;
}

/// [w, t] -> (w, |w|^2 + e . t), the image of the origin under translation.
template <Scalar T, std::size_t D>
SiegelPoint<T, D> boundary_param(const GroupElement<T, D>& h) {
  check_shape(h);
  return {h.omega, Hypercomplex<T, D>::real(norm_sq(h.omega)) + h.e_dot_t()};
}

template <Scalar T, std::size_t D>
GroupElement<T, D> boundary_unparam(const SiegelPoint<T, D>& p, double tol = 1e-12) {
  if (!p.on_boundary(tol)) throw PreconditionError("point is not on the boundary");
  GroupElement<T, D> h;
  h.omega = p.horizontal;
  h.t.resize(D - 1);
  for (std::size_t i = 1; i < D; ++i) h.t[i - 1] = p.vertical[i];
  return h;
}

template <Scalar T, std::size_t D>
struct BallPoint {
  Hypercomplex<T, D> sigma1;
  Hypercomplex<T, D> sigma2;

  T norm_sq() const { return sigma1.norm_sq() + sigma2.norm_sq(); }
  bool in_ball() const { return to_double(norm_sq()) < 1; }
};

/// sigma1 = 2 tau1 (1 + conj tau2) / |1 + tau2|^2,
/// sigma2 = (1 + conj tau2)(1 - tau2) / |1 + tau2|^2.
template <Scalar T, std::size_t D>
BallPoint<T, D> cayley(const SiegelPoint<T, D>& tau) {
  if (tau.n() != 1) throw DimensionMismatch("Cayley transform is defined for one horizontal variable");
  using H = Hypercomplex<T, D>;
  const H one = H::real(T(1));
  const H p = one + tau.vertical;
  const T den = p.norm_sq();
  if (scalar_traits<T>::is_zero(den)) throw SingularPoint("Cayley transform pole at tau2 = -1");
  BallPoint<T, D> out;
  out.sigma1 = (tau.horizontal[0] * p.conj()) * T(2) / den;
  out.sigma2 = (p.conj() * (one - tau.vertical)) / den;
  return out;
}

template <Scalar T, std::size_t D>
SiegelPoint<T, D> cayley_inv(const BallPoint<T, D>& sigma) {
  using H = Hypercomplex<T, D>;
  const H one = H::real(T(1));
  const H p = one + sigma.sigma2;
  const T den = p.norm_sq();
  if (scalar_traits<T>::is_zero(den)) throw SingularPoint("inverse Cayley transform pole at sigma2 = -1");
  SiegelPoint<T, D> out;
  out.horizontal = {(sigma.sigma1 * p.conj()) / den};
  out.vertical = (p.conj() * (one - sigma.sigma2)) / den;
  return out;
}

/// rho(h) = max(|w'|, |t_1|^(1/2), ..., |t_{D-1}|^(1/2))
template <Scalar T, std::size_t D>
double rho_length(const GroupElement<T, D>& h) {
  double r = std::sqrt(to_double(norm_sq(h.omega)));
  for (const auto& x : h.t) r = std::max(r, std::sqrt(std::abs(to_double(x))));
  return r;
}

/// Homogeneous dimension of the quaternionic Heisenberg group Q_n.
constexpr int homogeneous_dim(int n) { return 4 * n + 6; }

// ---- JSON ----

template <Scalar T, std::size_t D>
nlohmann::json to_json(const SiegelPoint<T, D>& p) {
  nlohmann::json h = nlohmann::json::array();
  for (const auto& q : p.horizontal) h.push_back(to_json(q));
  return {{"horizontal", h}, {"vertical", to_json(p.vertical)}};
}

template <Scalar T, std::size_t D>
SiegelPoint<T, D> siegel_point_from_json(const nlohmann::json& j) {
  SiegelPoint<T, D> p;
  for (const auto& q : j.at("horizontal")) p.horizontal.push_back(hypercomplex_from_json<T, D>(q));
  p.vertical = hypercomplex_from_json<T, D>(j.at("vertical"));
  return p;
}

template <Scalar T, std::size_t D>
nlohmann::json to_json(const GroupElement<T, D>& h) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& q : h.omega) w.push_back(to_json(q));
  nlohmann::json t = nlohmann::json::array();
  for (const auto& x : h.t) {
    if constexpr (scalar_traits<T>::exact) {
      t.push_back(to_string(x));
    } else {
      t.push_back(x);
    }
  }
  return {{"omega", w}, {"t", t}};
}

template <Scalar T, std::size_t D>
GroupElement<T, D> group_element_from_json(const nlohmann::json& j) {
  GroupElement<T, D> h;
  for (const auto& q : j.at("omega")) h.omega.push_back(hypercomplex_from_json<T, D>(q));
  for (const auto& x : j.at("t")) h.t.push_back(scalar_from_json<T>(x));
  check_shape(h);
  return h;
}

}  // namespace qszego
