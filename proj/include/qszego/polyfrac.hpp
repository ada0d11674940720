// Exact calculus on functions P(x) / |x|^(2k) with sparse rational P.
//
// Every kernel in the library (the Newton potential, the Cauchy kernels, the
// Szego density and the F_lambda test functions) is a vector of such radial
// fractions. Derivatives stay in closed form, and canonicalization divides out
// every exact factor of |x|^2 so that equality and zero tests are syntactic.
#pragma once

#include "qszego/errors.hpp"
#include "qszego/hypercomplex.hpp"
#include "qszego/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace qszego {

inline constexpr int kMaxVars = 8;

struct MonomialKey {
  std::array<std::uint16_t, kMaxVars> exp{};

  auto operator<=>(const MonomialKey&) const = default;

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }
};

class RatPoly {
 public:
  using TermMap = std::map<MonomialKey, Rational>;

  explicit RatPoly(int dim = 4) : dim_(dim) {
    if (dim < 1 || dim > kMaxVars) throw DimensionMismatch("polynomial dimension must be in 1..8");
  }

  static RatPoly constant(int dim, const Rational& c) {
    RatPoly p(dim);
    p.add_term(MonomialKey{}, c);
    return p;
  }
  static RatPoly variable(int dim, int i, const Rational& c = Rational(1)) {
    RatPoly p(dim);
    p.check_axis(i);
    MonomialKey k;
    k.exp[i] = 1;
    p.add_term(k, c);
    return p;
  }
  static RatPoly monomial(int dim, std::span<const int> exps, const Rational& c) {
    RatPoly p(dim);
    if (static_cast<int>(exps.size()) != dim) throw DimensionMismatch("exponent vector length mismatch");
    MonomialKey k;
    for (int i = 0; i < dim; ++i) {
      if (exps[i] < 0 || exps[i] > std::numeric_limits<std::uint16_t>::max()) {
        throw std::out_of_range("exponent out of range");
      }
      k.exp[i] = static_cast<std::uint16_t>(exps[i]);
    }
    p.add_term(k, c);
    return p;
  }
  /// x_0^2 + ... + x_{d-1}^2
  static RatPoly norm_sq(int dim) {
    RatPoly p(dim);
    for (int i = 0; i < dim; ++i) {
      MonomialKey k;
      k.exp[i] = 2;
      p.add_term(k, Rational(1));
    }
    return p;
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MonomialKey& key, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  int degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.degree());
    return d;
  }

  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [k, c] : terms_) {
      if (d < 0) d = k.degree();
      if (k.degree() != d) return false;
    }
    return true;
  }

  RatPoly& operator+=(const RatPoly& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  RatPoly& operator-=(const RatPoly& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, Rational(-c));
    return *this;
  }
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator-(const RatPoly& a) { return a.scaled(Rational(-1)); }

  RatPoly scaled(const Rational& s) const {
    RatPoly out(dim_);
    if (sgn(s) == 0) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, Rational(c * s));
    return out;
  }

  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    a.check_same(b);
    RatPoly out(a.dim_);
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        MonomialKey k;
        for (int i = 0; i < a.dim_; ++i) {
          unsigned e = unsigned(ka.exp[i]) + kb.exp[i];
          if (e > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("exponent overflow");
          k.exp[i] = static_cast<std::uint16_t>(e);
        }
        out.add_term(k, Rational(ca * cb));
      }
    }
    return out;
  }

  RatPoly pow(int e) const {
    RatPoly out = constant(dim_, Rational(1));
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  RatPoly derivative(int axis) const {
    check_axis(axis);
    RatPoly out(dim_);
    for (const auto& [k, c] : terms_) {
      if (k.exp[axis] == 0) continue;
      MonomialKey nk = k;
      nk.exp[axis] -= 1;
      out.add_term(nk, Rational(c * k.exp[axis]));
    }
    return out;
  }

  /// If this == (sum x_i^2) * q exactly, store q and return true.
  bool divide_by_norm_sq(RatPoly& quotient) const {
    // x_0^2 leads: eliminate every term of x_0-degree >= 2, highest first. The
    // remainder has x_0-degree < 2 and vanishes iff the division is exact.
    RatPoly rem = *this;
    RatPoly q(dim_);
    while (!rem.terms_.empty()) {
      auto last = std::prev(rem.terms_.end());
      if (last->first.exp[0] < 2) break;
      MonomialKey qk = last->first;
      qk.exp[0] -= 2;
      Rational c = last->second;
      q.add_term(qk, c);
      rem.terms_.erase(last);
      for (int j = 1; j < dim_; ++j) {
        MonomialKey rk = qk;
        rk.exp[j] += 2;
        rem.add_term(rk, Rational(-c));
      }
    }
    if (!rem.terms_.empty()) return false;
    quotient = std::move(q);
    return true;
  }

  template <Scalar T>
  T eval(std::span<const T> x) const {
    if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("point dimension mismatch");
    int maxe = 0;
    for (const auto& [k, c] : terms_) {
      for (int i = 0; i < dim_; ++i) maxe = std::max<int>(maxe, k.exp[i]);
    }
    std::vector<std::vector<T>> powers(dim_, std::vector<T>(maxe + 1, T(1)));
    for (int i = 0; i < dim_; ++i) {
      for (int e = 1; e <= maxe; ++e) powers[i][e] = powers[i][e - 1] * x[i];
    }
    T sum(0);
    for (const auto& [k, c] : terms_) {
      T term;
      if constexpr (std::is_same_v<T, Rational>) {
        term = c;
      } else {
        term = c.get_d();
      }
      for (int i = 0; i < dim_; ++i) {
        if (k.exp[i]) term *= powers[i][k.exp[i]];
      }
      sum += term;
    }
    return sum;
  }

  friend bool operator==(const RatPoly& a, const RatPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  void check_same(const RatPoly& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch("polynomial dimension mismatch");
  }
  void check_axis(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::out_of_range("axis out of range");
  }

 private:
  int dim_;
  TermMap terms_;
};

/// numerator / (sum x_i^2)^k, kept canonical: the numerator is never exactly
/// divisible by sum x_i^2 while k > 0.
class RadialFraction {
 public:
  explicit RadialFraction(int dim = 4) : num_(dim), k_(0) {}
  RadialFraction(RatPoly numerator, int k) : num_(std::move(numerator)), k_(k) {
    if (k < 0) throw PreconditionError("denominator power must be nonnegative");
    canonicalize();
  }

  int dim() const { return num_.dim(); }
  int k() const { return k_; }
  const RatPoly& numerator() const { return num_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return k_ == 0; }

  /// Degree of homogeneity when the numerator is homogeneous.
  int homogeneity_degree() const { return num_.degree() - 2 * k_; }

  RadialFraction derivative(int axis) const {
    num_.check_axis(axis);
    if (k_ == 0) return RadialFraction(num_.derivative(axis), 0);
    // d/dx_i [P / S^k] = (dP/dx_i * S - 2k x_i P) / S^(k+1)
    RatPoly s = RatPoly::norm_sq(dim());
    RatPoly lead = num_.derivative(axis) * s;
    RatPoly tail = RatPoly::variable(dim(), axis, Rational(2 * k_)) * num_;
    return RadialFraction(lead - tail, k_ + 1);
  }

  RadialFraction laplacian() const {
    RadialFraction out(dim());
    for (int i = 0; i < dim(); ++i) out += derivative(i).derivative(i);
    return out;
  }

  RadialFraction scaled(const Rational& s) const { return RadialFraction(num_.scaled(s), k_); }

  RadialFraction& operator+=(const RadialFraction& o) {
    num_.check_same(o.num_);
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int kk = std::max(k_, o.k_);
    RatPoly s = RatPoly::norm_sq(dim());
    RatPoly a = k_ < kk ? num_ * s.pow(kk - k_) : num_;
    RatPoly b = o.k_ < kk ? o.num_ * s.pow(kk - o.k_) : o.num_;
    *this = RadialFraction(a + b, kk);
    return *this;
  }
  RadialFraction& operator-=(const RadialFraction& o) { return *this += o.scaled(Rational(-1)); }
  friend RadialFraction operator+(RadialFraction a, const RadialFraction& b) { return a += b; }
  friend RadialFraction operator-(RadialFraction a, const RadialFraction& b) { return a -= b; }

  friend RadialFraction operator*(const RadialFraction& a, const RadialFraction& b) {
    return RadialFraction(a.num_ * b.num_, a.k_ + b.k_);
  }

  template <Scalar T>
  T eval(std::span<const T> x) const {
    T p = num_.eval<T>(x);
    if (k_ == 0) return p;
    T s(0);
    for (const auto& xi : x) s += xi * xi;
    if (scalar_traits<T>::is_zero(s)) throw SingularPoint("radial fraction evaluated at the origin");
    T den(1);
    for (int i = 0; i < k_; ++i) den *= s;
    return T(p / den);
  }

  /// True when the numerator is not divisible by sum x_i^2 (or k == 0).
  bool is_canonical() const {
    if (num_.is_zero()) return k_ == 0;
    if (k_ == 0) return true;
    RatPoly q(dim());
    return !num_.divide_by_norm_sq(q);
  }

  friend bool operator==(const RadialFraction& a, const RadialFraction& b) {
    if (a.is_zero() && b.is_zero()) return a.dim() == b.dim();
    return a.k_ == b.k_ && a.num_ == b.num_;
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      k_ = 0;
      return;
    }
    RatPoly q(dim());
    while (k_ > 0 && num_.divide_by_norm_sq(q)) {
      num_ = std::move(q);
      q = RatPoly(dim());
      --k_;
    }
  }

  RatPoly num_;
  int k_;
};

/// Hypercomplex-valued function: component i is the coefficient of e_i.
class HyperFrac {
 public:
  HyperFrac() = default;
  HyperFrac(int var_dim, int components) : var_dim_(var_dim) {
    if (components != 2 && components != 4 && components != 8) {
      throw DimensionMismatch("component count must be 2, 4 or 8");
    }
    comps_.assign(components, RadialFraction(var_dim));
  }
  explicit HyperFrac(std::vector<RadialFraction> comps) : comps_(std::move(comps)) {
    if (comps_.size() != 2 && comps_.size() != 4 && comps_.size() != 8) {
      throw DimensionMismatch("component count must be 2, 4 or 8");
    }
    var_dim_ = comps_.front().dim();
    for (const auto& c : comps_) {
      if (c.dim() != var_dim_) throw DimensionMismatch("components must share variable dimension");
    }
  }

  /// Polynomial hypercomplex function from component polynomials.
  static HyperFrac from_polys(const std::vector<RatPoly>& polys) {
    std::vector<RadialFraction> comps;
    comps.reserve(polys.size());
    for (const auto& p : polys) comps.emplace_back(p, 0);
    return HyperFrac(std::move(comps));
  }

  int var_dim() const { return var_dim_; }
  int components() const { return static_cast<int>(comps_.size()); }
  const RadialFraction& operator[](int i) const { return comps_.at(i); }
  RadialFraction& operator[](int i) { return comps_.at(i); }
  const std::vector<RadialFraction>& comps() const { return comps_; }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const auto& c) { return c.is_zero(); });
  }
  bool is_polynomial() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const auto& c) { return c.is_polynomial(); });
  }

  HyperFrac derivative(int axis) const {
    HyperFrac out = *this;
    for (auto& c : out.comps_) c = c.derivative(axis);
    return out;
  }
  HyperFrac laplacian() const {
    HyperFrac out = *this;
    for (auto& c : out.comps_) c = c.laplacian();
    return out;
  }
  HyperFrac scaled(const Rational& s) const {
    HyperFrac out = *this;
    for (auto& c : out.comps_) c = c.scaled(s);
    return out;
  }
  HyperFrac conj() const {
    HyperFrac out = *this;
    for (std::size_t i = 1; i < out.comps_.size(); ++i) out.comps_[i] = out.comps_[i].scaled(Rational(-1));
    return out;
  }

  HyperFrac& operator+=(const HyperFrac& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  HyperFrac& operator-=(const HyperFrac& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  friend HyperFrac operator+(HyperFrac a, const HyperFrac& b) { return a += b; }
  friend HyperFrac operator-(HyperFrac a, const HyperFrac& b) { return a -= b; }

  template <Scalar T>
  std::vector<T> eval(std::span<const T> x) const {
    std::vector<T> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.template eval<T>(x));
    return out;
  }

  template <Scalar T, std::size_t D>
  Hypercomplex<T, D> eval_as(std::span<const T> x) const {
    if (components() != static_cast<int>(D)) throw DimensionMismatch("component count mismatch");
    auto v = eval<T>(x);
    return Hypercomplex<T, D>::from_span(std::span<const T>(v));
  }

  friend bool operator==(const HyperFrac& a, const HyperFrac& b) {
    return a.var_dim_ == b.var_dim_ && a.comps_ == b.comps_;
  }

  void check_same(const HyperFrac& o) const {
    if (o.var_dim_ != var_dim_ || o.comps_.size() != comps_.size()) {
      throw DimensionMismatch("hyperfrac shape mismatch");
    }
  }

 private:
  int var_dim_ = 4;
  std::vector<RadialFraction> comps_;
};

enum class Side { left, right };

/// D f = sum_i e_i df/dx_i (left) or f D = sum_i df/dx_i e_i (right); with
/// conjugated = true the basis e_i is replaced by conj(e_i). By default f must
/// have as many variables as components; a nonnegative first_var instead
/// differentiates in the block first_var .. first_var + components - 1.
inline HyperFrac dirac(const HyperFrac& f, Side side, bool conjugated = false, int first_var = -1) {
  const int m = f.components();
  if (first_var < 0) {
    if (f.var_dim() != m) throw DimensionMismatch("Dirac operator needs as many variables as components");
    first_var = 0;
  }
  if (first_var + m > f.var_dim()) throw DimensionMismatch("Dirac variable block out of range");
  HyperFrac out(f.var_dim(), m);
  for (int i = 0; i < m; ++i) {
    HyperFrac di = f.derivative(first_var + i);
    const int unit_sign = (conjugated && i > 0) ? -1 : 1;
    for (int j = 0; j < m; ++j) {
      if (di[j].is_zero()) continue;
      auto [sign, k] = side == Side::left ? basis_product(m, i, j) : basis_product(m, j, i);
      out[k] += di[j].scaled(Rational(sign * unit_sign));
    }
  }
  return out;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

/// p(A x): substitutes x_i -> sum_j A[i][j] x_j.
inline RatPoly linear_substitute(const RatPoly& p, const RationalMatrix& a) {
  const int d = p.dim();
  if (static_cast<int>(a.size()) != d) throw DimensionMismatch("substitution matrix size mismatch");
  std::vector<RatPoly> forms;
  forms.reserve(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(a[i].size()) != d) throw DimensionMismatch("substitution matrix must be square");
    RatPoly li(d);
    for (int j = 0; j < d; ++j) li += RatPoly::variable(d, j, a[i][j]);
    forms.push_back(std::move(li));
  }
  std::vector<std::vector<RatPoly>> powers(d);
  auto power = [&](int i, int e) -> const RatPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RatPoly::constant(d, Rational(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * forms[i]);
    return cache[e];
  };
  RatPoly out(d);
  for (const auto& [k, c] : p.terms()) {
    RatPoly term = RatPoly::constant(d, c);
    for (int i = 0; i < d; ++i) {
      if (k.exp[i]) term = term * power(i, k.exp[i]);
    }
    out += term;
  }
  return out;
}

inline HyperFrac linear_substitute(const HyperFrac& f, const RationalMatrix& a) {
  std::vector<RadialFraction> comps;
  for (const auto& c : f.comps()) {
    if (!c.is_polynomial()) throw PreconditionError("linear substitution needs polynomial components (k = 0)");
    comps.emplace_back(linear_substitute(c.numerator(), a), 0);
  }
  return HyperFrac(std::move(comps));
}

/// Matrix of x -> alpha x in the basis e_0..e_{D-1}.
template <std::size_t D>
RationalMatrix left_mul_matrix(const Hypercomplex<Rational, D>& alpha) {
  RationalMatrix m(D, std::vector<Rational>(D, Rational(0)));
  for (std::size_t j = 0; j < D; ++j) {
    auto col = alpha * Hypercomplex<Rational, D>::basis(j);
    for (std::size_t i = 0; i < D; ++i) m[i][j] = col[i];
  }
  return m;
}

// ---- fast floating evaluation ----

/// Flattened copy of a RatPoly with double coefficients for hot loops.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const RatPoly& p) : dim_(p.dim()) {
    for (const auto& [k, c] : p.terms()) {
      coef_.push_back(c.get_d());
      for (int i = 0; i < dim_; ++i) {
        exps_.push_back(k.exp[i]);
        max_exp_ = std::max<int>(max_exp_, k.exp[i]);
      }
    }
  }

  int dim() const { return dim_; }
  int max_exp() const { return max_exp_; }

  /// powers[i * (max_exp + 1) + e] must hold x_i^e.
  double eval_with_powers(const double* powers, int stride) const {
    double sum = 0;
    const std::uint16_t* e = exps_.data();
    for (double c : coef_) {
      double t = c;
      for (int i = 0; i < dim_; ++i, ++e) {
        if (*e) t *= powers[i * stride + *e];
      }
      sum += t;
    }
    return sum;
  }

 private:
  int dim_ = 0;
  int max_exp_ = 0;
  std::vector<double> coef_;
  std::vector<std::uint16_t> exps_;
};

class CompiledHyperFrac {
 public:
  CompiledHyperFrac() = default;
  explicit CompiledHyperFrac(const HyperFrac& f) : var_dim_(f.var_dim()) {
    for (const auto& c : f.comps()) {
      polys_.emplace_back(c.numerator());
      ks_.push_back(c.k());
      stride_ = std::max(stride_, polys_.back().max_exp() + 1);
    }
  }

  int components() const { return static_cast<int>(polys_.size()); }
  int var_dim() const { return var_dim_; }

  void eval(std::span<const double> x, std::span<double> out) const {
    double powers[kMaxVars * 64];
    double* pw = stride_ <= 64 ? powers : nullptr;
    std::vector<double> heap;
    if (!pw) {
      heap.resize(static_cast<std::size_t>(var_dim_) * stride_);
      pw = heap.data();
    }
    double s = 0;
    for (int i = 0; i < var_dim_; ++i) {
      pw[i * stride_] = 1;
      for (int e = 1; e < stride_; ++e) pw[i * stride_ + e] = pw[i * stride_ + e - 1] * x[i];
      s += x[i] * x[i];
    }
    for (std::size_t c = 0; c < polys_.size(); ++c) {
      double v = polys_[c].eval_with_powers(pw, stride_);
      if (ks_[c] > 0) {
        if (s == 0) throw SingularPoint("evaluation at the origin");
        v /= std::pow(s, ks_[c]);
      }
      out[c] = v;
    }
  }

 private:
  int var_dim_ = 0;
  int stride_ = 1;
  std::vector<CompiledPoly> polys_;
  std::vector<int> ks_;
};

// ---- JSON ----

inline nlohmann::json to_json(const RadialFraction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : f.numerator().terms()) {
    nlohmann::json e = nlohmann::json::array();
    for (int i = 0; i < f.dim(); ++i) e.push_back(k.exp[i]);
    terms.push_back({{"exp", e}, {"coef", to_string(c)}});
  }
  return {{"dim", f.dim()}, {"k", f.k()}, {"terms", terms}};
}

inline RadialFraction radial_fraction_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  const int k = j.at("k").get<int>();
  RatPoly p(dim);
  for (const auto& t : j.at("terms")) {
    auto exps = t.at("exp").get<std::vector<int>>();
    p += RatPoly::monomial(dim, exps, parse_rational(t.at("coef").get<std::string>()));
  }
  return RadialFraction(std::move(p), k);
}

inline nlohmann::json to_json(const HyperFrac& f) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : f.comps()) comps.push_back(to_json(c));
  return {{"dim", f.var_dim()}, {"components", comps}};
}

inline HyperFrac hyperfrac_from_json(const nlohmann::json& j) {
  std::vector<RadialFraction> comps;
  for (const auto& c : j.at("components")) comps.push_back(radial_fraction_from_json(c));
  HyperFrac f(std::move(comps));
  if (f.var_dim() != j.at("dim").get<int>()) throw DimensionMismatch("hyperfrac dim field disagrees with components");
  return f;
}

}  // namespace qszego
