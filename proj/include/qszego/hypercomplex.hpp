// Complex numbers, quaternions and octonions over an exact or floating scalar.
//
// All three algebras share one multiplication driver keyed by a sign/index
// table. The tables are generated from the defining triples: the quaternion
// table from (1,2,3), the octonion table from the seven triples of W.
#pragma once

#include "qszego/errors.hpp"
#include "qszego/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qszego {

using Triple = std::array<int, 3>;

/// Octonion triples: e_a e_b = e_c for every cyclic rotation of (a,b,c).
inline constexpr std::array<Triple, 7> kOctonionTriples = {{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5},
}};

template <std::size_t D>
concept AlgebraDim = (D == 2 || D == 4 || D == 8);

template <std::size_t D>
struct MulTable {
  // e_i e_j = sign[i][j] * e_{index[i][j]}
  std::array<std::array<int, D>, D> sign{};
  std::array<std::array<int, D>, D> index{};
};

namespace detail {

template <std::size_t D>
constexpr MulTable<D> build_table() {
  MulTable<D> t{};
  for (std::size_t i = 0; i < D; ++i) {
    t.sign[0][i] = 1;
    t.index[0][i] = static_cast<int>(i);
    t.sign[i][0] = 1;
    t.index[i][0] = static_cast<int>(i);
  }
  for (std::size_t i = 1; i < D; ++i) {
    t.sign[i][i] = -1;
    t.index[i][i] = 0;
  }
  auto set = [&t](int a, int b, int c) {
    t.sign[a][b] = 1;
    t.index[a][b] = c;
    t.sign[b][a] = -1;
    t.index[b][a] = c;
  };
  for (const auto& tr : kOctonionTriples) {
    if (tr[0] >= static_cast<int>(D) || tr[1] >= static_cast<int>(D) || tr[2] >= static_cast<int>(D)) {
      continue;
    }
    set(tr[0], tr[1], tr[2]);
    set(tr[1], tr[2], tr[0]);
    set(tr[2], tr[0], tr[1]);
  }
  return t;
}

}  // namespace detail

template <std::size_t D>
  requires AlgebraDim<D>
inline constexpr MulTable<D> kMulTable = detail::build_table<D>();

/// Runtime lookup for code that only knows the dimension at run time.
inline std::pair<int, int> basis_product(std::size_t dim, int i, int j) {
  switch (dim) {
    case 2: return {kMulTable<2>.sign[i][j], kMulTable<2>.index[i][j]};
    case 4: return {kMulTable<4>.sign[i][j], kMulTable<4>.index[i][j]};
    case 8: return {kMulTable<8>.sign[i][j], kMulTable<8>.index[i][j]};
    default: throw std::invalid_argument("algebra dimension must be 2, 4 or 8");
  }
}

template <Scalar T, std::size_t D>
  requires AlgebraDim<D>
class Hypercomplex {
 public:
  using scalar_type = T;
  static constexpr std::size_t dim = D;

  Hypercomplex() {
    for (auto& c : c_) c = T(0);
  }
  explicit Hypercomplex(const std::array<T, D>& coeffs) : c_(coeffs) {
    for (auto& c : c_) scalar_traits<T>::canonicalize(c);
  }
  Hypercomplex(std::initializer_list<T> coeffs) : Hypercomplex() {
    if (coeffs.size() > D) throw std::invalid_argument("too many components");
    std::size_t i = 0;
    for (const auto& v : coeffs) scalar_traits<T>::canonicalize(c_[i++] = v);
  }

  static Hypercomplex real(const T& x) {
    Hypercomplex h;
    scalar_traits<T>::canonicalize(h.c_[0] = x);
    return h;
  }
  static Hypercomplex basis(std::size_t i, const T& scale = T(1)) {
    if (i >= D) throw std::out_of_range("basis index out of range");
    Hypercomplex h;
    scalar_traits<T>::canonicalize(h.c_[i] = scale);
    return h;
  }
  static Hypercomplex from_span(std::span<const T> v) {
    if (v.size() != D) throw std::invalid_argument("component count mismatch");
    Hypercomplex h;
    for (std::size_t i = 0; i < D; ++i) scalar_traits<T>::canonicalize(h.c_[i] = v[i]);
    return h;
  }

  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::array<T, D>& coeffs() const { return c_; }
  std::array<T, D>& coeffs() { return c_; }

  T re() const { return c_[0]; }
  T im(std::size_t i) const {
    if (i < 1 || i >= D) throw std::out_of_range("imaginary index must be in 1..dim-1");
    return c_[i];
  }
  Hypercomplex vector_part() const {
    Hypercomplex h = *this;
    h.c_[0] = T(0);
    return h;
  }

  Hypercomplex conj() const {
    Hypercomplex h;
    h.c_[0] = c_[0];
    for (std::size_t i = 1; i < D; ++i) h.c_[i] = -c_[i];
    return h;
  }

  T norm_sq() const {
    T s(0);
    for (const auto& c : c_) s += c * c;
    return s;
  }

  Hypercomplex inverse() const {
    T n = norm_sq();
    if (scalar_traits<T>::is_zero(n)) throw std::domain_error("inverse of zero");
    Hypercomplex h = conj();
    for (auto& c : h.c_) c /= n;
    return h;
  }

  bool is_zero() const {
    for (const auto& c : c_) {
      if (!scalar_traits<T>::is_zero(c)) return false;
    }
    return true;
  }

  Hypercomplex& operator+=(const Hypercomplex& o) {
    for (std::size_t i = 0; i < D; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Hypercomplex& operator-=(const Hypercomplex& o) {
    for (std::size_t i = 0; i < D; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Hypercomplex& operator*=(const T& s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  Hypercomplex& operator/=(const T& s) {
    if (scalar_traits<T>::is_zero(s)) throw std::domain_error("division by zero scalar");
    for (auto& c : c_) c /= s;
    return *this;
  }

  friend Hypercomplex operator+(Hypercomplex a, const Hypercomplex& b) { return a += b; }
  friend Hypercomplex operator-(Hypercomplex a, const Hypercomplex& b) { return a -= b; }
  friend Hypercomplex operator-(const Hypercomplex& a) {
    Hypercomplex h;
    for (std::size_t i = 0; i < D; ++i) h.c_[i] = -a.c_[i];
    return h;
  }
  friend Hypercomplex operator*(Hypercomplex a, const T& s) { return a *= s; }
  friend Hypercomplex operator*(const T& s, Hypercomplex a) { return a *= s; }
  friend Hypercomplex operator/(Hypercomplex a, const T& s) { return a /= s; }

  friend Hypercomplex operator*(const Hypercomplex& a, const Hypercomplex& b) {
    const auto& tab = kMulTable<D>;
    Hypercomplex out;
    for (std::size_t i = 0; i < D; ++i) {
      if (scalar_traits<T>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < D; ++j) {
        if (scalar_traits<T>::is_zero(b.c_[j])) continue;
        T prod = a.c_[i] * b.c_[j];
        if (tab.sign[i][j] > 0) {
          out.c_[tab.index[i][j]] += prod;
        } else {
          out.c_[tab.index[i][j]] -= prod;
        }
      }
    }
    return out;
  }

  friend bool operator==(const Hypercomplex& a, const Hypercomplex& b) { return a.c_ == b.c_; }

 private:
  std::array<T, D> c_;
};

template <Scalar T>
using Complex = Hypercomplex<T, 2>;
template <Scalar T>
using Quaternion = Hypercomplex<T, 4>;
template <Scalar T>
using Octonion = Hypercomplex<T, 8>;

using QuaternionD = Quaternion<double>;
using OctonionD = Octonion<double>;
using QuaternionQ = Quaternion<Rational>;
using OctonionQ = Octonion<Rational>;

/// (xy)z - x(yz).
template <Scalar T, std::size_t D>
Hypercomplex<T, D> associator(const Hypercomplex<T, D>& x, const Hypercomplex<T, D>& y,
                              const Hypercomplex<T, D>& z) {
  return (x * y) * z - x * (y * z);
}

template <Scalar T, std::size_t D>
double abs(const Hypercomplex<T, D>& a) {
  return std::sqrt(to_double(a.norm_sq()));
}

template <std::size_t D>
Hypercomplex<double, D> to_double(const Hypercomplex<Rational, D>& a) {
  Hypercomplex<double, D> out;
  for (std::size_t i = 0; i < D; ++i) out[i] = a[i].get_d();
  return out;
}

template <std::size_t D>
Hypercomplex<Rational, D> to_rational(const Hypercomplex<double, D>& a) {
  Hypercomplex<Rational, D> out;
  for (std::size_t i = 0; i < D; ++i) out[i] = Rational(a[i]);
  return out;
}

// ---- text form: "a0 + a1 e1 + ... + a{D-1} e{D-1}" ----

template <Scalar T, std::size_t D>
std::string to_text(const Hypercomplex<T, D>& a) {
  std::string out = to_string(a[0]);
  for (std::size_t i = 1; i < D; ++i) {
    out += " + " + to_string(a[i]) + " e" + std::to_string(i);
  }
  return out;
}

template <Scalar T>
T parse_scalar(const std::string& s) {
  if constexpr (std::is_same_v<T, Rational>) {
    return parse_rational(s);
  } else {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
  }
}

template <Scalar T, std::size_t D>
Hypercomplex<T, D> parse_text(const std::string& text) {
  Hypercomplex<T, D> out;
  std::vector<bool> seen(D, false);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(" + ", pos);
    std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    while (!term.empty() && term.front() == ' ') term.erase(term.begin());
    while (!term.empty() && term.back() == ' ') term.pop_back();
    if (term.empty()) throw std::invalid_argument("empty term in hypercomplex text");
    std::size_t idx = 0;
    std::string value = term;
    auto space = term.rfind(' ');
    if (space != std::string::npos) {
      std::string unit = term.substr(space + 1);
      if (unit.size() < 2 || unit[0] != 'e') throw std::invalid_argument("bad basis unit '" + unit + "'");
      idx = std::stoul(unit.substr(1));
      value = term.substr(0, space);
    }
    if (idx >= D) throw std::out_of_range("basis index out of range in text");
    if (seen[idx]) throw std::invalid_argument("repeated basis unit in text");
    seen[idx] = true;
    out[idx] = parse_scalar<T>(value);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return out;
}

template <Scalar T, std::size_t D>
std::ostream& operator<<(std::ostream& os, const Hypercomplex<T, D>& a) {
  return os << to_text(a);
}

// ---- JSON array form: [a0, ..., a{D-1}], rationals as "p/q" ----

template <Scalar T, std::size_t D>
nlohmann::json to_json(const Hypercomplex<T, D>& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < D; ++i) {
    if constexpr (std::is_same_v<T, Rational>) {
      arr.push_back(to_string(a[i]));
    } else {
      arr.push_back(a[i]);
    }
  }
  return arr;
}

template <Scalar T>
T scalar_from_json(const nlohmann::json& j) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("exact scalar must be a \"p/q\" string or integer");
  } else {
    if (!j.is_number()) throw std::invalid_argument("floating scalar must be a JSON number");
    return j.get<double>();
  }
}

template <Scalar T, std::size_t D>
Hypercomplex<T, D> hypercomplex_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("hypercomplex JSON must be an array");
  if (j.size() != D) throw DimensionMismatch("expected an array of " + std::to_string(D) + " components");
  Hypercomplex<T, D> out;
  for (std::size_t i = 0; i < D; ++i) out[i] = scalar_from_json<T>(j[i]);
  return out;
}

}  // namespace qszego
