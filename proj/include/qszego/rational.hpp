// Exact rational scalars and the pi-power ledger used by every exact
// identity in the library.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace qszego {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static void canonicalize(double&) {}
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  /// mpq_class(num, den) is stored as given; arithmetic assumes lowest terms.
  static void canonicalize(Rational& x) { x.canonicalize(); }
};

template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, Rational>;

template <Scalar T>
double to_double(const T& x) {
  return scalar_traits<T>::to_double(x);
}

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q" with q > 0; integers are still printed with "/1".
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline Rational rational_pow(const Rational& base, int exponent) {
  Rational result(1);
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  for (int i = 0; i < std::abs(exponent); ++i) result *= b;
  return result;
}

inline Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

/// coeff * pi^(half_pi_power / 2).
struct PiMonomial {
  Rational coeff{0};
  int half_pi_power = 0;

  static PiMonomial rational(const Rational& r) { return {r, 0}; }

  bool is_zero() const { return sgn(coeff) == 0; }

  double to_double() const {
    return coeff.get_d() * std::pow(std::numbers::pi, 0.5 * half_pi_power);
  }

  PiMonomial operator-() const { return {Rational(-coeff), half_pi_power}; }

  friend PiMonomial operator*(const PiMonomial& a, const PiMonomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {Rational(a.coeff * b.coeff), a.half_pi_power + b.half_pi_power};
  }
  friend PiMonomial operator/(const PiMonomial& a, const PiMonomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero pi-monomial");
    if (a.is_zero()) return {};
    return {Rational(a.coeff / b.coeff), a.half_pi_power - b.half_pi_power};
  }
  friend PiMonomial operator*(const PiMonomial& a, const Rational& r) {
    return a * PiMonomial{r, 0};
  }

  friend bool operator==(const PiMonomial& a, const PiMonomial& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.coeff == b.coeff && a.half_pi_power == b.half_pi_power;
  }
};

inline PiMonomial pi_power(int half_powers) { return {Rational(1), half_powers}; }

/// Finite sum of PiMonomials keyed by the half-power of pi. Equality is
/// structural, which makes it an exact test for the Gamma-ratio identities.
class PiSeries {
 public:
  PiSeries() = default;
  PiSeries(const PiMonomial& m) { *this += m; }  // NOLINT(implicit)

  PiSeries& operator+=(const PiMonomial& m) {
    if (m.is_zero()) return *this;
    auto& slot = terms_[m.half_pi_power];
    slot += m.coeff;
    if (sgn(slot) == 0) terms_.erase(m.half_pi_power);
    return *this;
  }
  PiSeries& operator+=(const PiSeries& other) {
    for (const auto& [p, c] : other.terms_) *this += PiMonomial{c, p};
    return *this;
  }
  PiSeries& operator-=(const PiSeries& other) {
    for (const auto& [p, c] : other.terms_) *this += PiMonomial{Rational(-c), p};
    return *this;
  }
  friend PiSeries operator*(const PiSeries& s, const PiMonomial& m) {
    PiSeries out;
    for (const auto& [p, c] : s.terms_) out += PiMonomial{c, p} * m;
    return out;
  }
  friend PiSeries operator-(PiSeries a, const PiSeries& b) { return a -= b; }
  friend PiSeries operator+(PiSeries a, const PiSeries& b) { return a += b; }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rational>& terms() const { return terms_; }

  double to_double() const {
    double v = 0;
    for (const auto& [p, c] : terms_) v += PiMonomial{c, p}.to_double();
    return v;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [p, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += qszego::to_string(c);
      if (p != 0) out += "*pi^(" + std::to_string(p) + "/2)";
    }
    return out;
  }

  friend bool operator==(const PiSeries& a, const PiSeries& b) { return a.terms_ == b.terms_; }

 private:
  std::map<int, Rational> terms_;
};

}  // namespace qszego
