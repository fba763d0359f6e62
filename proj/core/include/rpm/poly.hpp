#pragma once

// Dense univariate polynomials over an exact coefficient ring.
//
// Poly<Rational> is a polynomial in a potential parameter; Poly<Poly<Rational>>
// (RationalPoly) is a polynomial in the energy E whose coefficients are
// polynomials in that parameter. Canonical form: no trailing zero
// coefficients, so the zero polynomial has an empty coefficient vector.

#include "rpm/numeric.hpp"

#include <climits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rpm {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = INT_MIN;

template <class C>
class Poly;

inline bool is_zero(const Rational& q) { return q == 0; }
template <class C>
bool is_zero(const Poly<C>& p) {
  return p.is_zero();
}

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }
template <class C>
Poly<C> exact_quotient(const Poly<C>& a, const Poly<C>& b);

inline std::size_t term_count(const Rational& q) { return q == 0 ? 0 : 1; }
template <class C>
std::size_t term_count(const Poly<C>& p) {
  std::size_t n = 0;
  for (const auto& c : p.coeffs()) n += term_count(c);
  return n;
}

template <class C>
class Poly {
 public:
  Poly() = default;
  Poly(C constant) {  // NOLINT: constants lift implicitly
    if (!rpm::is_zero(constant)) c_.push_back(std::move(constant));
  }
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// x^k with unit coefficient.
  static Poly monomial(int k, C coeff = C(Rational(1))) {
    std::vector<C> v(static_cast<std::size_t>(k) + 1);
    v.back() = std::move(coeff);
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  const std::vector<C>& coeffs() const { return c_; }

  /// Coefficient of x^k; zero beyond the degree.
  C operator[](std::size_t k) const { return k < c_.size() ? c_[k] : C(); }
  const C& leading() const { return c_.back(); }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (rpm::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Multiplication by an element of the innermost field.
  friend Poly scale(Poly p, const Rational& q) {
    for (auto& c : p.c_) c = scale_coeff(c, q);
    p.trim();
    return p;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<C> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = scale_coeff(c_[i], Rational(i));
    return Poly(std::move(r));
  }

  /// Polynomial long division. Returns (quotient, remainder). Requires the
  /// leading coefficient of `b` to divide exactly at every step (always true
  /// over Q; over Q[p] true whenever b divides a).
  friend std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), std::move(a)};
    std::vector<C> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const auto shift = static_cast<std::size_t>(a.degree() - b.degree());
      C t = exact_quotient(a.leading(), b.leading());
      for (std::size_t i = 0; i < b.c_.size(); ++i) a.c_[i + shift] -= t * b.c_[i];
      // The leading term cancels by construction; drop it even if the inner
      // division was inexact so the loop always terminates.
      a.c_.pop_back();
      a.trim();
      q[shift] = std::move(t);
    }
    return {Poly(std::move(q)), std::move(a)};
  }

  /// Monic view: divide by the rational leading coefficient of the highest
  /// power of x (and, for nested polynomials, of the highest inner power).
  Poly monic() const {
    if (is_zero()) return *this;
    return scale(*this, Rational(1) / innermost_leading(leading()));
  }

 private:
  static Rational innermost_leading(const Rational& q) { return q; }
  template <class D>
  static Rational innermost_leading(const Poly<D>& p) {
    return innermost_leading(p.leading());
  }
  static Rational scale_coeff(const Rational& c, const Rational& q) { return c * q; }
  template <class D>
  static Poly<D> scale_coeff(const Poly<D>& c, const Rational& q) {
    return scale(c, q);
  }

  void trim() {
    while (!c_.empty() && rpm::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
};

template <class C>
Poly<C> exact_quotient(const Poly<C>& a, const Poly<C>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

/// Polynomial in a single potential parameter.
using ParamPoly = Poly<Rational>;
/// Polynomial in E with coefficients polynomial in one parameter.
using RationalPoly = Poly<ParamPoly>;

/// Horner evaluation at a real point (any type constructible from Rational
/// via to_big is handled by the overloads below).
inline BigReal evaluate(const ParamPoly& p, const BigReal& x, unsigned digits10) {
  PrecisionScope scope(digits10);
  BigReal acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_big(*it, digits10);
  return acc;
}

inline BigReal evaluate(const RationalPoly& p, const BigReal& energy, const BigReal& param,
                        unsigned digits10) {
  PrecisionScope scope(digits10);
  BigReal acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * energy + evaluate(*it, param, digits10);
  return acc;
}

inline Rational evaluate_exact(const ParamPoly& p, const Rational& x) {
  Rational acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Substitutes a rational parameter value, leaving a polynomial in E.
inline RationalPoly bind_parameter(const RationalPoly& p, const Rational& x) {
  std::vector<ParamPoly> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.emplace_back(evaluate_exact(c, x));
  return RationalPoly(std::move(out));
}

/// Human-readable form such as `E^6 - 27*E^4 + 162*E^3*lambda - 25`.
/// Terms are ordered by descending power of E, then of the parameter.
inline std::string format(const RationalPoly& p, const std::string& energy = "E",
                          const std::string& param = "p") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& outer = p.coeffs();
  for (int i = static_cast<int>(outer.size()) - 1; i >= 0; --i) {
    const auto& inner = outer[static_cast<std::size_t>(i)].coeffs();
    for (int j = static_cast<int>(inner.size()) - 1; j >= 0; --j) {
      Rational c = inner[static_cast<std::size_t>(j)];
      if (c == 0) continue;
      const bool negative = c < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string factors;
      auto add = [&factors](const std::string& var, int power) {
        if (power == 0) return;
        if (!factors.empty()) factors += "*";
        factors += var;
        if (power > 1) factors += "^" + std::to_string(power);
      };
      add(energy, i);
      add(param, j);
      if (factors.empty()) {
        os << c.str();
      } else if (c == 1) {
        os << factors;
      } else {
        os << c.str() << "*" << factors;
      }
    }
  }
  return os.str();
}

}  // namespace rpm
