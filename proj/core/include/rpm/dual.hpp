#pragma once

// Forward-mode dual number with two tangent slots: one for the energy E and
// one for a designated potential parameter. Only the field operations are
// defined; that is all the Riccati recurrence and elimination need.

#include "rpm/numeric.hpp"

namespace rpm {

template <class T>
struct Dual {
  T value{};
  T dE{};
  T dP{};

  Dual() = default;
  Dual(T v) : value(std::move(v)), dE(0), dP(0) {}  // NOLINT: implicit constant lift
  Dual(T v, T de, T dp) : value(std::move(v)), dE(std::move(de)), dP(std::move(dp)) {}

  Dual& operator+=(const Dual& o) {
    value += o.value;
    dE += o.dE;
    dP += o.dP;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    dE -= o.dE;
    dP -= o.dP;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    dE = value * o.dE + dE * o.value;
    dP = value * o.dP + dP * o.value;
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    if (o.value == 0) throw std::domain_error("dual division by zero");
    T inv = T(1) / o.value;
    value *= inv;
    dE = (dE - value * o.dE) * inv;
    dP = (dP - value * o.dP) * inv;
    return *this;
  }
  Dual operator-() const { return Dual(-value, -dE, -dP); }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

  friend bool operator==(const Dual& a, const Dual& b) {
    return a.value == b.value && a.dE == b.dE && a.dP == b.dP;
  }
};

using DualReal = Dual<BigReal>;

/// Magnitude of the value slot; used for pivot selection.
template <class T>
T magnitude(const Dual<T>& x) {
  return abs(x.value);
}
inline BigReal magnitude(const BigReal& x) { return abs(x); }

}  // namespace rpm
