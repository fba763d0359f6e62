#pragma once

#include "rpm/hankel.hpp"
#include "rpm/potential.hpp"

#include <cmath>
#include <map>
#include <string>

namespace rpm::test {

inline PotentialSpec make(Model m, std::map<std::string, Rational> params = {}, int order = 8) {
  return series_coefficients(m, params, order);
}

/// Potential whose parameter `name` stays symbolic.
inline PotentialSpec symbolic(Model m, const std::string& name, int order = 8) {
  std::map<std::string, ParamValue> p;
  p[name] = ParamValue{Rational(0), name};
  return series_coefficients(m, p, order);
}

inline BigReal big(const char* text, unsigned digits = 60) { return to_big(text, digits); }

/// Polynomial in E with rational coefficients, lowest power first.
inline RationalPoly epoly(std::initializer_list<Rational> c) {
  std::vector<ParamPoly> v;
  for (const auto& q : c) v.emplace_back(q);
  return RationalPoly(std::move(v));
}

inline RationalPoly power(const RationalPoly& p, int k) {
  RationalPoly r = epoly({1});
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

/// |a - b| / max(|b|, tiny) as a log10 figure.
inline double log10_rel(const BigReal& a, const BigReal& b) {
  if (a == b) return -1e9;
  return log10_abs(a - b) - std::max(log10_abs(b), -1000.0);
}

}  // namespace rpm::test
