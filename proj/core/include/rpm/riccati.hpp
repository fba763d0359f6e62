#pragma once

// Taylor coefficients of the regularized logarithmic derivative
//   f(x) = s/x - psi'(x)/psi(x) = x * sum_j f_j z^j,  z = x^2,
// generated by the Riccati recurrence
//   f_0 = E/(2s+1),
//   f_n = (sum_{j<n} f_j f_{n-1-j} - V_n) / (2n+2s+1),  n >= 1.
// The recurrence is evaluated with big reals, dual numbers (tangents in E
// and one potential parameter) or exact polynomials in E.

#include "rpm/dual.hpp"
#include "rpm/numeric.hpp"
#include "rpm/poly.hpp"
#include "rpm/potential.hpp"

#include <cstdint>
#include <functional>
#include <type_traits>
#include <optional>
#include <string>
#include <vector>

namespace rpm {

template <class T>
struct CoeffSequence {
  int s = 0;
  std::vector<T> f;
  std::uint64_t fingerprint = 0;

  int n_max() const { return static_cast<int>(f.size()) - 1; }
  const T& operator[](std::size_t j) const { return f[j]; }
};

void require_parity(int s);

/// Incrementally extendable coefficient generator. One instance is one
/// computation context (potential, parity, energy, precision); extend()
/// only computes the coefficients not generated yet.
template <class T>
class RiccatiSeries {
 public:
  /// `potential_term(n)` returns V_n already converted to T.
  /// `digits10` is the working precision for numeric T (ignored for exact T).
  template <class VTerm>
  RiccatiSeries(int s, T f0, std::uint64_t fingerprint, VTerm potential_term, unsigned digits10 = 0)
      : s_(s), digits_(digits10), term_(std::move(potential_term)) {
    seq_.s = s;
    seq_.fingerprint = fingerprint;
    seq_.f.push_back(std::move(f0));
  }

  const CoeffSequence<T>& extend(int n_max) {
    std::optional<PrecisionScope> scope;
    if (digits_ != 0) scope.emplace(digits_);
    for (int n = seq_.n_max() + 1; n <= n_max; ++n) {
      const auto& f = seq_.f;
      // sum_{j=0}^{n-1} f_j f_{n-1-j}, folded by symmetry
      T acc{};
      const int m = n - 1;
      for (int j = 0; 2 * j < m; ++j) acc += f[j] * f[m - j];
      acc += acc;
      if (m % 2 == 0) acc += f[m / 2] * f[m / 2];
      acc -= term_(static_cast<std::size_t>(n));
      seq_.f.push_back(divide_by(acc, 2 * n + 2 * s_ + 1));
    }
    return seq_;
  }

  const CoeffSequence<T>& sequence() const { return seq_; }

 private:
  static T divide_by(const T& x, int k) {
    if constexpr (std::is_same_v<T, RationalPoly>) {
      return scale(x, Rational(1, k));
    } else if constexpr (std::is_same_v<T, DualReal>) {
      return DualReal(x.value / k, x.dE / k, x.dP / k);
    } else {
      return x / k;
    }
  }

  int s_;
  unsigned digits_;
  std::function<T(std::size_t)> term_;
  CoeffSequence<T> seq_;
};

/// f_0..f_{n_max} at a numeric energy. Requires v0 = 0 and P >= 20.
CoeffSequence<BigReal> coeffs_numeric(const PotentialSpec& v, int s, const BigReal& energy,
                                      int n_max, unsigned digits10);

/// As coeffs_numeric, with dE seeded to 1 and, when `param` is given, dP
/// seeded through dV_n/dparam.
CoeffSequence<DualReal> coeffs_dual(const PotentialSpec& v, int s, const BigReal& energy,
                                    const std::optional<std::string>& param, int n_max,
                                    unsigned digits10);

/// Exact polynomials in E (coefficients polynomial in the symbolic parameter,
/// if the potential has one).
CoeffSequence<RationalPoly> coeffs_symbolic(const PotentialSpec& v, int s, int n_max);

/// Generators behind the functions above, for callers that extend n_max
/// incrementally (e.g. Hankel determinants of growing dimension).
RiccatiSeries<BigReal> numeric_series(const PotentialSpec& v, int s, const BigReal& energy,
                                      unsigned digits10);
RiccatiSeries<DualReal> dual_series(const PotentialSpec& v, int s, const BigReal& energy,
                                    const std::optional<std::string>& param, unsigned digits10);
RiccatiSeries<RationalPoly> symbolic_series(const PotentialSpec& v, int s);

}  // namespace rpm
