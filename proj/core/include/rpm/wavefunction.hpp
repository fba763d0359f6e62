#pragma once

// Pade approximant [M/N](z) of sum_j f_j z^j and the approximate eigenfunction
//   psi(x) = x^s exp(-int_0^x f(y) dy),  f(y) = y [M/N](y^2),
// normalized by psi(0) = 1 (s = 0) or psi'(0) = 1 (s = 1).

#include "rpm/numeric.hpp"
#include "rpm/potential.hpp"
#include "rpm/riccati.hpp"

#include <vector>

namespace rpm {

struct PadeApproximant {
  int M = 0;
  int N = 0;
  std::vector<BigReal> a;  // a_0..a_M
  std::vector<BigReal> b;  // b_0..b_N, b_0 = 1
  /// Positive real zeros x of b(x^2) with x <= pole_search_limit.
  std::vector<BigReal> poles;
  double pole_search_limit = 0;
  /// The linear system for b_1..b_N was numerically singular; free
  /// unknowns were set to zero.
  bool rank_deficient = false;
  unsigned digits10 = 0;

  BigReal numerator(const BigReal& z) const;
  BigReal denominator(const BigReal& z) const;
  /// [M/N](z) = a(z) / b(z).
  BigReal value(const BigReal& z) const;
  /// d/dz [M/N](z).
  BigReal derivative(const BigReal& z) const;
  /// Largest |x| with no pole in [0, |x|] (infinity if no pole was found).
  BigReal pole_free_radius() const;
};

/// Solves sum_{i=0}^{N} b_i f_{k-i} = 0, k = M+1..M+N with b_0 = 1, then
/// a_k = sum_{i<=min(k,N)} b_i f_{k-i}. Requires M >= N and f up to M+N+1.
PadeApproximant pade_from_coeffs(const CoeffSequence<BigReal>& c, int M, int N,
                                 unsigned digits10, double pole_search_limit = 10.0);

/// Builds the coefficients at energy E (units of `v`) and the approximant.
PadeApproximant pade_for_energy(const PotentialSpec& v, int s, const BigReal& energy, int M,
                                int N, unsigned digits10, double pole_search_limit = 10.0);

/// Taylor coefficients of a(z)/b(z) up to z^order.
std::vector<BigReal> pade_taylor(const PadeApproximant& p, int order);

/// psi(x); throws InvalidInput past the first real pole.
BigReal eigenfunction_eval(const PadeApproximant& p, int s, const BigReal& x);

/// int_0^x f(y) dy = (1/2) int_0^{x^2} [M/N](z) dz.
BigReal log_integral(const PadeApproximant& p, const BigReal& x);

struct ResidualPoint {
  BigReal x;
  BigReal residual;  // |psi'' + (E - V) psi| / max(1, |psi|)
};

/// Pointwise Schroedinger residual of psi, with psi''/psi = f^2 - f' - 2 s f/x.
std::vector<ResidualPoint> residual_profile(const PadeApproximant& p, int s, const BigReal& energy,
                                            const PotentialSpec& v,
                                            const std::vector<BigReal>& x_grid);

}  // namespace rpm
