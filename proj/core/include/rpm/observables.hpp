#pragma once

// Expectation values <A> of even polynomial observables from the slope of the
// RPM energy of H + beta*A at beta = 0 (Hellmann-Feynman).

#include "rpm/hankel.hpp"
#include "rpm/numeric.hpp"
#include "rpm/potential.hpp"
#include "rpm/solver.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace rpm {

/// A(x) = sum_j A_j x^{2j}.
struct ObservableSpec {
  std::vector<Rational> coeffs;

  void validate() const;
  /// Parses `x^2`, `1`, `x^4 + 2/3*x^2` or a coefficient list `0,1`.
  static ObservableSpec parse(std::string_view text);
};

/// Name of the tangent parameter carrying A through the recurrence.
inline constexpr const char* kObservableParam = "observable";

/// -(dH/dbeta)/(dH/dE) at (root, beta = 0) plus A_0. `root` is in the units
/// of `v` (constant term included). Throws ConvergenceError when dH/dE
/// vanishes at the root.
BigReal expectation(const PotentialSpec& v, const ObservableSpec& a, const HankelSpec& spec,
                    const BigReal& root, unsigned digits10);

struct SlopePoint {
  Rational beta;
  RootResult energy;
};

/// Roots of H_D^d for V + beta*A over `betas`, each seeded by the previous
/// point's root (the first by `seed`).
std::vector<SlopePoint> energy_slope_scan(const PotentialSpec& v, const ObservableSpec& a,
                                          const HankelSpec& spec,
                                          const std::vector<Rational>& betas, const BigReal& seed,
                                          const SolveOptions& opts = {});

}  // namespace rpm
