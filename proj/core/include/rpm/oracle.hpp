#pragma once

// Independent double-precision eigenvalue solver: Numerov shooting with node
// counting and Richardson extrapolation. Shares no code with the Hankel path.

#include "rpm/potential.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rpm {

struct OracleOptions {
  double steps_per_unit = 400;  // coarse grid; the fine grid doubles it
  double tolerance = 1e-8;      // relative two-resolution agreement
  double decay = 30;            // WKB exponent past the outer turning point
};

struct OracleResult {
  std::vector<double> energies;  // increasing
  std::vector<int> states;       // state index n (nodes on the full line)
  std::string method;
  double box = 0;                // half-width L of [-L, L]
  double step = 0;               // fine step
  double max_drift = 0;          // largest relative coarse/fine difference
};

/// V(x) as a real function: polynomial models from their exact coefficients,
/// mpt from -lambda(lambda-1)/cosh^2 x. Truncated series are refused.
std::function<double(double)> real_potential(const PotentialSpec& v);

/// Lowest k_max + 1 states, of one parity when `parity` is set, otherwise of
/// both. Half-line shooting with psi'(0) = 0 (s = 0) or psi(0) = 0 (s = 1).
/// Throws ConvergenceError when the two resolutions disagree.
OracleResult oracle_eigenvalues(const PotentialSpec& v, std::optional<int> parity, int k_max,
                                const OracleOptions& opts = {});

/// Full-line shooting on [-L, L]; lowest k_max + 1 states regardless of parity.
OracleResult oracle_full_line(const PotentialSpec& v, int k_max, const OracleOptions& opts = {});

}  // namespace rpm
