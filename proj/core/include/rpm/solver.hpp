#pragma once

// Roots of H_D^d(E), continuation of roots across D, lower/upper bound pairs
// and exponential rate fits. Energies passed in and out are always in the
// units of the original potential; a nonzero V(0) is shifted away internally.

#include "rpm/hankel.hpp"
#include "rpm/numeric.hpp"
#include "rpm/potential.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rpm {

struct SolveOptions {
  int target_digits = 20;        // T: requested agreement digits
  unsigned digits10 = 0;         // working precision; 0 selects default_digits(D)
  unsigned cap = 0;              // escalation cap; 0 reads precision_cap()
  int max_iterations = 200;
  double window = 1.0;           // search radius around the anchor
  std::optional<double> start_window;  // radius before a sequence has started
  int grid_points = 200;         // window scans
};

struct RootResult {
  BigReal root;
  int certified_digits = 0;
  /// |H(root)| / scale with scale = max |H(root +- 0.1)|.
  BigReal residual;
  unsigned digits_used = 0;
  int iterations = 0;
  int multiplicity = 1;  // estimated from linear Newton convergence
};

/// Newton iteration on H_D^d with dual-number derivative, safeguarded by any
/// sign-change bracket met along the way, then certified by repeating the
/// final steps at P + 20 digits. Precision escalates while the certified
/// digits fall short of the target.
RootResult find_root_near(const PotentialSpec& v, const HankelSpec& spec, const BigReal& guess,
                          const SolveOptions& opts = {});

/// Root of H_D^d closest to `anchor` within `radius` (ties go to the lower
/// energy), or nothing when no root is found there.
std::optional<RootResult> closest_root(const PotentialSpec& v, const HankelSpec& spec,
                                       const BigReal& anchor, double radius,
                                       const SolveOptions& opts = {});

/// Sign changes of H_D^d on a uniform grid over [lo, hi], each refined to a root.
std::vector<RootResult> scan_roots(const PotentialSpec& v, const HankelSpec& spec,
                                   const BigReal& lo, const BigReal& hi,
                                   const SolveOptions& opts = {});

struct RootEntry {
  int D = 0;
  BigReal root;
  int certified_digits = 0;
  BigReal residual;
  unsigned digits_used = 0;
};

struct RateFit {
  double A = 0;
  double k = 0;
  double residual = 0;      // rms of ln(gap) about the fit
  double log10_slope = 0;   // -k / ln 10
};

struct RootSequence {
  int d = 0;
  int s = 0;
  std::string label;
  std::vector<RootEntry> entries;
  std::optional<BigReal> converged;
  std::optional<RateFit> rate;

  const RootEntry* at(int D) const;
};

/// Follows the root closest to the previous one for D = d_min..d_max. Until
/// the first root is accepted the anchor is `seed` and the search radius is
/// opts.start_window (late starts are allowed); afterwards a missing root
/// within opts.window is a ConvergenceError.
RootSequence track_sequence(const PotentialSpec& v, int s, int d, int d_min, int d_max,
                            const BigReal& seed, const SolveOptions& opts = {});

/// Scans [lo, hi] at D = d_min and tracks every root found there.
std::vector<RootSequence> track_window(const PotentialSpec& v, int s, int d, int d_min,
                                       int d_max, const BigReal& lo, const BigReal& hi,
                                       const SolveOptions& opts = {});

struct BoundsPair {
  int D = 0;
  BigReal lower;
  BigReal upper;
  BigReal gap;
  int lower_digits = 0;
  int upper_digits = 0;
};

/// d = 0 and d = 1 roots paired at equal D, for every D both sequences reach.
std::vector<BoundsPair> pair_bounds(const RootSequence& lower, const RootSequence& upper);

/// Tracks both sequences over D = d_min..d_max and pairs them.
std::vector<BoundsPair> bounds_table(const PotentialSpec& v, int s, int d_min, int d_max,
                                     const BigReal& seed_lower, const BigReal& seed_upper,
                                     const SolveOptions& opts = {});

/// The pair at D = `D`, with sequences started at `d_min`.
BoundsPair bounds_pair(const PotentialSpec& v, int s, int D, const BigReal& seed_lower,
                       const BigReal& seed_upper, const SolveOptions& opts = {}, int d_min = 2);

/// Least squares fit of ln(gap) = ln A - k D. Needs at least three positive gaps.
RateFit fit_rate(const std::vector<std::pair<int, BigReal>>& gaps);
RateFit fit_rate(const std::vector<std::pair<int, double>>& gaps);

/// |r_D - r_ref| for every entry before the last, with r_ref the last root.
std::vector<std::pair<int, BigReal>> distances_to_last(const RootSequence& seq);
std::vector<std::pair<int, BigReal>> gaps(const std::vector<BoundsPair>& pairs);

}  // namespace rpm
