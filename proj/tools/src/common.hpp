#pragma once

// Helpers shared by the command and preset implementations.

#include "rpm/potential.hpp"
#include "rpm/solver.hpp"
#include "rpm_cli/cli.hpp"

#include <optional>
#include <string>

namespace rpm::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Potential with Taylor coefficients up to V_order (order >= 4).
PotentialSpec potential_for(const std::string& text, int order);
/// Coefficient order a Hankel determinant of dimension D needs (d <= 1).
int order_for(int D);

SolveOptions options_for(const RunConfig& cfg);

/// Seed energy for the d-sequence: --seed (or --seed-upper for d = 1 when
/// given), then --seeds-from, then the oracle's --state.
BigReal seed_for(const RunConfig& cfg, const PotentialSpec& v, int d);

/// Lowest-D root for Hankel shift d in a JSON result written earlier.
std::optional<std::string> seed_from_file(const std::string& path, int d, int d_min);

/// Oracle energy of the k-th state of parity s.
double oracle_state(const PotentialSpec& v, int s, int k);

Json entry_json(const RootEntry& e, int d, int target_digits);
Json inputs_json(const RunConfig& cfg);
Json meta_json(unsigned precision);
unsigned max_precision(const RootSequence& seq);

/// Prints at exactly the certified digit count (at least one digit).
std::string certified(const BigReal& x, int digits);
std::string fixed(double x, int decimals = 6);

Report run_table(const RunConfig& cfg);
Report run_figure(const RunConfig& cfg);

}  // namespace rpm::cli
