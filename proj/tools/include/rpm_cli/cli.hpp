#pragma once

#include "rpm_cli/output.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace rpm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitInvalid = 3;

struct RunConfig {
  std::string command;
  std::string potential;
  int parity = 0;
  bool both_parities = false;  // oracle: report both parities
  int d = 0;
  int D = 0;
  int dmin = 2;
  int dmax = 0;
  unsigned precision = 0;  // 0: automatic
  int digits = 20;
  std::string seed;
  std::string seed_upper;
  std::string scan;        // "lo,hi"
  std::string seeds_from;  // JSON written by an earlier run
  int state = 0;           // oracle seed: k-th state of the parity
  double window = 1.0;
  std::optional<double> start_window;
  int grid = 200;
  std::string observable = "x^2";
  std::string fd_step;     // rational beta step for the finite-difference check
  std::string energy;
  int M = -1;
  int N = -1;
  double xmax = 2.0;
  int points = 21;
  int kmax = 3;
  bool monic = false;
  std::string name;
  std::string format;
  std::string out;
};

/// Runs one command line. Output goes to `out` (or --out), diagnostics to
/// `err`. Returns 0, 2 (no convergence) or 3 (invalid input).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes an already validated configuration.
Report execute(const RunConfig& cfg);

}  // namespace rpm::cli
