#include "rpm/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace rpm {

std::function<double(double)> real_potential(const PotentialSpec& v) {
  if (v.name() == "mpt") {
    const double lambda = static_cast<double>(v.params().at("lambda"));
    const double strength = lambda * (lambda - 1);
    // The constant term may have been shifted; keep V(0) = v0.
    const double v0 = static_cast<double>(v.v0());
    return [strength, v0](double x) {
      const double c = std::cosh(x);
      return v0 + strength * (1 - 1 / (c * c));
    };
  }
  if (!v.exact_tail()) {
    throw InvalidInput("oracle needs a closed form for potential '" + v.name() + "'");
  }
  std::vector<double> c{static_cast<double>(v.v0())};
  for (const auto& q : v.coeffs()) c.push_back(static_cast<double>(q));
  return [c](double x) {
    const double z = x * x;
    double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
}

namespace {

using Potential = std::function<double(double)>;

// Sign changes of the Numerov solution on (x0, x0 + n h].
int count_nodes(const Potential& V, double E, double x0, double h, long n, double psi0,
                double psi1) {
  const double h12 = h * h / 12;
  double q_prev = V(x0) - E;
  double q = V(x0 + h) - E;
  double p_prev = psi0;
  double p = psi1;
  int nodes = 0;
  if (p_prev != 0 && (p_prev < 0) != (p < 0)) ++nodes;
  for (long i = 1; i < n; ++i) {
    const double q_next = V(x0 + static_cast<double>(i + 1) * h) - E;
    const double next =
        (2 * (1 + 5 * h12 * q) * p - (1 - h12 * q_prev) * p_prev) / (1 - h12 * q_next);
    if (next != 0 && p != 0 && (next < 0) != (p < 0)) ++nodes;
    p_prev = p;
    p = next;
    q_prev = q;
    q = q_next;
    if (std::abs(p) > 1e150) {
      p *= 1e-150;
      p_prev *= 1e-150;
    }
  }
  return nodes;
}

struct Grid {
  double L;
  double h;
};

int half_line_nodes(const Potential& V, double E, int s, const Grid& g) {
  const long n = std::lround(g.L / g.h);
  const double h12 = g.h * g.h / 12;
  if (s == 0) {
    // Even solution: psi(-h) = psi(h) closes the first Numerov step.
    const double q0 = V(0) - E;
    const double q1 = V(g.h) - E;
    return count_nodes(V, E, 0, g.h, n, 1, (1 + 5 * h12 * q0) / (1 - h12 * q1));
  }
  return count_nodes(V, E, 0, g.h, n, 0, g.h);
}

int full_line_nodes(const Potential& V, double E, const Grid& g) {
  const long n = std::lround(2 * g.L / g.h);
  return count_nodes(V, E, -g.L, g.h, n, 0, 1e-300);
}

template <class Nodes>
double nth_eigenvalue(Nodes nodes, int k, double e_floor) {
  double lo = e_floor;
  double width = 1;
  double hi = lo + width;
  while (nodes(hi) < k + 1) {
    lo = hi;
    width *= 2;
    hi = lo + width;
    if (width > 1e12) throw ConvergenceError("oracle could not bracket state " + std::to_string(k));
  }
  while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (nodes(mid) >= k + 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double min_potential(const Potential& V, double L) {
  double m = V(0);
  for (int i = 1; i <= 4000; ++i) m = std::min(m, V(L * i / 4000.0));
  return m;
}

// Outer turning point plus the distance over which the WKB factor decays by e^-decay.
double box_for(const Potential& V, double E, double decay) {
  double x = 0;
  const double dx = 1e-3;
  double last_allowed = 0;
  while (x < 200) {
    if (V(x) <= E) last_allowed = x;
    if (x > last_allowed + 5 && V(x) - E > 4 * std::max(1.0, std::abs(E))) break;
    x += 0.05;
  }
  double acc = 0;
  x = last_allowed;
  while (acc < decay && x < 400) {
    acc += std::sqrt(std::max(0.0, V(x) - E)) * dx;
    x += dx;
  }
  if (x >= 400) throw ConvergenceError("oracle box exceeds 400: state too weakly bound");
  return x;
}

using Solver = std::function<double(const Grid&, int)>;

double solve_state(const Potential& V, const Solver& solve, int k, const OracleOptions& opts,
                   OracleResult& out) {
  double L = 8;
  double E = 0;
  for (int pass = 0; pass < 6; ++pass) {
    E = solve(Grid{L, 1 / opts.steps_per_unit}, k);
    const double L_new = box_for(V, E, opts.decay);
    if (L_new <= L) break;
    L = L_new;
  }
  const double coarse = solve(Grid{L, 1 / opts.steps_per_unit}, k);
  const double fine = solve(Grid{L, 0.5 / opts.steps_per_unit}, k);
  const double drift = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
  if (drift > opts.tolerance) {
    throw ConvergenceError("oracle grid too coarse: state " + std::to_string(k) +
                           " moved by " + std::to_string(drift) + " between resolutions");
  }
  out.box = std::max(out.box, L);
  out.step = 0.5 / opts.steps_per_unit;
  out.max_drift = std::max(out.max_drift, drift);
  return fine + (fine - coarse) / 15;
}

}  // namespace

OracleResult oracle_eigenvalues(const PotentialSpec& v, std::optional<int> parity, int k_max,
                                const OracleOptions& opts) {
  if (k_max < 0) throw InvalidInput("k_max must be >= 0");
  if (parity && *parity != 0 && *parity != 1) throw InvalidInput("parity must be 0 or 1");
  const Potential V = real_potential(v);
  OracleResult out;
  out.method = "numerov half-line shooting";
  auto half = [&](int s) {
    return [&, s](const Grid& g, int k) {
      const double floor = min_potential(V, g.L) - 1;
      return nth_eigenvalue([&](double E) { return half_line_nodes(V, E, s, g); }, k, floor);
    };
  };
  for (int i = 0; i <= k_max; ++i) {
    const int n = parity ? 2 * i + *parity : i;
    const int s = n % 2;
    const double E = solve_state(V, half(s), n / 2, opts, out);
    out.energies.push_back(E);
    out.states.push_back(n);
  }
  for (std::size_t i = 1; i < out.energies.size(); ++i) {
    if (!(out.energies[i] > out.energies[i - 1])) {
      throw ConvergenceError("oracle eigenvalues not strictly increasing");
    }
  }
  return out;
}

OracleResult oracle_full_line(const PotentialSpec& v, int k_max, const OracleOptions& opts) {
  if (k_max < 0) throw InvalidInput("k_max must be >= 0");
  const Potential V = real_potential(v);
  OracleResult out;
  out.method = "numerov full-line shooting";
  const Solver full = [&](const Grid& g, int n) {
    const double floor = min_potential(V, g.L) - 1;
    return nth_eigenvalue([&](double E) { return full_line_nodes(V, E, g); }, n, floor);
  };
  for (int n = 0; n <= k_max; ++n) {
    out.energies.push_back(solve_state(V, full, n, opts, out));
    out.states.push_back(n);
  }
  return out;
}

}  // namespace rpm
