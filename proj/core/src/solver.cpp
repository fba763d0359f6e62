#include "rpm/solver.hpp"

#include <algorithm>
#include <cmath>

namespace rpm {

namespace {

struct Problem {
  PotentialSpec shifted;
  Rational shift;
  HankelSpec spec;
};

Problem make_problem(const PotentialSpec& v, const HankelSpec& spec) {
  spec.validate();
  auto [shifted, shift] = shift_constant(v);
  return {std::move(shifted), std::move(shift), spec};
}

unsigned working_digits(const SolveOptions& o, int D) {
  return o.digits10 != 0 ? std::max(o.digits10, kMinDigits) : default_digits(D);
}

unsigned cap_of(const SolveOptions& o) { return o.cap != 0 ? o.cap : precision_cap(); }

BigReal pow10(int k) { return pow(BigReal(10), k); }

BigReal unit_scale(const BigReal& e) {
  BigReal a = abs(e);
  return a > 1 ? a : BigReal(1);
}

BigReal from_double(double x, unsigned digits10) {
  PrecisionScope scope(digits10);
  return BigReal(x);
}

struct Bracket {
  BigReal lo;
  BigReal hi;
  int sign_lo = 0;
};

struct NewtonOutcome {
  BigReal root;
  int iterations = 0;
  int multiplicity = 1;
};

std::string where(const HankelSpec& spec) {
  return "H_" + std::to_string(spec.D) + "^" + std::to_string(spec.d) + " (s=" +
         std::to_string(spec.s) + ")";
}

// Safeguarded Newton. Stops when |dE| <= 10^-stop_digits max(1,|E|), at an
// exact zero, or when the iterates stall with H at the noise floor.
NewtonOutcome newton(const Problem& pb, const BigReal& start, unsigned P, int stop_digits,
                     const SolveOptions& opts, std::optional<Bracket> bracket) {
  PrecisionScope scope(P);
  BigReal e = start.rounded(P);
  const BigReal window = from_double(opts.window, P);
  std::optional<std::pair<BigReal, int>> last_point;
  BigReal raw_prev;
  BigReal step_prev;
  BigReal delta_prev;
  bool have_prev = false;
  int m = 1;
  int linear_hits = 0;
  double last_ratio = 0;
  int stall = 0;
  int flat = 0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const DualReal h = det_dual(pb.shifted, e, pb.spec, std::nullopt, P);
    if (h.value == 0) return {e, it, m};
    const int sg = h.value.sign();
    if (bracket) {
      if (e > bracket->lo && e < bracket->hi) {
        (sg == bracket->sign_lo ? bracket->lo : bracket->hi) = e;
      }
    } else if (last_point && last_point->second != sg) {
      const bool prev_low = last_point->first < e;
      bracket = Bracket{prev_low ? last_point->first : e, prev_low ? e : last_point->first,
                        prev_low ? last_point->second : sg};
    }
    last_point.emplace(e, sg);

    BigReal next;
    if (h.dE == 0) {
      if (++flat > 3) throw ConvergenceError("zero derivative of " + where(pb.spec));
      next = bracket ? (bracket->lo + bracket->hi) / 2
                     : e + pow10(-stop_digits / 2) * unit_scale(e);
      have_prev = false;
    } else {
      const BigReal raw = h.value / h.dE;
      if (have_prev && raw_prev != 0) {
        const double ratio = (raw / raw_prev).to_double();
        if (m == 1 && ratio > 0.3 && ratio < 0.97) {
          linear_hits = std::abs(ratio - last_ratio) < 0.05 ? linear_hits + 1 : 1;
          last_ratio = ratio;
          if (linear_hits >= 2) {
            m = static_cast<int>(std::clamp(std::lround(1.0 / (1.0 - ratio)), 2L,
                                            static_cast<long>(2 * pb.spec.D + pb.spec.d)));
          }
        } else if (m > 1 && ratio < -0.3) {
          m = 1;
          linear_hits = 0;
        } else if (m == 1) {
          linear_hits = 0;
        }
      }
      BigReal step = raw * m;
      if (have_prev && abs(step) > 2 * abs(step_prev)) step = step * (2 * abs(step_prev) / abs(step));
      if (abs(step) > window) step = step * (window / abs(step));
      next = e - step;
      raw_prev = raw;
      step_prev = step;
      have_prev = true;
    }
    if (bracket && (next <= bracket->lo || next >= bracket->hi)) {
      next = (bracket->lo + bracket->hi) / 2;
    }
    const BigReal delta = abs(next - e);
    e = std::move(next);
    if (delta <= pow10(-stop_digits) * unit_scale(e)) return {e, it, m};
    if (bracket && abs(bracket->hi - bracket->lo) <= pow10(-stop_digits) * unit_scale(e)) {
      return {e, it, m};
    }
    stall = (it > 1 && delta >= delta_prev / 2) ? stall + 1 : 0;
    delta_prev = delta;
    if (stall >= 8) {
      const GuardedDet g = det_guarded(pb.shifted, e, pb.spec, P, 0);
      if (g.certified_digits == 0) return {e, it, m};
    }
  }
  throw ConvergenceError(where(pb.spec) + ": Newton did not converge in " +
                         std::to_string(opts.max_iterations) + " iterations");
}

int stop_digits_for(const SolveOptions& opts, unsigned P) {
  return std::min(opts.target_digits + 10, static_cast<int>(P) - 10);
}

int agreement(const BigReal& a, const BigReal& b, unsigned P) {
  if (a == b) return static_cast<int>(P);
  const BigReal rel = abs(a - b) / unit_scale(b);
  const double digits = -log10_abs(rel);
  return std::clamp(static_cast<int>(std::floor(digits)), 0, static_cast<int>(P));
}

BigReal relative_residual(const Problem& pb, const BigReal& e, unsigned P) {
  PrecisionScope scope(P);
  const BigReal offset = BigReal(1) / 10;
  const BigReal h = abs(det_numeric(pb.shifted, e, pb.spec, P));
  const BigReal scale = std::max(abs(det_numeric(pb.shifted, e - offset, pb.spec, P)),
                                 abs(det_numeric(pb.shifted, e + offset, pb.spec, P)));
  return scale == 0 ? h : h / scale;
}

// Converges from `start` (shifted units), certifies against P + 20 and
// escalates until the target is met or the cap is reached.
RootResult solve_from(const Problem& pb, const BigReal& start, const SolveOptions& opts,
                      std::optional<Bracket> bracket) {
  const unsigned cap = cap_of(opts);
  unsigned P = std::min(working_digits(opts, pb.spec.D), std::max(cap, kMinDigits));
  BigReal e = start;
  int iterations = 0;
  while (true) {
    const NewtonOutcome lo = newton(pb, e, P, stop_digits_for(opts, P), opts, bracket);
    const unsigned P2 = P + 20;
    const NewtonOutcome hi = newton(pb, lo.root, P2, stop_digits_for(opts, P2), opts, bracket);
    iterations += lo.iterations + hi.iterations;
    const int certified = agreement(lo.root, hi.root, P);
    if (certified >= opts.target_digits || P >= cap) {
      RootResult out;
      out.residual = relative_residual(pb, lo.root, P);
      PrecisionScope scope(P);
      out.root = lo.root + to_big(pb.shift, P);
      out.certified_digits = certified;
      out.digits_used = P;
      out.iterations = iterations;
      out.multiplicity = std::max(lo.multiplicity, hi.multiplicity);
      return out;
    }
    e = hi.root;
    P = escalate_digits(P, cap);
  }
}

int sign_at(const Problem& pb, const BigReal& e, unsigned P) {
  return det_numeric(pb.shifted, e, pb.spec, P).sign();
}

struct Candidate {
  BigReal root;  // shifted units
  std::optional<Bracket> bracket;
};

}  // namespace

RootResult find_root_near(const PotentialSpec& v, const HankelSpec& spec, const BigReal& guess,
                          const SolveOptions& opts) {
  const Problem pb = make_problem(v, spec);
  const unsigned P = working_digits(opts, spec.D);
  PrecisionScope scope(P);
  const BigReal start = guess.rounded(P) - to_big(pb.shift, P);
  try {
    return solve_from(pb, start, opts, std::nullopt);
  } catch (const ConvergenceError&) {
    // Fall back to the nearest sign change inside the window, if any.
    auto near = closest_root(v, spec, guess, opts.window, opts);
    if (!near) throw;
    return *near;
  }
}

std::optional<RootResult> closest_root(const PotentialSpec& v, const HankelSpec& spec,
                                       const BigReal& anchor, double radius,
                                       const SolveOptions& opts) {
  const Problem pb = make_problem(v, spec);
  const unsigned P = working_digits(opts, spec.D);
  PrecisionScope scope(P);
  const BigReal a = anchor.rounded(P) - to_big(pb.shift, P);
  const BigReal R = from_double(radius, P);
  const int stop = stop_digits_for(opts, P);

  std::vector<Candidate> found;
  BigReal reach = R;
  try {
    NewtonOutcome n = newton(pb, a, P, stop, opts, std::nullopt);
    if (abs(n.root - a) <= R) {
      reach = abs(n.root - a);
      found.push_back({std::move(n.root), std::nullopt});
    }
  } catch (const ConvergenceError&) {
  }

  const int s0 = sign_at(pb, a, P);
  if (s0 == 0) return solve_from(pb, a, opts, std::nullopt);
  const BigReal r0 = pow10(-(opts.target_digits + 2)) * unit_scale(a);
  for (int side : {1, -1}) {
    BigReal prev = a;
    int prev_sign = s0;
    for (BigReal r = r0;; r *= 2) {
      if (r > reach) r = reach;
      const BigReal pt = a + r * side;
      const int sg = sign_at(pb, pt, P);
      if (sg != prev_sign) {
        Bracket b = side > 0 ? Bracket{prev, pt, prev_sign} : Bracket{pt, prev, sg};
        if (sg == 0) {
          found.push_back({pt, std::nullopt});
        } else {
          try {
            NewtonOutcome n = newton(pb, (b.lo + b.hi) / 2, P, stop, opts, b);
            found.push_back({std::move(n.root), b});
          } catch (const ConvergenceError&) {
          }
        }
        if (!found.empty()) reach = std::min(reach, abs(found.back().root - a));
        break;
      }
      prev = pt;
      prev_sign = sg;
      if (r >= reach) break;
    }
  }
  if (found.empty()) return std::nullopt;
  const auto best = std::min_element(found.begin(), found.end(), [&](const auto& x, const auto& y) {
    const BigReal dx = abs(x.root - a);
    const BigReal dy = abs(y.root - a);
    if (dx != dy) return dx < dy;
    return x.root < y.root;
  });
  return solve_from(pb, best->root, opts, best->bracket);
}

std::vector<RootResult> scan_roots(const PotentialSpec& v, const HankelSpec& spec,
                                   const BigReal& lo, const BigReal& hi,
                                   const SolveOptions& opts) {
  if (!(lo < hi)) throw InvalidInput("scan window must satisfy lo < hi");
  if (opts.grid_points < 2) throw InvalidInput("scan needs at least 2 grid points");
  const Problem pb = make_problem(v, spec);
  const unsigned P = working_digits(opts, spec.D);
  PrecisionScope scope(P);
  const BigReal shift = to_big(pb.shift, P);
  const BigReal a = lo.rounded(P) - shift;
  const BigReal step = (hi.rounded(P) - lo.rounded(P)) / (opts.grid_points - 1);
  std::vector<RootResult> out;
  BigReal prev = a;
  int prev_sign = sign_at(pb, a, P);
  for (int i = 1; i < opts.grid_points; ++i) {
    const BigReal pt = a + step * i;
    const int sg = sign_at(pb, pt, P);
    if (prev_sign == 0) {
      out.push_back(solve_from(pb, prev, opts, std::nullopt));
    } else if (sg != 0 && sg != prev_sign) {
      Bracket b{prev, pt, prev_sign};
      try {
        out.push_back(solve_from(pb, (prev + pt) / 2, opts, b));
      } catch (const ConvergenceError&) {
      }
    }
    prev = pt;
    prev_sign = sg;
  }
  if (prev_sign == 0) out.push_back(solve_from(pb, prev, opts, std::nullopt));
  return out;
}

const RootEntry* RootSequence::at(int D) const {
  for (const auto& e : entries) {
    if (e.D == D) return &e;
  }
  return nullptr;
}

namespace {

void finish_sequence(RootSequence& seq, int target_digits) {
  if (seq.entries.size() >= 2) {
    const BigReal& last = seq.entries.back().root;
    const BigReal& before = seq.entries[seq.entries.size() - 2].root;
    PrecisionScope scope(seq.entries.back().digits_used);
    if (abs(last - before) <= pow10(-target_digits) * unit_scale(last)) seq.converged = last;
  }
  std::vector<std::pair<int, BigReal>> pts;
  for (auto& p : distances_to_last(seq)) {
    if (p.second > 0) pts.push_back(std::move(p));
  }
  if (pts.size() >= 3) seq.rate = fit_rate(pts);
}

}  // namespace

RootSequence track_sequence(const PotentialSpec& v, int s, int d, int d_min, int d_max,
                            const BigReal& seed, const SolveOptions& opts) {
  if (d_min > d_max) throw InvalidInput("D range must be ascending");
  HankelSpec{std::max(d_min, 2), d, s}.validate();
  RootSequence seq;
  seq.d = d;
  seq.s = s;
  BigReal anchor = seed;
  for (int D = d_min; D <= d_max; ++D) {
    const HankelSpec spec{D, d, s};
    const bool started = !seq.entries.empty();
    const double radius = started ? opts.window : opts.start_window.value_or(opts.window);
    auto r = closest_root(v, spec, anchor, radius, opts);
    if (!r) {
      if (!started) continue;
      throw ConvergenceError("lost continuation at " + where(spec) + ": no root within " +
                             std::to_string(radius) + " of " + to_decimal(anchor, 25));
    }
    anchor = r->root;
    seq.entries.push_back({D, r->root, r->certified_digits, r->residual, r->digits_used});
  }
  finish_sequence(seq, opts.target_digits);
  return seq;
}

std::vector<RootSequence> track_window(const PotentialSpec& v, int s, int d, int d_min,
                                       int d_max, const BigReal& lo, const BigReal& hi,
                                       const SolveOptions& opts) {
  const auto roots = scan_roots(v, HankelSpec{d_min, d, s}, lo, hi, opts);
  std::vector<RootSequence> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    RootSequence seq = track_sequence(v, s, d, d_min, d_max, roots[i].root, opts);
    seq.label = "root " + std::to_string(i);
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<BoundsPair> pair_bounds(const RootSequence& lower, const RootSequence& upper) {
  std::vector<BoundsPair> out;
  for (const auto& lo : lower.entries) {
    const RootEntry* up = upper.at(lo.D);
    if (up == nullptr) continue;
    PrecisionScope scope(std::max(lo.digits_used, up->digits_used));
    out.push_back({lo.D, lo.root, up->root, up->root - lo.root, lo.certified_digits,
                   up->certified_digits});
  }
  return out;
}

std::vector<BoundsPair> bounds_table(const PotentialSpec& v, int s, int d_min, int d_max,
                                     const BigReal& seed_lower, const BigReal& seed_upper,
                                     const SolveOptions& opts) {
  const RootSequence lower = track_sequence(v, s, 0, d_min, d_max, seed_lower, opts);
  const RootSequence upper = track_sequence(v, s, 1, d_min, d_max, seed_upper, opts);
  return pair_bounds(lower, upper);
}

BoundsPair bounds_pair(const PotentialSpec& v, int s, int D, const BigReal& seed_lower,
                       const BigReal& seed_upper, const SolveOptions& opts, int d_min) {
  const auto table = bounds_table(v, s, std::min(d_min, D), D, seed_lower, seed_upper, opts);
  if (table.empty() || table.back().D != D) {
    throw ConvergenceError("bounds at D=" + std::to_string(D) + " not reached by both sequences");
  }
  return table.back();
}

namespace {

RateFit fit_logs(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3) throw InvalidInput("rate fit needs at least 3 points");
  const double n = static_cast<double>(pts.size());
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x / n;
    my += y / n;
  }
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw InvalidInput("rate fit needs at least two distinct D");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0;
  for (const auto& [x, y] : pts) ss += std::pow(y - intercept - slope * x, 2);
  RateFit out;
  out.A = std::exp(intercept);
  out.k = -slope;
  out.residual = std::sqrt(ss / n);
  out.log10_slope = slope / std::log(10.0);
  return out;
}

}  // namespace

RateFit fit_rate(const std::vector<std::pair<int, double>>& gaps) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [D, g] : gaps) {
    if (!(g > 0) || !std::isfinite(g)) throw InvalidInput("rate fit needs positive finite gaps");
    pts.emplace_back(D, std::log(g));
  }
  return fit_logs(pts);
}

RateFit fit_rate(const std::vector<std::pair<int, BigReal>>& gaps) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [D, g] : gaps) {
    if (!(g > 0)) throw InvalidInput("rate fit needs positive gaps");
    pts.emplace_back(D, log10_abs(g) * std::log(10.0));
  }
  return fit_logs(pts);
}

std::vector<std::pair<int, BigReal>> distances_to_last(const RootSequence& seq) {
  std::vector<std::pair<int, BigReal>> out;
  if (seq.entries.size() < 2) return out;
  const RootEntry& last = seq.entries.back();
  PrecisionScope scope(last.digits_used);
  for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
    out.emplace_back(seq.entries[i].D, abs(seq.entries[i].root - last.root));
  }
  return out;
}

std::vector<std::pair<int, BigReal>> gaps(const std::vector<BoundsPair>& pairs) {
  std::vector<std::pair<int, BigReal>> out;
  for (const auto& p : pairs) out.emplace_back(p.D, p.gap);
  return out;
}

}  // namespace rpm
