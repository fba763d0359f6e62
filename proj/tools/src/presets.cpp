#include "common.hpp"

#include "rpm/hankel.hpp"
#include "rpm/observables.hpp"
#include "rpm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rpm::cli {

namespace {

PotentialSpec model(Model m, std::map<std::string, Rational> params, int order) {
  return series_coefficients(m, params, std::max(order, 4));
}

std::string double_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Longest rounding (up to `max_digits`) on which both bounds agree.
std::string common_digits(const BigReal& lower, const BigReal& upper, int max_digits) {
  for (int n = max_digits; n >= 1; --n) {
    const std::string a = to_decimal(lower, n);
    if (a == to_decimal(upper, n)) return a;
  }
  return "";
}

// mpt, lambda = 3: the sequences starting nearest -(lambda-1)^2 and -lambda^2.
Report table_spurious(const RunConfig& cfg) {
  const int d_max = 8;
  const PotentialSpec v = model(Model::mpt, {{"lambda", Rational(3)}}, order_for(d_max));
  SolveOptions o;
  o.target_digits = cfg.digits;
  const unsigned digits = 60;
  auto seqs = track_window(v, 0, 0, 2, d_max, to_big("-10", digits), to_big("0", digits), o);
  auto pick = [&](int target) -> const RootSequence& {
    const RootSequence* best = nullptr;
    BigReal best_dist;
    for (const auto& s : seqs) {
      const RootEntry* e = s.at(2);
      if (e == nullptr) continue;
      const BigReal dist = abs(e->root - BigReal(target));
      if (best == nullptr || dist < best_dist) {
        best = &s;
        best_dist = dist;
      }
    }
    if (best == nullptr) throw ConvergenceError("no root sequence starts at D = 2");
    return *best;
  };
  const RootSequence& mpt = pick(-4);
  const RootSequence& pt = pick(-9);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["model"] = "mpt:lambda=3";
  r.json["columns"] = {"-(lambda-1)^2 = -4", "-lambda^2 = -9"};
  r.json["results"] = Json::array();
  r.json["rows"] = Json::array();
  r.table.header = {"D", "E_mpt", "E_pt"};
  unsigned precision = 0;
  for (int D = 2; D <= d_max; ++D) {
    const RootEntry* a = mpt.at(D);
    const RootEntry* b = pt.at(D);
    if (a == nullptr || b == nullptr) throw ConvergenceError("table sequence lost at D = " + std::to_string(D));
    Json ja = entry_json(*a, 0, cfg.digits);
    ja["column"] = 0;
    Json jb = entry_json(*b, 0, cfg.digits);
    jb["column"] = 1;
    r.json["results"].push_back(ja);
    r.json["results"].push_back(jb);
    const std::string ta = to_decimal(a->root, cfg.digits);
    const std::string tb = to_decimal(b->root, cfg.digits);
    r.json["rows"].push_back({{"D", D}, {"E_mpt", ta}, {"E_pt", tb}});
    r.table.rows.push_back({std::to_string(D), ta, tb});
    precision = std::max({precision, a->digits_used, b->digits_used});
  }
  r.json["meta"] = meta_json(precision);
  return r;
}

struct DwellColumn {
  RootSequence lower;
  RootSequence upper;
};

DwellColumn dwell_bounds(const Rational& beta, int s, int d_max, int target) {
  const PotentialSpec v = model(Model::dwell, {{"beta", beta}}, order_for(d_max));
  const double seed = oracle_state(v, s, 0);
  SolveOptions o;
  o.target_digits = target;
  o.start_window = 0.05;
  const BigReal anchor = to_big(double_text(seed), 60);
  return {track_sequence(v, s, 0, 2, d_max, anchor, o), track_sequence(v, s, 1, 2, d_max, anchor, o)};
}

// Double well x^4 + beta x^2: E0 (even) and E1 (odd) from D <= 20 bounds.
Report table_dwell(const RunConfig& cfg) {
  const int d_max = 20;
  const int target = std::max(cfg.digits, 20);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = Json::array();
  r.json["rows"] = Json::array();
  r.table.header = {"beta", "E0", "E1", "E0_lower", "E0_upper", "E1_lower", "E1_upper"};
  unsigned precision = 0;
  for (int beta : {-1, -5, -10, -15}) {
    Json row;
    row["beta"] = beta;
    std::vector<std::string> cells{std::to_string(beta)};
    std::vector<std::string> bounds;
    for (int s : {0, 1}) {
      const DwellColumn c = dwell_bounds(Rational(beta), s, d_max, target);
      const RootEntry* lo = c.lower.at(d_max);
      const RootEntry* up = c.upper.at(d_max);
      if (lo == nullptr || up == nullptr) throw ConvergenceError("double-well bounds missing at D = 20");
      for (const auto* e : {lo, up}) {
        Json j = entry_json(*e, e == lo ? 0 : 1, target);
        j["beta"] = beta;
        j["parity"] = s;
        r.json["results"].push_back(j);
        precision = std::max(precision, e->digits_used);
      }
      const std::string key = s == 0 ? "E0" : "E1";
      const int shown = std::min({cfg.digits, lo->certified_digits, up->certified_digits});
      row[key] = common_digits(lo->root, up->root, shown);
      row[key + "_lower"] = to_decimal(lo->root, 22);
      row[key + "_upper"] = to_decimal(up->root, 22);
      row[key + "_first_D"] = std::min(c.lower.entries.front().D, c.upper.entries.front().D);
      cells.push_back(row[key]);
      bounds.push_back(row[key + "_lower"]);
      bounds.push_back(row[key + "_upper"]);
    }
    cells.insert(cells.end(), bounds.begin(), bounds.end());
    r.json["rows"].push_back(row);
    r.table.rows.push_back(cells);
  }
  r.json["meta"] = meta_json(precision);
  return r;
}

// x^2 + lambda x^4 ground state: D = 2 lower/upper roots against the oracle.
Report figure_anal() {
  Report r;
  r.table.header = {"lambda", "lower", "upper", "accurate"};
  const std::vector<Rational> lambdas = {Rational(1, 100), Rational(1, 50), Rational(1, 20),
                                         Rational(1, 10),  Rational(1, 5),  Rational(1, 2),
                                         Rational(1),      Rational(2),     Rational(5),
                                         Rational(10),     Rational(20),    Rational(50),
                                         Rational(100)};
  SolveOptions o;
  for (const auto& lambda : lambdas) {
    const PotentialSpec v = model(Model::x2x4, {{"lambda", lambda}}, 4);
    const double accurate = oracle_state(v, 0, 0);
    const BigReal anchor = to_big(double_text(accurate), 40);
    const double radius = std::max(1.0, 0.5 * std::abs(accurate));
    std::vector<std::string> row{fixed(static_cast<double>(lambda), 4)};
    for (int d : {0, 1}) {
      const auto root = closest_root(v, HankelSpec{2, d, 0}, anchor, radius, o);
      row.push_back(root ? certified(root->root, std::min(20, root->certified_digits)) : "");
    }
    row.push_back(double_text(accurate));
    r.table.rows.push_back(row);
  }
  return r;
}

// Quartic ground state: bound gap against D with the exponential fit.
Report figure_log_bounds() {
  const int d_max = 11;
  const PotentialSpec v = model(Model::quartic, {}, order_for(d_max));
  const BigReal seed = to_big(double_text(oracle_state(v, 0, 0)), 60);
  const auto pairs = bounds_table(v, 0, 2, d_max, seed, seed);
  const auto g = gaps(pairs);
  const RateFit fit = fit_rate(g);
  Report r;
  r.table.header = {"D", "lower", "upper", "log10_gap", "log10_fit"};
  for (const auto& p : pairs) {
    r.table.rows.push_back({std::to_string(p.D), certified(p.lower, std::min(p.lower_digits, 25)),
                            certified(p.upper, std::min(p.upper_digits, 25)),
                            fixed(log10_abs(p.gap)),
                            fixed(std::log10(fit.A) - fit.k * p.D / std::log(10.0))});
  }
  return r;
}

// Every d = 0 root near the quartic ground state, with its distance to the
// D = 11 root of the optimal sequence.
Report figure_sequences() {
  const int d_max = 11;
  const PotentialSpec v = model(Model::quartic, {}, order_for(d_max));
  const BigReal seed = to_big(double_text(oracle_state(v, 0, 0)), 60);
  const RootSequence best = track_sequence(v, 0, 0, 2, d_max, seed);
  const BigReal limit = best.at(d_max)->root;
  SolveOptions o;
  o.grid_points = 400;
  Report r;
  r.table.header = {"D", "root", "log10_distance", "optimal"};
  for (int D = 2; D <= d_max; ++D) {
    const auto roots = scan_roots(v, HankelSpec{D, 0, 0}, limit - BigReal(0.5),
                                  limit + BigReal(0.5), o);
    const RootEntry* opt = best.at(D);
    for (const auto& root : roots) {
      const BigReal dist = abs(root.root - limit);
      if (dist.is_zero()) continue;
      const bool optimal = opt != nullptr && abs(root.root - opt->root) < BigReal(1e-15) * limit;
      r.table.rows.push_back({std::to_string(D),
                              certified(root.root, std::min(root.certified_digits, 25)),
                              fixed(log10_abs(dist)), optimal ? "1" : "0"});
    }
  }
  return r;
}

// <x^2> of the quartic ground state from the lower and upper sequences.
Report figure_expectation() {
  const int d_max = 12;
  const PotentialSpec v = model(Model::quartic, {}, order_for(d_max));
  const BigReal seed = to_big(double_text(oracle_state(v, 0, 0)), 60);
  const ObservableSpec a = ObservableSpec::parse("x^2");
  Report r;
  r.table.header = {"D", "x2_lower", "x2_upper"};
  const RootSequence lower = track_sequence(v, 0, 0, 2, d_max, seed);
  const RootSequence upper = track_sequence(v, 0, 1, 2, d_max, seed);
  for (int D = 2; D <= d_max; ++D) {
    std::vector<std::string> row{std::to_string(D)};
    for (const auto* seq : {&lower, &upper}) {
      const RootEntry* e = seq->at(D);
      if (e == nullptr) {
        row.push_back("");
        continue;
      }
      const BigReal x2 = expectation(v, a, HankelSpec{D, seq->d, 0}, e->root, e->digits_used);
      row.push_back(to_decimal(x2, 20));
    }
    r.table.rows.push_back(row);
  }
  return r;
}

// Real roots of H_2^d(E, beta) for the double well, and the oracle ground state.
Report figure_dwell_roots(int d) {
  Report r;
  r.table.header = {"beta", "kind", "energy"};
  SolveOptions o;
  o.grid_points = 4000;
  for (int k = -30; k <= 10; ++k) {
    const Rational beta(k, 2);
    const PotentialSpec v = model(Model::dwell, {{"beta", beta}}, 4);
    const std::string b = fixed(static_cast<double>(beta), 1);
    for (const auto& root :
         scan_roots(v, HankelSpec{2, d, 0}, to_big("-60", 40), to_big("20", 40), o)) {
      r.table.rows.push_back({b, "root", to_decimal(root.root, std::min(12, root.certified_digits))});
    }
    r.table.rows.push_back({b, "accurate", double_text(oracle_state(v, 0, 0))});
  }
  return r;
}

// Double-well ground state bound gaps for D <= 20 with a fit per beta.
Report figure_dwell_log() {
  Report r;
  r.table.header = {"beta", "D", "log10_gap", "log10_fit"};
  for (int beta : {-1, -5, -10, -15}) {
    const DwellColumn c = dwell_bounds(Rational(beta), 0, 20, 20);
    const auto g = gaps(pair_bounds(c.lower, c.upper));
    const RateFit fit = fit_rate(g);
    for (const auto& [D, gap] : g) {
      r.table.rows.push_back({std::to_string(beta), std::to_string(D), fixed(log10_abs(gap)),
                              fixed(std::log10(fit.A) - fit.k * D / std::log(10.0))});
    }
  }
  return r;
}

}  // namespace

Report run_table(const RunConfig& cfg) {
  if (cfg.name == "spurious") return table_spurious(cfg);
  if (cfg.name == "dw-e0e1") return table_dwell(cfg);
  throw InvalidInput("unknown table '" + cfg.name + "' (spurious, dw-e0e1)");
}

Report run_figure(const RunConfig& cfg) {
  Report r;
  if (cfg.name == "anal") {
    r = figure_anal();
  } else if (cfg.name == "logUBLB_0") {
    r = figure_log_bounds();
  } else if (cfg.name == "sequences") {
    r = figure_sequences();
  } else if (cfg.name == "exval") {
    r = figure_expectation();
  } else if (cfg.name == "DWH20") {
    r = figure_dwell_roots(0);
  } else if (cfg.name == "DWH21") {
    r = figure_dwell_roots(1);
  } else if (cfg.name == "DWLOG") {
    r = figure_dwell_log();
  } else {
    throw InvalidInput("unknown figure '" + cfg.name +
                       "' (anal, logUBLB_0, sequences, exval, DWH20, DWH21, DWLOG)");
  }
  r.json["inputs"] = inputs_json(cfg);
  r.json["columns"] = r.table.header;
  r.json["rows"] = Json::array();
  for (const auto& row : r.table.rows) r.json["rows"].push_back(row);
  r.json["meta"] = meta_json(0);
  return r;
}

}  // namespace rpm::cli
