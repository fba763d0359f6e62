#include "common.hpp"

#include "rpm/hankel.hpp"
#include "rpm/observables.hpp"
#include "rpm/oracle.hpp"
#include "rpm/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace rpm::cli {

PotentialSpec potential_for(const std::string& text, int order) {
  return build_potential(parse_potential(text), std::max(order, 4));
}

int order_for(int D) { return 2 * D + 2; }

SolveOptions options_for(const RunConfig& cfg) {
  SolveOptions o;
  o.target_digits = cfg.digits;
  o.digits10 = cfg.precision;
  o.window = cfg.window;
  o.start_window = cfg.start_window;
  o.grid_points = cfg.grid;
  return o;
}

std::optional<std::string> seed_from_file(const std::string& path, int d, int d_min) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read seeds file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("seeds file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_array()) {
    throw InvalidInput("seeds file '" + path + "' has no results array");
  }
  std::optional<std::string> best;
  int best_D = 0;
  for (const auto& r : doc["results"]) {
    if (!r.contains("D") || !r.contains("d") || !r.contains("root")) continue;
    const int D = r["D"].get<int>();
    if (r["d"].get<int>() != d || D < d_min) continue;
    if (!best || D < best_D) {
      best = r["root"].get<std::string>();
      best_D = D;
    }
  }
  return best;
}

double oracle_state(const PotentialSpec& v, int s, int k) {
  return oracle_eigenvalues(v, s, k).energies.at(static_cast<std::size_t>(k));
}

BigReal seed_for(const RunConfig& cfg, const PotentialSpec& v, int d) {
  const unsigned digits = std::max(60u, cfg.precision);
  if (d == 1 && !cfg.seed_upper.empty()) return to_big(cfg.seed_upper, digits);
  if (!cfg.seed.empty()) return to_big(cfg.seed, digits);
  if (!cfg.seeds_from.empty()) {
    if (auto s = seed_from_file(cfg.seeds_from, d, cfg.dmin)) return to_big(*s, digits);
    if (auto s = seed_from_file(cfg.seeds_from, 0, cfg.dmin)) return to_big(*s, digits);
    throw InvalidInput("no usable root in '" + cfg.seeds_from + "'");
  }
  PrecisionScope scope(digits);
  return BigReal(oracle_state(v, cfg.parity, cfg.state));
}

std::string certified(const BigReal& x, int digits) { return to_decimal(x, std::max(1, digits)); }

std::string fixed(double x, int decimals) {
  if (!std::isfinite(x)) return x < 0 ? "-inf" : (x > 0 ? "inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

Json entry_json(const RootEntry& e, int d, int target_digits) {
  Json j;
  j["D"] = e.D;
  j["d"] = d;
  j["root"] = certified(e.root, e.certified_digits);
  j["rounded"] = certified(e.root, std::min(target_digits, e.certified_digits));
  j["certified_digits"] = e.certified_digits;
  j["residual"] = to_scientific(e.residual, 3);
  j["precision"] = e.digits_used;
  return j;
}

Json inputs_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  if (!cfg.potential.empty()) j["potential"] = cfg.potential;
  if (!cfg.name.empty()) j["name"] = cfg.name;
  if (cfg.command == "table" || cfg.command == "figure-data") return j;
  if (cfg.command == "oracle") {
    if (cfg.both_parities) {
      j["parity"] = "both";
    } else {
      j["parity"] = cfg.parity;
    }
    j["kmax"] = cfg.kmax;
    return j;
  }
  j["parity"] = cfg.parity;
  if (cfg.command == "hankel-poly") {
    j["D"] = cfg.D;
    j["d"] = cfg.d;
    j["monic"] = cfg.monic;
    return j;
  }
  j["d"] = cfg.d;
  if (cfg.D != 0) j["D"] = cfg.D;
  j["dmin"] = cfg.dmin;
  if (cfg.dmax != 0) j["dmax"] = cfg.dmax;
  j["digits"] = cfg.digits;
  j["precision"] = cfg.precision;
  if (!cfg.seed.empty()) j["seed"] = cfg.seed;
  if (!cfg.seed_upper.empty()) j["seed-upper"] = cfg.seed_upper;
  if (!cfg.seeds_from.empty()) j["seeds-from"] = cfg.seeds_from;
  if (cfg.seed.empty() && cfg.seeds_from.empty()) j["state"] = cfg.state;
  if (!cfg.scan.empty()) j["scan"] = cfg.scan;
  j["window"] = cfg.window;
  if (cfg.start_window) j["start-window"] = *cfg.start_window;
  if (cfg.command == "expect") {
    j["observable"] = cfg.observable;
    if (!cfg.fd_step.empty()) j["fd-step"] = cfg.fd_step;
  }
  if (cfg.command == "wavefunction") {
    if (!cfg.energy.empty()) j["energy"] = cfg.energy;
    j["M"] = cfg.M;
    j["N"] = cfg.N;
    j["xmax"] = cfg.xmax;
    j["points"] = cfg.points;
  }
  return j;
}

Json meta_json(unsigned precision) {
  Json j;
  j["version"] = kVersion;
  j["precision"] = precision;
  return j;
}

unsigned max_precision(const RootSequence& seq) {
  unsigned p = 0;
  for (const auto& e : seq.entries) p = std::max(p, e.digits_used);
  return p;
}

namespace {

const Table kRootHeader{{"label", "D", "d", "root", "certified_digits", "residual"}, {}};

void add_rows(Table& t, const RootSequence& seq) {
  for (const auto& e : seq.entries) {
    t.rows.push_back({seq.label, std::to_string(e.D), std::to_string(seq.d),
                      certified(e.root, e.certified_digits), std::to_string(e.certified_digits),
                      to_scientific(e.residual, 3)});
  }
}

Json sequence_json(const RootSequence& seq, int target) {
  Json j;
  j["label"] = seq.label;
  j["d"] = seq.d;
  j["first_D"] = seq.entries.empty() ? 0 : seq.entries.front().D;
  if (!seq.entries.empty()) {
    const auto& last = seq.entries.back();
    j["last"] = certified(last.root, std::min(target, last.certified_digits));
  }
  return j;
}

void require_range(const RunConfig& cfg) {
  if (cfg.dmax == 0) throw InvalidInput("--dmax is required");
}

RootSequence tracked(const RunConfig& cfg, const PotentialSpec& v, int d, int d_max) {
  RootSequence seq = track_sequence(v, cfg.parity, d, cfg.dmin, d_max, seed_for(cfg, v, d),
                                    options_for(cfg));
  if (seq.entries.empty()) {
    throw ConvergenceError("no root of H_D^" + std::to_string(d) + " near the seed for D <= " +
                           std::to_string(d_max));
  }
  if (seq.label.empty()) seq.label = "root 0";
  return seq;
}

Report solve(const RunConfig& cfg) {
  require_range(cfg);
  const PotentialSpec v = potential_for(cfg.potential, order_for(cfg.dmax));
  const RootSequence seq = tracked(cfg, v, cfg.d, cfg.dmax);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = Json::array();
  for (const auto& e : seq.entries) r.json["results"].push_back(entry_json(e, cfg.d, cfg.digits));
  r.json["meta"] = meta_json(max_precision(seq));
  r.table = kRootHeader;
  add_rows(r.table, seq);
  return r;
}

Report sequence(const RunConfig& cfg) {
  require_range(cfg);
  const PotentialSpec v = potential_for(cfg.potential, order_for(cfg.dmax));
  std::vector<RootSequence> seqs;
  if (!cfg.scan.empty()) {
    const auto comma = cfg.scan.find(',');
    if (comma == std::string::npos) throw InvalidInput("--scan must be 'lo,hi'");
    const unsigned digits = std::max(60u, cfg.precision);
    const BigReal lo = to_big(cfg.scan.substr(0, comma), digits);
    const BigReal hi = to_big(cfg.scan.substr(comma + 1), digits);
    if (!(lo < hi)) throw InvalidInput("--scan needs lo < hi");
    seqs = track_window(v, cfg.parity, cfg.d, cfg.dmin, cfg.dmax, lo, hi, options_for(cfg));
  } else {
    seqs.push_back(tracked(cfg, v, cfg.d, cfg.dmax));
  }
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["sequences"] = Json::array();
  r.json["results"] = Json::array();
  unsigned precision = 0;
  r.table = kRootHeader;
  for (const auto& seq : seqs) {
    r.json["sequences"].push_back(sequence_json(seq, cfg.digits));
    for (const auto& e : seq.entries) {
      Json j = entry_json(e, cfg.d, cfg.digits);
      j["label"] = seq.label;
      r.json["results"].push_back(j);
    }
    precision = std::max(precision, max_precision(seq));
    add_rows(r.table, seq);
  }
  r.json["meta"] = meta_json(precision);
  return r;
}

struct BoundsRun {
  RootSequence lower;
  RootSequence upper;
  std::vector<BoundsPair> pairs;
};

BoundsRun run_bounds(const RunConfig& cfg) {
  require_range(cfg);
  const PotentialSpec v = potential_for(cfg.potential, order_for(cfg.dmax));
  BoundsRun b{tracked(cfg, v, 0, cfg.dmax), tracked(cfg, v, 1, cfg.dmax), {}};
  b.pairs = pair_bounds(b.lower, b.upper);
  return b;
}

Json bounds_results(const BoundsRun& b, int target) {
  Json results = Json::array();
  for (int D = std::min(b.lower.entries.empty() ? 1 << 20 : b.lower.entries.front().D,
                        b.upper.entries.empty() ? 1 << 20 : b.upper.entries.front().D);
       ; ++D) {
    const RootEntry* lo = b.lower.at(D);
    const RootEntry* up = b.upper.at(D);
    if (lo == nullptr && up == nullptr) {
      if (D > 4096) break;
      const bool more = (!b.lower.entries.empty() && b.lower.entries.back().D > D) ||
                        (!b.upper.entries.empty() && b.upper.entries.back().D > D);
      if (!more) break;
      continue;
    }
    if (lo != nullptr) results.push_back(entry_json(*lo, 0, target));
    if (up != nullptr) results.push_back(entry_json(*up, 1, target));
  }
  return results;
}

Report bounds(const RunConfig& cfg) {
  const BoundsRun b = run_bounds(cfg);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = bounds_results(b, cfg.digits);
  r.json["pairs"] = Json::array();
  r.table.header = {"D", "lower", "upper", "gap", "lower_digits", "upper_digits"};
  for (const auto& p : b.pairs) {
    Json j;
    j["D"] = p.D;
    j["lower"] = certified(p.lower, p.lower_digits);
    j["upper"] = certified(p.upper, p.upper_digits);
    j["gap"] = to_scientific(p.gap, 6);
    j["ordered"] = p.lower <= p.upper;
    r.json["pairs"].push_back(j);
    r.table.rows.push_back({std::to_string(p.D), j["lower"], j["upper"], j["gap"],
                            std::to_string(p.lower_digits), std::to_string(p.upper_digits)});
  }
  r.json["meta"] = meta_json(std::max(max_precision(b.lower), max_precision(b.upper)));
  return r;
}

Json rate_json(const RateFit& f) {
  Json j;
  j["A"] = f.A;
  j["k"] = f.k;
  j["log10_slope"] = f.log10_slope;
  j["residual"] = f.residual;
  return j;
}

Report rate(const RunConfig& cfg) {
  const BoundsRun b = run_bounds(cfg);
  const auto g = gaps(b.pairs);
  const RateFit fit = fit_rate(g);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = bounds_results(b, cfg.digits);
  r.json["fit"] = rate_json(fit);
  r.json["fit"]["model"] = "gap = A exp(-k D)";
  r.json["fit"]["D_range"] = {g.front().first, g.back().first};
  r.table.header = {"D", "gap", "log10_gap", "log10_fit"};
  for (const auto& [D, gap] : g) {
    r.table.rows.push_back({std::to_string(D), to_scientific(gap, 6), fixed(log10_abs(gap)),
                            fixed(std::log10(fit.A) - fit.k * D / std::log(10.0))});
  }
  r.json["meta"] = meta_json(std::max(max_precision(b.lower), max_precision(b.upper)));
  return r;
}

Report hankel_poly(const RunConfig& cfg) {
  if (cfg.D == 0) throw InvalidInput("--D is required");
  const PotentialRequest req = parse_potential(cfg.potential);
  const HankelSpec spec{cfg.D, cfg.d, cfg.parity};
  spec.validate();
  const PotentialSpec v = build_potential(req, spec.max_index() + 1);
  RationalPoly p = det_symbolic(v, spec);
  if (cfg.monic) p = p.monic();
  const std::string symbol = v.symbolic_param().value_or("p");
  Report r;
  r.text = format(p, "E", symbol);
  r.json["inputs"] = inputs_json(cfg);
  r.json["polynomial"] = r.text;
  r.json["degree"] = p.degree();
  r.json["coefficients"] = Json::array();
  r.table.header = {"power", "coefficient"};
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const std::string c = format(RationalPoly({p.coeffs()[i]}), "E", symbol);
    r.json["coefficients"].push_back(c);
    r.table.rows.push_back({std::to_string(i), c});
  }
  r.json["meta"] = meta_json(0);
  return r;
}

int agreement_digits(const BigReal& a, const BigReal& b) {
  if (a == b) return static_cast<int>(std::min(a.bits(), b.bits()) * 0.30103);
  const double rel = log10_abs(a - b) - std::max(log10_abs(b), -300.0);
  return std::max(0, static_cast<int>(std::floor(-rel)));
}

Report expect(const RunConfig& cfg) {
  if (cfg.D == 0) throw InvalidInput("--D is required");
  const ObservableSpec a = ObservableSpec::parse(cfg.observable);
  const PotentialSpec v = potential_for(cfg.potential, order_for(cfg.D));
  const RootSequence seq = tracked(cfg, v, cfg.d, cfg.D);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = Json::array();
  r.table.header = {"D", "d", "root", "expectation", "expectation_digits"};
  for (const auto& e : seq.entries) {
    const HankelSpec spec{e.D, cfg.d, cfg.parity};
    const BigReal value = expectation(v, a, spec, e.root, e.digits_used);
    const BigReal check = expectation(v, a, spec, e.root, e.digits_used + 20);
    const int digits = std::min(agreement_digits(value, check), e.certified_digits);
    Json j = entry_json(e, cfg.d, cfg.digits);
    j["expectation"] = certified(value, digits);
    j["expectation_digits"] = digits;
    r.json["results"].push_back(j);
    r.table.rows.push_back({std::to_string(e.D), std::to_string(cfg.d),
                            certified(e.root, e.certified_digits), j["expectation"],
                            std::to_string(digits)});
  }
  if (!cfg.fd_step.empty() && !seq.entries.empty()) {
    const Rational h = parse_rational(cfg.fd_step);
    if (h <= 0) throw InvalidInput("--fd-step must be positive");
    const auto& last = seq.entries.back();
    const HankelSpec spec{last.D, cfg.d, cfg.parity};
    const int step_digits = std::max(0, static_cast<int>(std::ceil(-log10_abs(to_big(h, 40)))));
    SolveOptions o = options_for(cfg);
    o.digits10 = 0;
    o.target_digits = std::max(cfg.digits, 20) + step_digits + 10;
    const auto points = energy_slope_scan(v, a, spec, {-h, h}, last.root, o);
    const unsigned P = std::max({last.digits_used, points[0].energy.digits_used,
                                 points[1].energy.digits_used});
    PrecisionScope scope(P);
    const BigReal slope =
        (points[1].energy.root - points[0].energy.root) / to_big(Rational(2) * h, P);
    const BigReal value = expectation(v, a, spec, last.root, last.digits_used);
    Json fd;
    fd["step"] = cfg.fd_step;
    fd["D"] = last.D;
    fd["slope"] = to_decimal(slope, 25);
    fd["agreement_digits"] = agreement_digits(slope, value);
    r.json["finite_difference"] = fd;
  }
  r.json["meta"] = meta_json(max_precision(seq));
  return r;
}

Report wavefunction(const RunConfig& cfg) {
  if (cfg.D == 0) throw InvalidInput("--D is required");
  const int N = cfg.N >= 0 ? cfg.N : cfg.D - 1;
  const int M = cfg.M >= 0 ? cfg.M : N + cfg.d;
  if (M < N) throw InvalidInput("--M must be >= --N");
  const PotentialSpec v = potential_for(cfg.potential, std::max(order_for(cfg.D), M + N + 2));
  BigReal energy;
  unsigned digits = cfg.precision != 0 ? cfg.precision : default_digits(std::max(cfg.D, N + 1));
  Json root_json;
  if (!cfg.energy.empty()) {
    energy = to_big(cfg.energy, digits);
  } else {
    const RootSequence seq = tracked(cfg, v, cfg.d, cfg.D);
    const RootEntry* e = seq.at(cfg.D);
    if (e == nullptr) throw ConvergenceError("no root at D = " + std::to_string(cfg.D));
    energy = e->root;
    digits = std::max(digits, e->digits_used);
    root_json = entry_json(*e, cfg.d, cfg.digits);
  }
  const PadeApproximant p = pade_for_energy(v, cfg.parity, energy, M, N, digits,
                                            std::max(10.0, cfg.xmax));
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = Json::array();
  if (!root_json.is_null()) r.json["results"].push_back(root_json);
  Json pade;
  pade["M"] = p.M;
  pade["N"] = p.N;
  pade["rank_deficient"] = p.rank_deficient;
  pade["poles"] = Json::array();
  for (const auto& x : p.poles) pade["poles"].push_back(to_decimal(x, 20));
  pade["a"] = Json::array();
  for (const auto& c : p.a) pade["a"].push_back(to_scientific(c, 25));
  pade["b"] = Json::array();
  for (const auto& c : p.b) pade["b"].push_back(to_scientific(c, 25));
  r.json["pade"] = pade;
  r.json["energy"] = to_decimal(energy, 25);
  r.json["points"] = Json::array();
  r.table.header = {"x", "psi", "residual"};
  const BigReal radius = p.pole_free_radius();
  PrecisionScope scope(digits);
  for (int i = 0; i < cfg.points; ++i) {
    const double xd = cfg.points == 1 ? cfg.xmax : cfg.xmax * i / (cfg.points - 1);
    const BigReal x = to_big(Rational(static_cast<long>(std::llround(xd * 1e6)), 1000000), digits);
    Json pt;
    pt["x"] = fixed(xd);
    if (!(x < radius)) {
      pt["psi"] = nullptr;
      pt["residual"] = nullptr;
      pt["beyond_pole"] = true;
      r.json["points"].push_back(pt);
      r.table.rows.push_back({fixed(xd), "", ""});
      continue;
    }
    const BigReal psi = eigenfunction_eval(p, cfg.parity, x);
    const auto res = residual_profile(p, cfg.parity, energy, v, {x});
    pt["psi"] = to_scientific(psi, 20);
    pt["residual"] = to_scientific(res.front().residual, 3);
    r.json["points"].push_back(pt);
    r.table.rows.push_back({fixed(xd), pt["psi"], pt["residual"]});
  }
  r.json["meta"] = meta_json(digits);
  return r;
}

Report oracle(const RunConfig& cfg) {
  const PotentialSpec v = potential_for(cfg.potential, 4);
  const OracleResult o = oracle_eigenvalues(
      v, cfg.both_parities ? std::nullopt : std::optional<int>(cfg.parity), cfg.kmax);
  Report r;
  r.json["inputs"] = inputs_json(cfg);
  r.json["results"] = Json::array();
  r.table.header = {"n", "parity", "energy"};
  char buf[64];
  for (std::size_t i = 0; i < o.energies.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", o.energies[i]);
    Json j;
    j["n"] = o.states[i];
    j["parity"] = o.states[i] % 2;
    j["energy"] = buf;
    r.json["results"].push_back(j);
    r.table.rows.push_back({std::to_string(o.states[i]), std::to_string(o.states[i] % 2), buf});
  }
  Json meta = meta_json(16);
  meta["method"] = o.method;
  meta["box"] = o.box;
  meta["step"] = o.step;
  meta["max_drift"] = o.max_drift;
  r.json["meta"] = meta;
  return r;
}

}  // namespace

Report execute(const RunConfig& cfg) {
  if (cfg.command == "solve") return solve(cfg);
  if (cfg.command == "bounds") return bounds(cfg);
  if (cfg.command == "sequence") return sequence(cfg);
  if (cfg.command == "hankel-poly") return hankel_poly(cfg);
  if (cfg.command == "expect") return expect(cfg);
  if (cfg.command == "wavefunction") return wavefunction(cfg);
  if (cfg.command == "rate") return rate(cfg);
  if (cfg.command == "oracle") return oracle(cfg);
  if (cfg.command == "table") return run_table(cfg);
  if (cfg.command == "figure-data") return run_figure(cfg);
  throw InvalidInput("unknown command '" + cfg.command + "'");
}

}  // namespace rpm::cli
