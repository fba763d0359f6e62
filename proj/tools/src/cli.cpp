#include "rpm_cli/cli.hpp"

#include "CLI11.hpp"
#include "rpm/numeric.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace rpm::cli {

namespace {

const std::set<std::string> kCommands = {"solve",      "bounds", "sequence", "hankel-poly",
                                         "expect",     "wavefunction", "rate", "oracle",
                                         "table",      "figure-data"};

std::string option_name(const std::string& arg) {
  if (arg.rfind("--", 0) != 0) return "";
  return arg.substr(2, arg.find('=') == std::string::npos ? std::string::npos : arg.find('=') - 2);
}

// Appends the fields of a --config JSON file that the command line does not
// already set.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("config file must hold a JSON object");
  std::set<std::string> given;
  for (const auto& a : args) given.insert(option_name(a));
  const bool has_command = args.size() > 1 && kCommands.count(args[1]) != 0;
  if (!has_command) {
    if (!doc.contains("command") || !doc["command"].is_string()) {
      throw InvalidInput("no command on the command line or in the config file");
    }
    args.insert(args.begin() + 1, doc["command"].get<std::string>());
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "command" || given.count(key) != 0) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_string()) {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back("--" + key);
      args.push_back(value.dump());
    } else {
      throw InvalidInput("config field '" + key + "' must be a string, number or boolean");
    }
  }
  return args;
}

struct Parser {
  CLI::App app{"Riccati-Pade eigenvalues, bounds and eigenfunctions of 1D symmetric potentials",
               "rpm"};
  RunConfig cfg;
  std::string config_path;
  std::string parity_text = "0";
  std::string oracle_parity = "both";

  Parser() {
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", config_path, "JSON file with default flag values");

    auto* solve = command("solve", "Track a root sequence of H_D^d over D = dmin..dmax");
    potential(solve);
    parity(solve);
    solve->add_option("--d", cfg.d, "Hankel shift d (0: lower, 1: upper bounds)");
    range(solve);
    seeds(solve, false);
    numeric(solve);

    auto* bounds = command("bounds", "Lower (d=0) and upper (d=1) bounds over a D range");
    potential(bounds);
    parity(bounds);
    range(bounds);
    seeds(bounds, true);
    numeric(bounds);

    auto* sequence = command("sequence", "Root sequences from a seed or from a window scan");
    potential(sequence);
    parity(sequence);
    sequence->add_option("--d", cfg.d, "Hankel shift d");
    range(sequence);
    seeds(sequence, false);
    sequence->add_option("--scan", cfg.scan, "Scan window 'lo,hi' at D = dmin");
    numeric(sequence);

    auto* poly = command("hankel-poly", "Exact H_D^d(E) as a polynomial");
    potential(poly);
    parity(poly);
    poly->add_option("--D", cfg.D, "Hankel dimension")->required();
    poly->add_option("--d", cfg.d, "Hankel shift d");
    poly->add_flag("--monic", cfg.monic, "Divide by the leading coefficient");

    auto* expect = command("expect", "Expectation value <A> from the Hellmann-Feynman slope");
    potential(expect);
    parity(expect);
    expect->add_option("--D", cfg.D, "Hankel dimension")->required();
    expect->add_option("--d", cfg.d, "Hankel shift d");
    expect->add_option("--dmin", cfg.dmin, "First D of the continuation");
    expect->add_option("--observable", cfg.observable, "Even polynomial, e.g. 'x^2'");
    expect->add_option("--fd-step", cfg.fd_step, "Rational beta step for a finite-difference check");
    seeds(expect, false);
    numeric(expect);

    auto* wave = command("wavefunction", "Pade eigenfunction and Schroedinger residual on a grid");
    potential(wave);
    parity(wave);
    wave->add_option("--D", cfg.D, "Hankel dimension")->required();
    wave->add_option("--d", cfg.d, "Hankel shift d");
    wave->add_option("--dmin", cfg.dmin, "First D of the continuation");
    wave->add_option("--energy", cfg.energy, "Use this energy instead of solving");
    wave->add_option("--M", cfg.M, "Numerator degree (default N + d)");
    wave->add_option("--N", cfg.N, "Denominator degree (default D - 1)");
    wave->add_option("--xmax", cfg.xmax, "Grid end; the grid starts at 0");
    wave->add_option("--points", cfg.points, "Grid points");
    seeds(wave, false);
    numeric(wave);

    auto* rate = command("rate", "Exponential fit of the bound gaps");
    potential(rate);
    parity(rate);
    range(rate);
    seeds(rate, true);
    numeric(rate);

    auto* oracle = command("oracle", "Independent Numerov shooting eigenvalues");
    potential(oracle);
    oracle->add_option("--parity", oracle_parity, "0, 1 or both")->capture_default_str();
    oracle->add_option("--kmax", cfg.kmax, "Report states 0..kmax");

    auto* table = command("table", "Reproduce a preset table (spurious, dw-e0e1)");
    table->add_option("--name", cfg.name, "Preset name")->required();
    table->add_option("--digits", cfg.digits, "Printed significant digits");

    auto* figure = command("figure-data",
                           "CSV data for a preset figure (anal, logUBLB_0, sequences, exval, "
                           "DWH20, DWH21, DWLOG)");
    figure->add_option("--name", cfg.name, "Preset name")->required();
  }

  CLI::App* command(const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--format", cfg.format, "json, csv or text");
    sub->add_option("--out", cfg.out, "Write output to this file");
    return sub;
  }
  void potential(CLI::App* sub) {
    sub->add_option("--potential", cfg.potential,
                    "harmonic | quartic | x2x4:lambda=1/10 | dwell:beta=-5 | mpt:lambda=3 | "
                    "poly:V0,V1,... (an identifier keeps a parameter symbolic)")
        ->required();
  }
  void parity(CLI::App* sub) { sub->add_option("--parity", parity_text, "Parity index s (0 or 1)"); }
  void range(CLI::App* sub) {
    sub->add_option("--dmin", cfg.dmin, "First Hankel dimension");
    sub->add_option("--dmax", cfg.dmax, "Last Hankel dimension")->required();
  }
  void seeds(CLI::App* sub, bool pair) {
    sub->add_option("--seed", cfg.seed, pair ? "Seed for both sequences" : "Seed energy");
    if (pair) sub->add_option("--seed-upper", cfg.seed_upper, "Seed for the d=1 sequence");
    sub->add_option("--seeds-from", cfg.seeds_from, "Take seeds from an earlier JSON result");
    sub->add_option("--state", cfg.state, "Seed from the oracle's k-th state of this parity");
  }
  void numeric(CLI::App* sub) {
    sub->add_option("--digits", cfg.digits, "Target digits T");
    sub->add_option("--precision", cfg.precision, "Working precision in digits (0: 4D+20)");
    sub->add_option("--window", cfg.window, "Continuation search radius");
    sub->add_option("--start-window", cfg.start_window, "Search radius before the first root");
    sub->add_option("--grid", cfg.grid, "Grid points of window scans");
  }
};

void validate(RunConfig& cfg, const std::string& parity_text) {
  if (cfg.command == "oracle") {
    if (parity_text == "both") {
      cfg.both_parities = true;
    } else if (parity_text == "0" || parity_text == "1") {
      cfg.parity = parity_text == "1";
    } else {
      throw InvalidInput("--parity must be 0, 1 or both");
    }
    if (cfg.kmax < 0) throw InvalidInput("--kmax must be >= 0");
  } else {
    if (parity_text != "0" && parity_text != "1") throw InvalidInput("--parity must be 0 or 1");
    cfg.parity = parity_text == "1";
  }
  if (cfg.d < 0) throw InvalidInput("--d must be >= 0");
  if (cfg.digits < 1 || cfg.digits > 1000) throw InvalidInput("--digits must be in 1..1000");
  if (cfg.precision != 0 && cfg.precision < kMinDigits) {
    throw InvalidInput("--precision must be 0 or at least " + std::to_string(kMinDigits));
  }
  if (!(cfg.window > 0)) throw InvalidInput("--window must be positive");
  if (cfg.start_window && !(*cfg.start_window > 0)) throw InvalidInput("--start-window must be positive");
  if (cfg.grid < 2) throw InvalidInput("--grid must be >= 2");
  if (cfg.dmin < 2) throw InvalidInput("--dmin must be >= 2");
  if (cfg.dmax != 0 && cfg.dmax < cfg.dmin) throw InvalidInput("--dmax must be >= --dmin");
  if (cfg.D != 0 && cfg.D < 2) throw InvalidInput("--D must be >= 2");
  if (cfg.points < 1) throw InvalidInput("--points must be >= 1");
  if (!(cfg.xmax >= 0)) throw InvalidInput("--xmax must be >= 0");
  if (cfg.format.empty()) {
    cfg.format = cfg.command == "hankel-poly" ? "text"
                 : cfg.command == "figure-data" ? "csv"
                                                : "json";
  }
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") {
    throw InvalidInput("--format must be json, csv or text");
  }
}

std::string render(const Report& r, const std::string& format) {
  if (format == "csv") {
    if (r.table.header.empty()) throw InvalidInput("this command has no CSV form");
    return to_csv(r.table);
  }
  if (format == "text" && !r.text.empty()) return r.text + "\n";
  return r.json.dump(2) + "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Parser parser;
  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(std::move(args));
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    parser.app.parse(static_cast<int>(cargs.size()), cargs.data());
    RunConfig& cfg = parser.cfg;
    cfg.command = parser.app.get_subcommands().front()->get_name();
    validate(cfg, cfg.command == "oracle" ? parser.oracle_parity : parser.parity_text);
    const Report report = execute(cfg);
    const std::string text = render(report, cfg.format);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw InvalidInput("cannot write '" + cfg.out + "'");
      file << text;
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = parser.app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  } catch (const InvalidInput& e) {
    err << "rpm: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "rpm: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConvergenceError& e) {
    err << "rpm: no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const PrecisionError& e) {
    err << "rpm: no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "rpm: " << e.what() << "\n";
    return kExitNoConvergence;
  }
}

}  // namespace rpm::cli
