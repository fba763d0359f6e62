#include "rpm/observables.hpp"

#include <string>

namespace rpm {

void ObservableSpec::validate() const {
  for (const auto& c : coeffs) {
    if (c != 0) return;
  }
  throw InvalidInput("observable has no nonzero coefficient");
}

namespace {

std::vector<std::string> signed_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool split = (c == '+' || c == '-') && !cur.empty() && cur.back() != '^' &&
                       cur.back() != '*' && cur.back() != '/';
    if (split) {
      out.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void add_term(std::vector<Rational>& coeffs, const std::string& term, std::string_view whole) {
  const auto bad = [&] {
    return InvalidInput("cannot parse observable '" + std::string(whole) +
                        "' (expected even powers such as 'x^4 + 2/3*x^2')");
  };
  const auto x = term.find('x');
  Rational coef(1);
  std::size_t power = 0;
  if (x == std::string::npos) {
    coef = parse_rational(term);
  } else {
    std::string head = term.substr(0, x);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head.empty() || head == "+") {
      coef = 1;
    } else if (head == "-") {
      coef = -1;
    } else {
      coef = parse_rational(head);
    }
    const std::string tail = term.substr(x + 1);
    if (tail.empty()) {
      power = 1;
    } else if (tail.size() > 1 && tail[0] == '^') {
      try {
        std::size_t used = 0;
        const long k = std::stol(tail.substr(1), &used);
        if (used != tail.size() - 1 || k < 0) throw bad();
        power = static_cast<std::size_t>(k);
      } catch (const std::logic_error&) {
        throw bad();
      }
    } else {
      throw bad();
    }
  }
  if (power % 2 != 0) {
    throw InvalidInput("observable '" + std::string(whole) + "' has an odd power of x");
  }
  const std::size_t j = power / 2;
  if (coeffs.size() <= j) coeffs.resize(j + 1, Rational(0));
  coeffs[j] += coef;
}

}  // namespace

ObservableSpec ObservableSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw InvalidInput("empty observable");
  ObservableSpec out;
  if (s.find('x') == std::string::npos && s.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const auto pos = s.find(',', start);
      out.coeffs.push_back(parse_rational(std::string_view(s).substr(start, pos - start)));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  } else {
    for (const auto& term : signed_terms(s)) add_term(out.coeffs, term, text);
  }
  out.validate();
  return out;
}

BigReal expectation(const PotentialSpec& v, const ObservableSpec& a, const HankelSpec& spec,
                    const BigReal& root, unsigned digits10) {
  a.validate();
  require_precision(digits10);
  const PotentialSpec perturbed = add_perturbation(v, a.coeffs, kObservableParam, Rational(0));
  auto [shifted, shift] = shift_constant(perturbed);
  PrecisionScope scope(digits10);
  const BigReal e = root.rounded(digits10) - to_big(shift, digits10);
  const DualReal h = det_dual(shifted, e, spec, std::string(kObservableParam), digits10);
  if (h.dE == 0) {
    throw ConvergenceError("dH/dE vanishes at the root (multiple root); <A> is indeterminate");
  }
  return -h.dP / h.dE + to_big(a.coeffs.empty() ? Rational(0) : a.coeffs[0], digits10);
}

std::vector<SlopePoint> energy_slope_scan(const PotentialSpec& v, const ObservableSpec& a,
                                          const HankelSpec& spec,
                                          const std::vector<Rational>& betas, const BigReal& seed,
                                          const SolveOptions& opts) {
  a.validate();
  std::vector<SlopePoint> out;
  BigReal anchor = seed;
  for (const auto& beta : betas) {
    const PotentialSpec perturbed = add_perturbation(v, a.coeffs, kObservableParam, beta);
    auto r = closest_root(perturbed, spec, anchor, opts.window, opts);
    if (!r) {
      throw ConvergenceError("lost continuation at beta = " + to_string(beta) + ": no root within " +
                             std::to_string(opts.window) + " of " + to_decimal(anchor, 25));
    }
    anchor = r->root;
    out.push_back({beta, std::move(*r)});
  }
  return out;
}

}  // namespace rpm
