#include "rpm/potential.hpp"

#include "rpm/series.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace rpm {

std::string to_string(Model m) {
  switch (m) {
    case Model::harmonic: return "harmonic";
    case Model::quartic: return "quartic";
    case Model::x2x4: return "x2x4";
    case Model::dwell: return "dwell";
    case Model::mpt: return "mpt";
    case Model::poly: return "poly";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::harmonic, Model::quartic, Model::x2x4, Model::dwell, Model::mpt,
                  Model::poly}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidInput("unknown potential model '" + std::string(name) + "'");
}

PotentialSpec::PotentialSpec(std::string name, std::map<std::string, Rational> params,
                             Rational v0, std::vector<Rational> coeffs, bool exact_tail,
                             std::map<std::string, Sensitivity> sensitivities,
                             std::optional<std::string> symbolic_param)
    : name_(std::move(name)),
      params_(std::move(params)),
      v0_(std::move(v0)),
      coeffs_(std::move(coeffs)),
      exact_tail_(exact_tail),
      sensitivities_(std::move(sensitivities)),
      symbolic_param_(std::move(symbolic_param)) {
  if (coeffs_.empty()) throw InvalidInput("potential needs at least one coefficient (jmax >= 1)");
  for (const auto& [key, s] : sensitivities_) {
    if (s.dcoeffs.size() != coeffs_.size()) {
      throw InvalidInput("sensitivity for '" + key + "' does not match the truncation order");
    }
  }
}

Rational PotentialSpec::coeff(std::size_t j) const {
  if (j == 0) return v0_;
  if (j <= coeffs_.size()) return coeffs_[j - 1];
  if (exact_tail_) return Rational(0);
  throw InvalidInput("potential '" + name_ + "' truncated at order " +
                     std::to_string(coeffs_.size()) + "; V_" + std::to_string(j) +
                     " requested (regenerate the series at higher order)");
}

std::size_t PotentialSpec::available_order() const {
  return exact_tail_ ? std::numeric_limits<std::size_t>::max() : coeffs_.size();
}

bool PotentialSpec::has_sensitivity(const std::string& param) const {
  return sensitivities_.count(param) != 0;
}

const Sensitivity& PotentialSpec::sensitivity(const std::string& param) const {
  auto it = sensitivities_.find(param);
  if (it == sensitivities_.end()) {
    throw InvalidInput("potential '" + name_ + "' does not depend on parameter '" + param + "'");
  }
  return it->second;
}

Rational PotentialSpec::dcoeff(const std::string& param, std::size_t j) const {
  const Sensitivity& s = sensitivity(param);
  if (j == 0) return s.dv0;
  if (j <= s.dcoeffs.size()) return s.dcoeffs[j - 1];
  if (exact_tail_) return Rational(0);
  throw InvalidInput("potential '" + name_ + "' truncated at order " +
                     std::to_string(coeffs_.size()) + "; dV_" + std::to_string(j) + " requested");
}

ParamPoly PotentialSpec::symbolic_coeff(std::size_t j) const {
  const Rational base = coeff(j);
  if (!symbolic_param_) return ParamPoly(base);
  const Sensitivity& s = sensitivity(*symbolic_param_);
  if (!s.linear) {
    throw InvalidInput("potential '" + name_ + "' is not linear in '" + *symbolic_param_ +
                       "'; symbolic coefficients need degree <= 1");
  }
  const Rational slope = dcoeff(*symbolic_param_, j);
  const Rational at = params_.at(*symbolic_param_);
  // V_j(p) = V_j(at) + slope*(p - at)
  return ParamPoly(std::vector<Rational>{base - slope * at, slope});
}

std::uint64_t PotentialSpec::fingerprint() const {
  // FNV-1a over a canonical textual rendering.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  mix(name_);
  for (const auto& [k, v] : params_) {
    mix(k);
    mix(v.str());
  }
  mix(v0_.str());
  for (const auto& c : coeffs_) mix(c.str());
  mix(exact_tail_ ? "exact" : "truncated");
  return h;
}

BigReal PotentialSpec::evaluate(const BigReal& x, unsigned digits10) const {
  PrecisionScope scope(digits10);
  const BigReal z = x * x;
  BigReal acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc + to_big(*it, digits10)) * z;
  return acc + to_big(v0_, digits10);
}

namespace {

const ParamValue& require_param(const std::map<std::string, ParamValue>& params,
                                const std::string& key, Model model) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InvalidInput("model '" + to_string(model) + "' requires parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown(const std::map<std::string, ParamValue>& params,
                    std::initializer_list<const char*> allowed, Model model) {
  for (const auto& [k, v] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&k](const char* a) { return k == a; })) {
      throw InvalidInput("model '" + to_string(model) + "' has no parameter '" + k + "'");
    }
  }
}

}  // namespace

PotentialSpec series_coefficients(Model model, const std::map<std::string, ParamValue>& params,
                                  int order, const std::vector<Rational>& poly_coeffs) {
  if (order < 1) throw InvalidInput("series order must be >= 1");
  // Polynomial models keep at least their full degree so the exact zero tail
  // is genuinely zero.
  const bool quartic_term = model == Model::quartic || model == Model::x2x4 || model == Model::dwell;
  const auto n = static_cast<std::size_t>(quartic_term ? std::max(order, 2) : order);
  std::vector<Rational> coeffs(n);
  std::map<std::string, Rational> bound;
  std::map<std::string, Sensitivity> sens;
  std::optional<std::string> symbolic;
  const std::string name = to_string(model);

  auto bind = [&](const std::string& key) -> Rational {
    const ParamValue& p = require_param(params, key, model);
    bound[key] = p.value;
    if (p.symbol) symbolic = key;
    return p.value;
  };
  auto unit_sensitivity = [n](std::size_t j) {
    Sensitivity s;
    s.dcoeffs.assign(n, Rational(0));
    if (j >= 1 && j <= n) s.dcoeffs[j - 1] = 1;
    return s;
  };

  switch (model) {
    case Model::harmonic:
      reject_unknown(params, {}, model);
      coeffs[0] = 1;
      return PotentialSpec(name, bound, Rational(0), std::move(coeffs), true);
    case Model::quartic:
      reject_unknown(params, {}, model);
      coeffs[1] = 1;
      return PotentialSpec(name, bound, Rational(0), std::move(coeffs), true);
    case Model::x2x4: {
      reject_unknown(params, {"lambda"}, model);
      const Rational lambda = bind("lambda");
      coeffs[0] = 1;
      coeffs[1] = lambda;
      sens["lambda"] = unit_sensitivity(2);
      return PotentialSpec(name, bound, Rational(0), std::move(coeffs), true, std::move(sens),
                           symbolic);
    }
    case Model::dwell: {
      reject_unknown(params, {"beta"}, model);
      const Rational beta = bind("beta");
      coeffs[0] = beta;
      coeffs[1] = 1;
      sens["beta"] = unit_sensitivity(1);
      return PotentialSpec(name, bound, Rational(0), std::move(coeffs), true, std::move(sens),
                           symbolic);
    }
    case Model::mpt: {
      reject_unknown(params, {"lambda"}, model);
      const Rational lambda = bind("lambda");
      const Rational strength = lambda * (lambda - 1);
      if (strength == 0) {
        throw InvalidInput("mpt with lambda in {0, 1} is identically zero");
      }
      // sech^2 = 1/cosh^2
      const RationalSeries cosh2 = cosh_squared_series(order);
      const RationalSeries sech2 = series_reciprocal(cosh2, order);
      Sensitivity s;
      s.linear = false;
      s.dv0 = -(2 * lambda - 1) * sech2[0];
      s.dcoeffs.resize(n);
      for (std::size_t j = 1; j <= n; ++j) {
        coeffs[j - 1] = -strength * sech2[j];
        s.dcoeffs[j - 1] = -(2 * lambda - 1) * sech2[j];
      }
      sens["lambda"] = std::move(s);
      return PotentialSpec(name, bound, -strength * sech2[0], std::move(coeffs), false,
                           std::move(sens), symbolic);
    }
    case Model::poly: {
      reject_unknown(params, {}, model);
      if (poly_coeffs.empty()) throw InvalidInput("poly potential needs an explicit coefficient list");
      const std::size_t len = std::max(n, poly_coeffs.size() - 1);
      coeffs.assign(len, Rational(0));
      for (std::size_t j = 1; j < poly_coeffs.size(); ++j) coeffs[j - 1] = poly_coeffs[j];
      return PotentialSpec(name, bound, poly_coeffs[0], std::move(coeffs), true);
    }
  }
  throw InvalidInput("unknown potential model");
}

PotentialSpec series_coefficients(Model model, const std::map<std::string, Rational>& params,
                                  int order) {
  std::map<std::string, ParamValue> p;
  for (const auto& [k, v] : params) p[k] = ParamValue{v, std::nullopt};
  return series_coefficients(model, p, order);
}

std::pair<PotentialSpec, Rational> shift_constant(const PotentialSpec& p) {
  // Sensitivities keep dv0 so callers can differentiate the removed shift.
  return {PotentialSpec(p.name(), p.params(), Rational(0), p.coeffs(), p.exact_tail(),
                        p.sensitivities(), p.symbolic_param()),
          p.v0()};
}

PotentialSpec add_perturbation(const PotentialSpec& p, const std::vector<Rational>& a,
                               const std::string& param, const Rational& beta) {
  if (p.params().count(param) != 0) {
    throw InvalidInput("potential already has a parameter named '" + param + "'");
  }
  const std::size_t n = std::max(p.jmax(), a.empty() ? std::size_t{0} : a.size() - 1);
  std::vector<Rational> coeffs(n);
  Sensitivity s;
  s.dcoeffs.assign(n, Rational(0));
  for (std::size_t j = 1; j <= n; ++j) {
    const Rational aj = j < a.size() ? a[j] : Rational(0);
    // Beyond the base truncation only exact tails may be extended.
    coeffs[j - 1] = (j <= p.jmax() ? p.coeffs()[j - 1] : p.coeff(j)) + beta * aj;
    s.dcoeffs[j - 1] = aj;
  }
  s.dv0 = a.empty() ? Rational(0) : a[0];
  const Rational v0 = p.v0() + beta * s.dv0;
  auto params = p.params();
  params[param] = beta;
  std::map<std::string, Sensitivity> sens;
  for (auto [key, base] : p.sensitivities()) {
    base.dcoeffs.resize(n, Rational(0));
    sens[key] = std::move(base);
  }
  sens[param] = std::move(s);
  return PotentialSpec(p.name() + "+" + param + "*A", std::move(params), v0, std::move(coeffs), p.exact_tail(), std::move(sens),
                       p.symbolic_param());
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

PotentialRequest parse_potential(std::string_view text) {
  const auto colon = text.find(':');
  PotentialRequest req{parse_model(text.substr(0, colon)), {}, {}};
  if (colon == std::string_view::npos) return req;
  const std::string_view rest = text.substr(colon + 1);
  if (req.model == Model::poly) {
    for (auto item : split(rest, ',')) req.poly_coeffs.push_back(parse_rational(item));
    return req;
  }
  for (auto item : split(rest, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("expected name=value in potential string, got '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    if (is_identifier(value)) {
      req.params[key] = ParamValue{Rational(0), std::string(value)};
    } else {
      req.params[key] = ParamValue{parse_rational(value), std::nullopt};
    }
  }
  return req;
}

PotentialSpec build_potential(const PotentialRequest& req, int order) {
  return series_coefficients(req.model, req.params, order, req.poly_coeffs);
}

}  // namespace rpm
