#pragma once

// Symmetric potentials V(x) = v0 + sum_{j>=1} V_j x^{2j} as exact rational
// Taylor coefficients, plus the built-in models and the CLI mini-language.

#include "rpm/numeric.hpp"
#include "rpm/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rpm {

enum class Model { harmonic, quartic, x2x4, dwell, mpt, poly };

std::string to_string(Model m);
Model parse_model(std::string_view name);

/// Derivative of every coefficient with respect to one parameter. `linear`
/// marks potentials that depend affinely on it, which the symbolic path needs.
struct Sensitivity {
  Rational dv0;
  std::vector<Rational> dcoeffs;  // d V_j / d param, j = 1..jmax
  bool linear = true;
};

class PotentialSpec {
 public:
  PotentialSpec(std::string name, std::map<std::string, Rational> params, Rational v0,
                std::vector<Rational> coeffs, bool exact_tail,
                std::map<std::string, Sensitivity> sensitivities = {},
                std::optional<std::string> symbolic_param = std::nullopt);

  const std::string& name() const { return name_; }
  const std::map<std::string, Rational>& params() const { return params_; }
  const Rational& v0() const { return v0_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t jmax() const { return coeffs_.size(); }
  bool exact_tail() const { return exact_tail_; }

  /// V_j for j >= 1. Beyond jmax this is zero for polynomial potentials and
  /// an InvalidInput error otherwise (the series must be regenerated).
  Rational coeff(std::size_t j) const;
  /// Largest j for which coeff(j) is available (SIZE_MAX for exact tails).
  std::size_t available_order() const;

  const std::map<std::string, Sensitivity>& sensitivities() const { return sensitivities_; }
  bool has_sensitivity(const std::string& param) const;
  const Sensitivity& sensitivity(const std::string& param) const;
  /// dV_j/dparam, with the same truncation rule as coeff().
  Rational dcoeff(const std::string& param, std::size_t j) const;

  /// Parameter held symbolic (e.g. `x2x4:lambda=L`); numeric evaluation of
  /// such a spec is refused.
  const std::optional<std::string>& symbolic_param() const { return symbolic_param_; }

  /// V_j as a polynomial in the symbolic parameter (degree <= 1).
  ParamPoly symbolic_coeff(std::size_t j) const;

  /// Stable content hash of name, parameters and coefficients.
  std::uint64_t fingerprint() const;

  /// V(x) from the truncated series (exact for polynomial potentials).
  BigReal evaluate(const BigReal& x, unsigned digits10) const;

 private:
  std::string name_;
  std::map<std::string, Rational> params_;
  Rational v0_;
  std::vector<Rational> coeffs_;
  bool exact_tail_;
  std::map<std::string, Sensitivity> sensitivities_;
  std::optional<std::string> symbolic_param_;
};

/// Parameter value that may be held symbolic under a name (e.g. `L`).
struct ParamValue {
  Rational value;
  std::optional<std::string> symbol;
};

/// Builds a model's coefficients V_1..V_order. Required parameters: x2x4 and
/// mpt need `lambda`, dwell needs `beta`, poly needs `coeffs` given through
/// `poly_coeffs` (V_0, V_1, ... as coefficients of x^0, x^2, ...).
PotentialSpec series_coefficients(Model model, const std::map<std::string, ParamValue>& params,
                                  int order, const std::vector<Rational>& poly_coeffs = {});

/// Convenience overload for purely numeric parameters.
PotentialSpec series_coefficients(Model model, const std::map<std::string, Rational>& params,
                                  int order);

/// Moves the constant term out of the potential: returns the spec with
/// v0 = 0 and the removed constant, which callers add back to eigenvalues.
std::pair<PotentialSpec, Rational> shift_constant(const PotentialSpec& p);

/// V + beta*A for an even polynomial A = sum_j A_j x^{2j} (A_0 included in v0),
/// with `param` bound to `beta` and carrying sensitivity A.
PotentialSpec add_perturbation(const PotentialSpec& p, const std::vector<Rational>& a,
                               const std::string& param, const Rational& beta);

/// Parsed form of the potential mini-language, e.g. `dwell:beta=-5`.
struct PotentialRequest {
  Model model;
  std::map<std::string, ParamValue> params;
  std::vector<Rational> poly_coeffs;
};

PotentialRequest parse_potential(std::string_view text);
PotentialSpec build_potential(const PotentialRequest& req, int order);

}  // namespace rpm
