#include "rpm/riccati.hpp"

namespace rpm {

void require_parity(int s) {
  if (s != 0 && s != 1) throw InvalidInput("parity index s must be 0 or 1, got " + std::to_string(s));
}

namespace {

void require_numeric_potential(const PotentialSpec& v) {
  if (v.v0() != 0) {
    throw InvalidInput("potential '" + v.name() +
                       "' has a nonzero constant term; apply shift_constant first");
  }
  if (v.symbolic_param()) {
    throw InvalidInput("potential '" + v.name() + "' holds parameter '" + *v.symbolic_param() +
                       "' symbolic; bind it to a rational for numeric work");
  }
}

void require_order(const PotentialSpec& v, int n_max) {
  if (n_max < 0) throw InvalidInput("n_max must be non-negative");
  if (static_cast<std::size_t>(n_max) > v.available_order()) {
    throw InvalidInput("potential '" + v.name() + "' supplies V_1..V_" +
                       std::to_string(v.available_order()) + " but f_" + std::to_string(n_max) +
                       " needs V_" + std::to_string(n_max));
  }
}

}  // namespace

RiccatiSeries<BigReal> numeric_series(const PotentialSpec& v, int s, const BigReal& energy,
                                      unsigned digits10) {
  require_parity(s);
  require_precision(digits10);
  require_numeric_potential(v);
  PrecisionScope scope(digits10);
  BigReal f0 = with_precision(energy, digits10) / BigReal(2 * s + 1);
  return RiccatiSeries<BigReal>(
      s, std::move(f0), v.fingerprint(),
      [v, digits10](std::size_t n) { return to_big(v.coeff(n), digits10); }, digits10);
}

RiccatiSeries<DualReal> dual_series(const PotentialSpec& v, int s, const BigReal& energy,
                                    const std::optional<std::string>& param, unsigned digits10) {
  require_parity(s);
  require_precision(digits10);
  require_numeric_potential(v);
  if (param) (void)v.sensitivity(*param);  // validates the parameter
  PrecisionScope scope(digits10);
  const BigReal denom(2 * s + 1);
  DualReal f0(with_precision(energy, digits10) / denom, BigReal(1) / denom, BigReal(0));
  return RiccatiSeries<DualReal>(
      s, std::move(f0), v.fingerprint(),
      [v, param, digits10](std::size_t n) {
        PrecisionScope inner(digits10);
        BigReal dp = param ? to_big(v.dcoeff(*param, n), digits10) : BigReal(0);
        return DualReal(to_big(v.coeff(n), digits10), BigReal(0), std::move(dp));
      },
      digits10);
}

RiccatiSeries<RationalPoly> symbolic_series(const PotentialSpec& v, int s) {
  require_parity(s);
  if (v.v0() != 0) {
    throw InvalidInput("potential '" + v.name() +
                       "' has a nonzero constant term; apply shift_constant first");
  }
  RationalPoly f0 = RationalPoly::monomial(1, ParamPoly(Rational(1, 2 * s + 1)));
  return RiccatiSeries<RationalPoly>(s, std::move(f0), v.fingerprint(), [v](std::size_t n) {
    return RationalPoly(v.symbolic_coeff(n));
  });
}

CoeffSequence<BigReal> coeffs_numeric(const PotentialSpec& v, int s, const BigReal& energy,
                                      int n_max, unsigned digits10) {
  require_order(v, n_max);
  auto series = numeric_series(v, s, energy, digits10);
  return series.extend(n_max);
}

CoeffSequence<DualReal> coeffs_dual(const PotentialSpec& v, int s, const BigReal& energy,
                                    const std::optional<std::string>& param, int n_max,
                                    unsigned digits10) {
  require_order(v, n_max);
  auto series = dual_series(v, s, energy, param, digits10);
  return series.extend(n_max);
}

CoeffSequence<RationalPoly> coeffs_symbolic(const PotentialSpec& v, int s, int n_max) {
  require_order(v, n_max);
  auto series = symbolic_series(v, s);
  return series.extend(n_max);
}

}  // namespace rpm
