#include "rpm/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace rpm {

void HankelSpec::validate() const {
  if (D < 2) throw InvalidInput("Hankel dimension D must be >= 2, got " + std::to_string(D));
  if (d < 0) throw InvalidInput("Hankel shift d must be >= 0, got " + std::to_string(d));
  require_parity(s);
}

unsigned default_digits(int D) { return static_cast<unsigned>(std::max(40, 4 * D + 20)); }

unsigned precision_cap() {
  if (const char* env = std::getenv("RPM_PRECISION_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= static_cast<long>(kMinDigits)) {
      return static_cast<unsigned>(v);
    }
    throw InvalidInput("RPM_PRECISION_CAP must be an integer >= " + std::to_string(kMinDigits));
  }
  return 3000;
}

unsigned escalate_digits(unsigned digits10, unsigned cap) {
  return std::min(cap, digits10 + std::max(1u, digits10 / 2));
}

BigReal det_numeric(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                    unsigned digits10) {
  spec.validate();
  const auto c = coeffs_numeric(v, spec.s, energy, spec.max_index(), digits10);
  PrecisionScope scope(digits10);
  return determinant(hankel_matrix(c, spec));
}

DualReal det_dual(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                  const std::optional<std::string>& param, unsigned digits10) {
  spec.validate();
  const auto c = coeffs_dual(v, spec.s, energy, param, spec.max_index(), digits10);
  PrecisionScope scope(digits10);
  return determinant(hankel_matrix(c, spec));
}

namespace {

int agreement_digits(const BigReal& lo, const BigReal& hi, unsigned digits10) {
  if (hi == 0 && lo == 0) return static_cast<int>(digits10);
  if (hi == 0) return 0;
  PrecisionScope scope(digits10 + 20);
  const BigReal rel = abs((lo - hi) / hi);
  if (rel == 0) return static_cast<int>(digits10);
  const double digits = -log10_abs(rel);
  return std::clamp(static_cast<int>(std::floor(digits)), 0, static_cast<int>(digits10));
}

}  // namespace

GuardedDet det_guarded(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                       unsigned digits10, int required_digits, unsigned guard_digits) {
  const BigReal lo = det_numeric(v, energy, spec, digits10);
  const BigReal hi = det_numeric(v, energy, spec, digits10 + guard_digits);
  GuardedDet out{with_precision(hi, digits10), agreement_digits(lo, hi, digits10), digits10};
  if (out.certified_digits < required_digits) {
    throw PrecisionError("Hankel determinant D=" + std::to_string(spec.D) + ", d=" +
                         std::to_string(spec.d) + " certified to " +
                         std::to_string(out.certified_digits) + " digits at P=" +
                         std::to_string(digits10) + ", " + std::to_string(required_digits) +
                         " requested");
  }
  return out;
}

GuardedDet det_escalating(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                          unsigned digits10, int required_digits, unsigned cap) {
  unsigned p = std::max(digits10, kMinDigits);
  while (true) {
    try {
      return det_guarded(v, energy, spec, p, required_digits);
    } catch (const PrecisionError&) {
      if (p >= cap) throw;
      p = escalate_digits(p, cap);
    }
  }
}

RationalPoly bareiss_determinant(Matrix<RationalPoly> m, const SymbolicLimits& limits) {
  const std::size_t n = m.rows();
  if (n == 0) return RationalPoly(ParamPoly(Rational(1)));
  bool negate = false;
  RationalPoly prev(ParamPoly(Rational(1)));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m(r, k).is_zero()) ++r;
      if (r == n) return RationalPoly();
      m.swap_rows(k, r);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        RationalPoly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = exact_quotient(num, prev);
        if (term_count(m(i, j)) > limits.max_terms) {
          throw PrecisionError("symbolic determinant exceeded " +
                               std::to_string(limits.max_terms) + " terms");
        }
      }
      m(i, k) = RationalPoly();
    }
    prev = m(k, k);
  }
  RationalPoly det = m(n - 1, n - 1);
  return negate ? -det : det;
}

RationalPoly det_symbolic(const PotentialSpec& v, const HankelSpec& spec,
                          const SymbolicLimits& limits) {
  spec.validate();
  const auto c = coeffs_symbolic(v, spec.s, spec.max_index());
  return bareiss_determinant(hankel_matrix(c, spec), limits);
}

}  // namespace rpm
