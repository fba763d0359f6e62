#pragma once

// Scalar types shared by every module: exact rationals for potentials and
// symbolic work, variable-precision MPFR reals for numeric evaluation.

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rpm {

namespace bmp = boost::multiprecision;

using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;
using BigInt = bmp::number<bmp::gmp_int, bmp::et_off>;

/// Bits needed for `digits10` decimal digits.
mpfr_prec_t digits_to_bits(unsigned digits10);
/// Thread-local default precision in decimal digits (see PrecisionScope).
unsigned default_digits10();

/// MPFR real with per-value precision. Results of binary operations carry
/// the larger operand precision; values built from integers, rationals or
/// strings take the thread-local default set by PrecisionScope.
class BigReal {
 public:
  BigReal();
  BigReal(int v);     // NOLINT: integer literals lift implicitly
  BigReal(long v);    // NOLINT
  BigReal(double v);  // NOLINT
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  static BigReal from_bits(mpfr_prec_t bits);

  mpfr_ptr data() { return value_; }
  mpfr_srcptr data() const { return value_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
  /// Copy rounded to a new precision.
  BigReal rounded(unsigned digits10) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator*=(long k);
  BigReal& operator/=(long k);
  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, long k);
  friend BigReal operator*(long k, const BigReal& a) { return a * k; }
  friend BigReal operator/(const BigReal& a, long k);
  friend BigReal operator*(const BigReal& a, int k) { return a * static_cast<long>(k); }
  friend BigReal operator*(int k, const BigReal& a) { return a * static_cast<long>(k); }
  friend BigReal operator/(const BigReal& a, int k) { return a / static_cast<long>(k); }

  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, int b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, int b) {
    const int c = mpfr_cmp_si(a.value_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  explicit BigReal(mpfr_prec_t bits, int /*tag*/);
  mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal pow(const BigReal& x, long k);

/// Smallest working precision (decimal digits) accepted by numeric routines.
inline constexpr unsigned kMinDigits = 20;

/// Malformed or out-of-contract input (bad parameters, unparsable strings).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative procedure failed to converge or lost its continuation.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precision guard could not certify the requested number of digits.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets the thread-local default MPFR precision for its lifetime.
///
/// Every numeric entry point takes its precision as an explicit argument and
/// opens one of these; values created inside the scope carry that precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned digits() const { return digits_; }

 private:
  unsigned digits_;
  unsigned saved_;
};

/// Throws InvalidInput when `digits10` is below kMinDigits.
void require_precision(unsigned digits10);

BigReal to_big(const Rational& q, unsigned digits10);
BigReal to_big(std::string_view decimal, unsigned digits10);
BigReal with_precision(const BigReal& x, unsigned digits10);

/// Parses `p/q` or an integer. Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Rounds to `significant` digits (round-to-nearest) and prints in positional
/// notation with trailing zeros kept, e.g. 0.65765300518071512306.
std::string to_decimal(const BigReal& x, int significant);

/// Scientific notation with `significant` digits, e.g. 2.37e-112.
std::string to_scientific(const BigReal& x, int significant);

/// log10 |x| as a double; -inf for zero.
double log10_abs(const BigReal& x);

}  // namespace rpm
