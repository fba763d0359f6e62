#include "rpm/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>

namespace rpm {

namespace {

thread_local unsigned g_default_digits = 40;

mpfr_prec_t default_bits() { return digits_to_bits(g_default_digits); }

}  // namespace

mpfr_prec_t digits_to_bits(unsigned digits10) {
  return static_cast<mpfr_prec_t>(std::ceil(digits10 * 3.3219280948873623)) + 8;
}

unsigned default_digits10() { return g_default_digits; }

BigReal::BigReal(mpfr_prec_t bits, int /*tag*/) { mpfr_init2(value_, bits); }

BigReal::BigReal() : BigReal(default_bits(), 0) { mpfr_set_zero(value_, 1); }
BigReal::BigReal(int v) : BigReal(default_bits(), 0) { mpfr_set_si(value_, v, MPFR_RNDN); }
BigReal::BigReal(long v) : BigReal(default_bits(), 0) { mpfr_set_si(value_, v, MPFR_RNDN); }
BigReal::BigReal(double v) : BigReal(default_bits(), 0) { mpfr_set_d(value_, v, MPFR_RNDN); }

BigReal::BigReal(const BigReal& o) : BigReal(o.bits(), 0) { mpfr_set(value_, o.value_, MPFR_RNDN); }

BigReal::BigReal(BigReal&& o) noexcept : BigReal(o.bits(), 0) { mpfr_swap(value_, o.value_); }

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(value_, o.bits());
    mpfr_set(value_, o.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(value_, o.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::from_bits(mpfr_prec_t bits) {
  BigReal out(bits, 0);
  mpfr_set_zero(out.value_, 1);
  return out;
}

BigReal BigReal::rounded(unsigned digits10) const {
  BigReal out(digits_to_bits(digits10), 0);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal& BigReal::operator+=(const BigReal& o) { return *this = *this + o; }
BigReal& BigReal::operator-=(const BigReal& o) { return *this = *this - o; }
BigReal& BigReal::operator*=(const BigReal& o) { return *this = *this * o; }
BigReal& BigReal::operator/=(const BigReal& o) { return *this = *this / o; }

BigReal& BigReal::operator*=(long k) {
  mpfr_mul_si(value_, value_, k, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long k) {
  mpfr_div_si(value_, value_, k, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(bits(), 0);
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

namespace {

template <class Op>
BigReal binary(const BigReal& a, const BigReal& b, Op op) {
  BigReal out = BigReal::from_bits(std::max(a.bits(), b.bits()));
  op(out.data(), a.data(), b.data(), MPFR_RNDN);
  return out;
}

template <class Op>
BigReal unary(const BigReal& a, Op op) {
  BigReal out = BigReal::from_bits(a.bits());
  op(out.data(), a.data(), MPFR_RNDN);
  return out;
}

}  // namespace

BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }
BigReal operator/(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_div); }

BigReal operator*(const BigReal& a, long k) {
  BigReal out = a;
  return out *= k;
}

BigReal operator/(const BigReal& a, long k) {
  BigReal out = a;
  return out /= k;
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }

BigReal pow(const BigReal& x, long k) {
  BigReal out = BigReal::from_bits(x.bits());
  mpfr_pow_si(out.data(), x.data(), k, MPFR_RNDN);
  return out;
}

PrecisionScope::PrecisionScope(unsigned digits10) : digits_(digits10), saved_(g_default_digits) {
  g_default_digits = digits10;
}

PrecisionScope::~PrecisionScope() { g_default_digits = saved_; }

void require_precision(unsigned digits10) {
  if (digits10 < kMinDigits) {
    throw InvalidInput("working precision must be at least " + std::to_string(kMinDigits) +
                       " digits, got " + std::to_string(digits10));
  }
}

BigReal to_big(const Rational& q, unsigned digits10) {
  BigReal out = BigReal::from_bits(digits_to_bits(digits10));
  mpfr_set_q(out.data(), q.backend().data(), MPFR_RNDN);
  return out;
}

BigReal to_big(std::string_view decimal, unsigned digits10) {
  BigReal out = BigReal::from_bits(digits_to_bits(digits10));
  const std::string text(decimal);
  char* end = nullptr;
  if (!text.empty()) mpfr_strtofr(out.data(), text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end == text.c_str() || *end != '\0') {
    throw InvalidInput("not a decimal number: '" + text + "'");
  }
  return out;
}

BigReal with_precision(const BigReal& x, unsigned digits10) {
  return x.rounded(digits10);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) {
    throw InvalidInput("not a rational literal: '" + std::string(whole) +
                       "' (use p/q or an integer)");
  }
  BigInt v{std::string(body)};
  if (negative) v = BigInt(0) - v;
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty rational literal");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  BigInt num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
  if (!all_digits(den_text)) {
    throw InvalidInput("not a rational literal: '" + std::string(text) + "'");
  }
  BigInt den(std::string{den_text});
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_decimal(const BigReal& x, int significant) {
  if (significant < 1) significant = 1;
  if (x == 0) {
    return significant == 1 ? std::string("0") : "0." + std::string(significant - 1, '0');
  }
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(significant), x.data(),
                   MPFR_RNDN),
      [](char* p) { mpfr_free_str(p); });
  std::string digits(raw.get());
  std::string sign;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // value = 0.<digits> * 10^exp10
  std::string out;
  if (exp10 <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp10), '0') + digits;
  } else if (static_cast<size_t>(exp10) >= digits.size()) {
    out = digits + std::string(static_cast<size_t>(exp10) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<size_t>(exp10)) + "." + digits.substr(exp10);
  }
  return sign + out;
}

std::string to_scientific(const BigReal& x, int significant) {
  if (significant < 1) significant = 1;
  if (x == 0) return "0";
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(significant), x.data(), MPFR_RNDN),
      [](char* p) { mpfr_free_str(p); });
  std::string digits(raw.get());
  std::string sign;
  if (digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  std::string mantissa = digits.substr(0, 1);
  if (digits.size() > 1) mantissa += "." + digits.substr(1);
  return sign + mantissa + "e" + std::to_string(static_cast<long>(exp10) - 1);
}

double log10_abs(const BigReal& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long e2 = 0;
  double m = mpfr_get_d_2exp(&e2, x.data(), MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e2) * std::log10(2.0);
}

}  // namespace rpm
