#include "rpm/series.hpp"

#include <algorithm>

namespace rpm {

RationalSeries series_reciprocal(std::span<const Rational> a, int order) {
  if (a.empty() || a[0] == 0) throw InvalidInput("series reciprocal needs a nonzero constant term");
  if (order < 0) throw InvalidInput("series order must be non-negative");
  RationalSeries r(static_cast<std::size_t>(order) + 1);
  const Rational inv0 = Rational(1) / a[0];
  r[0] = inv0;
  for (std::size_t n = 1; n < r.size(); ++n) {
    Rational acc(0);
    for (std::size_t k = 1; k <= std::min(n, a.size() - 1); ++k) acc += a[k] * r[n - k];
    r[n] = -acc * inv0;
  }
  return r;
}

RationalSeries series_product(std::span<const Rational> a, std::span<const Rational> b,
                              int order) {
  RationalSeries out(static_cast<std::size_t>(std::max(order, 0)) + 1);
  for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

RationalSeries cosh_squared_series(int order) {
  if (order < 0) throw InvalidInput("series order must be non-negative");
  RationalSeries c(static_cast<std::size_t>(order) + 1);
  c[0] = 1;
  // 2^{2k-1}/(2k)!, built incrementally: ratio between k and k-1 is 4/((2k-1)(2k)).
  Rational term(1, 2);  // k = 0 value of 2^{-1}/0!
  for (std::size_t k = 1; k < c.size(); ++k) {
    term *= Rational(4, static_cast<long>((2 * k - 1) * (2 * k)));
    c[k] = term;
  }
  return c;
}

}  // namespace rpm
