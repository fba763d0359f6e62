#pragma once

// Truncated power-series arithmetic over the rationals.

#include "rpm/numeric.hpp"

#include <span>
#include <vector>

namespace rpm {

using RationalSeries = std::vector<Rational>;

/// r with a·r = 1 + O(z^{order+1}). Requires a[0] != 0.
RationalSeries series_reciprocal(std::span<const Rational> a, int order);

/// Cauchy product truncated after z^order.
RationalSeries series_product(std::span<const Rational> a, std::span<const Rational> b,
                              int order);

/// Coefficients of x^{2k}, k = 0..order, of cosh(x)^2 = (1 + cosh 2x)/2.
RationalSeries cosh_squared_series(int order);

}  // namespace rpm
