#include "rpm/wavefunction.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace rpm {

namespace {

BigReal horner(const std::vector<BigReal>& c, const BigReal& z) {
  BigReal acc = BigReal::from_bits(z.bits());
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

BigReal horner_derivative(const std::vector<BigReal>& c, const BigReal& z) {
  BigReal acc = BigReal::from_bits(z.bits());
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + c[k] * static_cast<long>(k);
  return acc;
}

BigReal pow10(int k) { return pow(BigReal(10), k); }

}  // namespace

BigReal PadeApproximant::numerator(const BigReal& z) const { return horner(a, z); }
BigReal PadeApproximant::denominator(const BigReal& z) const { return horner(b, z); }

BigReal PadeApproximant::value(const BigReal& z) const { return numerator(z) / denominator(z); }

BigReal PadeApproximant::derivative(const BigReal& z) const {
  const BigReal den = denominator(z);
  return (horner_derivative(a, z) * den - numerator(z) * horner_derivative(b, z)) / (den * den);
}

BigReal PadeApproximant::pole_free_radius() const {
  if (!poles.empty()) return poles.front();
  PrecisionScope scope(digits10);
  BigReal inf;
  mpfr_set_inf(inf.data(), 1);
  return inf;
}

namespace {

std::vector<BigReal> find_poles(const PadeApproximant& p, double limit) {
  std::vector<BigReal> out;
  if (p.N == 0 || limit <= 0) return out;
  PrecisionScope scope(p.digits10);
  constexpr int kSamples = 4000;
  const BigReal h = BigReal(limit) / kSamples;
  BigReal prev_x(0);
  BigReal prev_b = p.denominator(BigReal(0));
  for (int i = 1; i <= kSamples; ++i) {
    const BigReal x = h * i;
    const BigReal bx = p.denominator(x * x);
    if (bx == 0) {
      out.push_back(x);
    } else if (bx.sign() != prev_b.sign() && prev_b != 0) {
      BigReal lo = prev_x;
      BigReal hi = x;
      const int sign_lo = prev_b.sign();
      for (int k = 0; k < static_cast<int>(3.33 * p.digits10) + 8; ++k) {
        const BigReal mid = (lo + hi) / 2;
        const BigReal bm = p.denominator(mid * mid);
        if (bm == 0) {
          lo = hi = mid;
          break;
        }
        (bm.sign() == sign_lo ? lo : hi) = mid;
      }
      out.push_back((lo + hi) / 2);
    }
    prev_x = x;
    prev_b = bx;
  }
  return out;
}

}  // namespace

PadeApproximant pade_from_coeffs(const CoeffSequence<BigReal>& c, int M, int N,
                                 unsigned digits10, double pole_search_limit) {
  require_precision(digits10);
  if (N < 0 || M < N) {
    throw InvalidInput("Pade [M/N] requires M >= N >= 0, got [" + std::to_string(M) + "/" +
                       std::to_string(N) + "]");
  }
  if (c.n_max() < M + N + 1) {
    throw InvalidInput("Pade [" + std::to_string(M) + "/" + std::to_string(N) + "] needs f_" +
                       std::to_string(M + N + 1) + ", sequence stops at f_" +
                       std::to_string(c.n_max()));
  }
  PrecisionScope scope(digits10);
  PadeApproximant p;
  p.M = M;
  p.N = N;
  p.digits10 = digits10;
  p.pole_search_limit = pole_search_limit;
  const auto f = [&](int k) { return c.f[static_cast<std::size_t>(k)].rounded(digits10); };

  // Rows k = M+1..M+N: sum_{i=1}^{N} f_{k-i} b_i = -f_k.
  const auto n = static_cast<std::size_t>(N);
  std::vector<std::vector<BigReal>> m(n, std::vector<BigReal>(n + 1));
  BigReal largest(0);
  for (std::size_t r = 0; r < n; ++r) {
    const int k = M + 1 + static_cast<int>(r);
    for (std::size_t i = 1; i <= n; ++i) {
      m[r][i - 1] = f(k - static_cast<int>(i));
      largest = std::max(largest, abs(m[r][i - 1]));
    }
    m[r][n] = -f(k);
  }
  const BigReal tiny = largest * pow10(10 - static_cast<int>(digits10));
  std::vector<int> pivot_row(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < n; ++r) {
      if (abs(m[r][col]) > abs(m[best][col])) best = r;
    }
    if (abs(m[best][col]) <= tiny) {
      p.rank_deficient = true;
      continue;
    }
    std::swap(m[best], m[row]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const BigReal factor = m[r][col] / m[row][col];
      for (std::size_t j = col; j <= n; ++j) m[r][j] -= factor * m[row][j];
    }
    pivot_row[col] = static_cast<int>(row);
    ++row;
  }
  if (row < n) p.rank_deficient = true;
  p.b.assign(n + 1, BigReal(0));
  p.b[0] = BigReal(1);
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_row[col] < 0) continue;
    const auto& r = m[static_cast<std::size_t>(pivot_row[col])];
    p.b[col + 1] = r[n] / r[col];
  }
  for (const auto& x : p.b) {
    if (!std::isfinite(x.to_double())) throw ConvergenceError("Pade system has no stable solution");
  }
  p.a.assign(static_cast<std::size_t>(M) + 1, BigReal(0));
  for (int k = 0; k <= M; ++k) {
    BigReal acc(0);
    for (int i = 0; i <= std::min(k, N); ++i) acc += p.b[static_cast<std::size_t>(i)] * f(k - i);
    p.a[static_cast<std::size_t>(k)] = acc;
  }
  p.poles = find_poles(p, pole_search_limit);
  return p;
}

PadeApproximant pade_for_energy(const PotentialSpec& v, int s, const BigReal& energy, int M,
                                int N, unsigned digits10, double pole_search_limit) {
  auto [shifted, shift] = shift_constant(v);
  PrecisionScope scope(digits10);
  const BigReal e = energy.rounded(digits10) - to_big(shift, digits10);
  const auto c = coeffs_numeric(shifted, s, e, M + N + 1, digits10);
  return pade_from_coeffs(c, M, N, digits10, pole_search_limit);
}

std::vector<BigReal> pade_taylor(const PadeApproximant& p, int order) {
  PrecisionScope scope(p.digits10);
  // c = a / b by series division, b_0 = 1.
  std::vector<BigReal> c(static_cast<std::size_t>(order) + 1, BigReal(0));
  for (int k = 0; k <= order; ++k) {
    BigReal acc = k <= p.M ? p.a[static_cast<std::size_t>(k)] : BigReal(0);
    for (int i = 1; i <= std::min(k, p.N); ++i) {
      acc -= p.b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
    }
    c[static_cast<std::size_t>(k)] = acc;
  }
  return c;
}

namespace {

struct GaussRule {
  std::vector<BigReal> nodes;    // on [-1, 1]
  std::vector<BigReal> weights;
};

constexpr int kGaussPoints = 20;

const GaussRule& gauss_rule(unsigned digits10) {
  thread_local std::map<unsigned, GaussRule> cache;
  auto it = cache.find(digits10);
  if (it != cache.end()) return it->second;
  PrecisionScope scope(digits10 + 10);
  GaussRule rule;
  const int n = kGaussPoints;
  const BigReal eps = pow10(-static_cast<int>(digits10) - 5);
  for (int i = 1; i <= n; ++i) {
    BigReal x(std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5)));
    BigReal dp;
    for (int iter = 0; iter < 100; ++iter) {
      BigReal p0(1);
      BigReal p1 = x;
      for (int k = 2; k <= n; ++k) {
        BigReal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const BigReal dx = p1 / dp;
      x -= dx;
      if (abs(dx) < eps) break;
    }
    rule.nodes.push_back(x.rounded(digits10));
    rule.weights.push_back((BigReal(2) / ((1 - x * x) * dp * dp)).rounded(digits10));
  }
  return cache.emplace(digits10, std::move(rule)).first->second;
}

BigReal gauss(const PadeApproximant& p, const GaussRule& rule, const BigReal& lo,
              const BigReal& hi) {
  const BigReal mid = (lo + hi) / 2;
  const BigReal half = (hi - lo) / 2;
  BigReal acc(0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * p.value(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

BigReal adaptive(const PadeApproximant& p, const GaussRule& rule, const BigReal& lo,
                 const BigReal& hi, const BigReal& whole, const BigReal& tol, int depth) {
  const BigReal mid = (lo + hi) / 2;
  const BigReal left = gauss(p, rule, lo, mid);
  const BigReal right = gauss(p, rule, mid, hi);
  const BigReal both = left + right;
  if (abs(both - whole) <= tol) return both;
  if (depth >= 50) throw ConvergenceError("quadrature of [M/N](z) did not converge");
  return adaptive(p, rule, lo, mid, left, tol / 2, depth + 1) +
         adaptive(p, rule, mid, hi, right, tol / 2, depth + 1);
}

void require_pole_free(const PadeApproximant& p, const BigReal& ax) {
  if (!p.poles.empty() && ax >= p.poles.front()) {
    throw InvalidInput("x = " + to_decimal(ax, 10) + " lies beyond the pole of [" +
                       std::to_string(p.M) + "/" + std::to_string(p.N) + "] at x = " +
                       to_decimal(p.poles.front(), 10));
  }
  if (p.pole_search_limit > 0 && ax.to_double() > p.pole_search_limit) {
    throw InvalidInput("x = " + to_decimal(ax, 10) + " is outside the pole-checked interval [0, " +
                       std::to_string(p.pole_search_limit) + "]");
  }
}

}  // namespace

BigReal log_integral(const PadeApproximant& p, const BigReal& x) {
  PrecisionScope scope(p.digits10);
  const BigReal ax = abs(x.rounded(p.digits10));
  require_pole_free(p, ax);
  if (ax == 0) return BigReal(0);
  const BigReal Z = ax * ax;
  const GaussRule& rule = gauss_rule(p.digits10);
  const BigReal whole = gauss(p, rule, BigReal(0), Z);
  const BigReal tol = pow10(5 - static_cast<int>(p.digits10)) * (abs(whole) > 1 ? abs(whole) : BigReal(1));
  return adaptive(p, rule, BigReal(0), Z, whole, tol, 0) / 2;
}

BigReal eigenfunction_eval(const PadeApproximant& p, int s, const BigReal& x) {
  require_parity(s);
  PrecisionScope scope(p.digits10);
  const BigReal e = exp(-log_integral(p, x));
  return s == 0 ? e : x.rounded(p.digits10) * e;
}

std::vector<ResidualPoint> residual_profile(const PadeApproximant& p, int s, const BigReal& energy,
                                            const PotentialSpec& v,
                                            const std::vector<BigReal>& x_grid) {
  require_parity(s);
  PrecisionScope scope(p.digits10);
  std::vector<ResidualPoint> out;
  for (const auto& x0 : x_grid) {
    const BigReal x = x0.rounded(p.digits10);
    const BigReal psi = eigenfunction_eval(p, s, x);
    const BigReal z = x * x;
    const BigReal r = p.value(z);
    const BigReal f = x * r;
    const BigReal df = r + 2 * z * p.derivative(z);
    const BigReal ratio = f * f - df - 2 * s * r;  // psi''/psi
    const BigReal local = ratio + energy - v.evaluate(x, p.digits10);
    const BigReal norm = abs(psi) > 1 ? abs(psi) : BigReal(1);
    out.push_back({x, abs(psi) * abs(local) / norm});
  }
  return out;
}

}  // namespace rpm
