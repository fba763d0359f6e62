#pragma once

// Hankel determinants H_D^d(E) = det[f_{d+1+i+j}]_{i,j=0..D-1} built from the
// Riccati coefficients. Numeric evaluation uses elimination with partial
// pivoting; the symbolic path uses fraction-free (Bareiss) elimination over
// Q[p][E].

#include "rpm/dual.hpp"
#include "rpm/numeric.hpp"
#include "rpm/poly.hpp"
#include "rpm/potential.hpp"
#include "rpm/riccati.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rpm {

struct HankelSpec {
  int D = 2;  // dimension, N + 1
  int d = 0;  // shift, M - N
  int s = 0;  // parity index

  void validate() const;
  /// Largest coefficient index used: d + 2D - 1.
  int max_index() const { return d + 2 * D - 1; }
};

template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template <class T>
Matrix<T> hankel_matrix(const CoeffSequence<T>& c, const HankelSpec& spec) {
  spec.validate();
  if (c.n_max() < spec.max_index()) {
    throw InvalidInput("Hankel matrix D=" + std::to_string(spec.D) + ", d=" +
                       std::to_string(spec.d) + " needs f_" + std::to_string(spec.max_index()) +
                       ", sequence stops at f_" + std::to_string(c.n_max()));
  }
  const auto n = static_cast<std::size_t>(spec.D);
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c.f[static_cast<std::size_t>(spec.d) + 1 + i + j];
  }
  return m;
}

/// Determinant by Gaussian elimination with partial pivoting on the value
/// magnitude. Dual tangents propagate through every operation.
template <class T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.rows();
  T det(BigReal(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    BigReal best = magnitude(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal mag = magnitude(m(i, k));
      if (mag > best) {
        best = std::move(mag);
        piv = i;
      }
    }
    if (best == 0 && k + 1 < n) {
      // Exactly singular in value with more than one column left: both the
      // determinant and its first derivative vanish.
      return T(BigReal(0));
    }
    if (piv != k) {
      m.swap_rows(piv, k);
      det = -det;
    }
    const T pivot = m(k, k);
    det *= pivot;
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = m(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return det;
}

/// Decimal digits used by default for a D-dimensional determinant.
unsigned default_digits(int D);
/// Upper bound on escalated precision: RPM_PRECISION_CAP or 3000.
unsigned precision_cap();
/// Next precision after a failed guard: +50%, never above the cap.
unsigned escalate_digits(unsigned digits10, unsigned cap);

BigReal det_numeric(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                    unsigned digits10);

/// Determinant with tangents: dE always, dP when `param` is set.
DualReal det_dual(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                  const std::optional<std::string>& param, unsigned digits10);

struct GuardedDet {
  BigReal value;
  int certified_digits = 0;  // agreement between P and P + guard evaluations
  unsigned digits_used = 0;
};

/// Evaluates at P and P + guard digits and certifies their agreement. Throws
/// PrecisionError when fewer than `required_digits` agree.
GuardedDet det_guarded(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                       unsigned digits10, int required_digits = 1, unsigned guard_digits = 20);

/// Like det_guarded, but escalates P by 50% (up to `cap`) until the guard
/// certifies `required_digits`.
GuardedDet det_escalating(const PotentialSpec& v, const BigReal& energy, const HankelSpec& spec,
                          unsigned digits10, int required_digits, unsigned cap);

struct SymbolicLimits {
  std::size_t max_terms = 200000;  // nonzero rational terms in any entry
};

/// Exact determinant as a polynomial in E (and the symbolic parameter).
RationalPoly det_symbolic(const PotentialSpec& v, const HankelSpec& spec,
                          const SymbolicLimits& limits = {});

/// Fraction-free determinant of a polynomial matrix.
RationalPoly bareiss_determinant(Matrix<RationalPoly> m, const SymbolicLimits& limits = {});

}  // namespace rpm
