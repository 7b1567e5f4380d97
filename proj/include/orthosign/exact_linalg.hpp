#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orthosign/matrix.hpp"
#include "orthosign/scalar.hpp"

namespace orthosign {

/// Reduced row echelon form over an exact field. Returns the pivot columns.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    T inv = T(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      T f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Rank by fraction-free (Bareiss) elimination on the row-wise
/// denominator-cleared integer matrix.
inline std::size_t rank_exact(const ExactMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Integer> w(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return w[i * n + j]; };
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && at(p, c) == 0) ++p;
    if (p == m) continue;
    if (p != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(at(p, j), at(r, j));
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        at(i, j) = at(r, c) * at(i, j) - at(i, c) * at(r, j);
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

/// Rank over an exact field via RREF (used for Q(sqrt 2) matrices).
template <class T>
std::size_t rank_field(Matrix<T> a) {
  return rref_in_place(a).size();
}

/// Basis of {v : A v = 0}, one column vector per free variable.
template <class T>
std::vector<Matrix<T>> nullspace_exact(const Matrix<T>& a) {
  Matrix<T> r = a;
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Matrix<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Matrix<T> v(a.cols(), 1);
    v(f, 0) = T(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v(pivots[k], 0) = -r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
Matrix<T> gram(const Matrix<T>& a) {
  return a * a.transpose();
}

template <class T>
bool is_diagonal(const Matrix<T>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && sign_of(a(i, j)) != 0) return false;
  return true;
}

/// Rows pairwise orthogonal (A Aᵀ diagonal), exactly.
template <class T>
bool has_orthogonal_rows(const Matrix<T>& a) {
  return is_diagonal(gram(a));
}

/// Rational u with u*u >= q and u - sqrt(q) <= 2^-bits * max(1, sqrt(q)).
/// Exact when q is the square of a rational.
inline Rational rational_sqrt_upper_bound(const Rational& q, unsigned bits) {
  if (sgn(q) < 0) throw std::domain_error("rational_sqrt_upper_bound: negative input");
  if (sgn(q) == 0) return Rational(0);
  if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    Rational r(a, b);
    r.canonicalize();
    return r;
  }
  // c = ceil(sqrt(q * 4^bits)), u = c / 2^bits
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * bits);
  Integer num = q.get_num() * scale;
  const Integer& den = q.get_den();
  Integer floor_q = num / den;
  Integer c;
  mpz_sqrt(c.get_mpz_t(), floor_q.get_mpz_t());
  while (c * c * den < num) ++c;
  Integer two_bits = 1;
  mpz_mul_2exp(two_bits.get_mpz_t(), two_bits.get_mpz_t(), bits);
  Rational u(c, two_bits);
  u.canonicalize();
  return u;
}

/// Rational lower bound l with l*l <= q (companion of the upper bound).
inline Rational rational_sqrt_lower_bound(const Rational& q, unsigned bits) {
  if (sgn(q) < 0) throw std::domain_error("rational_sqrt_lower_bound: negative input");
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * bits);
  Integer floor_q = (q.get_num() * scale) / q.get_den();
  Integer c;
  mpz_sqrt(c.get_mpz_t(), floor_q.get_mpz_t());
  Integer two_bits = 1;
  mpz_mul_2exp(two_bits.get_mpz_t(), two_bits.get_mpz_t(), bits);
  Rational l(c, two_bits);
  l.canonicalize();
  return l;
}

/// Numerical rank by column-pivoted elimination. Heuristic use only.
/// tau < 0 selects 1e-9 * max|a_ij|.
inline std::size_t float_rank(FloatMatrix a, double tau = -1.0) {
  double amax = 0;
  for (double x : a.data()) {
    if (!std::isfinite(x)) throw std::domain_error("float_rank: non-finite entry");
    amax = std::max(amax, std::abs(x));
  }
  if (tau < 0) tau = 1e-9 * amax;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  std::vector<bool> used(n, false);
  while (r < std::min(m, n)) {
    // full pivoting over remaining rows/columns
    double best = 0;
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = r; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j] && std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (best <= tau) break;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(pi, j), a(r, j));
    used[pj] = true;
    for (std::size_t i = r + 1; i < m; ++i) {
      double f = a(i, pj) / a(r, pj);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(r, j);
      a(i, pj) = 0;
    }
    ++r;
  }
  return r;
}

}  // namespace orthosign
