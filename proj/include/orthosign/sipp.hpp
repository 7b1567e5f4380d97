#pragma once

// The strong inner product property: exact and floating-point decision
// procedures, witnesses, and structural sufficient conditions for patterns
// that require o-SIPP.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orthosign/exact_linalg.hpp"
#include "orthosign/matrix.hpp"
#include "orthosign/pattern.hpp"

namespace orthosign {

/// Index of unknown x_pq (p <= q) in row-major upper-triangle order.
inline std::size_t sym_index(std::size_t m, std::size_t p, std::size_t q) {
  if (p > q) std::swap(p, q);
  return p * m - p * (p - 1) / 2 + (q - p);
}

/// Linear system whose solutions are the symmetric X with (XA)∘A = O.
template <class T>
struct SippSystem {
  std::size_t m = 0;
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // one per constraint row
  Matrix<T> constraints;

  std::size_t unknowns() const { return m * (m + 1) / 2; }
};

template <class T>
SippSystem<T> build_sipp_system(const Matrix<T>& a) {
  SippSystem<T> sys;
  sys.m = a.rows();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sign_of(a(i, j)) != 0) sys.positions.emplace_back(i, j);
  sys.constraints = Matrix<T>(sys.positions.size(), sys.unknowns());
  for (std::size_t r = 0; r < sys.positions.size(); ++r) {
    auto [i, j] = sys.positions[r];
    for (std::size_t l = 0; l < sys.m; ++l) sys.constraints(r, sym_index(sys.m, i, l)) += a(l, j);
  }
  return sys;
}

enum class SippMethod { ExactNullspace, FloatRank, StructuralFastPath };

template <class T>
struct SippVerdict {
  bool has_sipp = false;
  std::optional<Matrix<T>> witness;
  SippMethod method = SippMethod::ExactNullspace;
  std::string fast_path;  // name of the structural shortcut, if used
};

/// True iff X is symmetric, nonzero, and (XA)∘A = O, exactly.
template <class T>
bool is_sipp_witness(const Matrix<T>& a, const Matrix<T>& x) {
  if (x.rows() != a.rows() || x.cols() != a.rows()) return false;
  if (!(x == x.transpose()) || x.is_zero_matrix()) return false;
  return hadamard(x * a, a).is_zero_matrix();
}

namespace detail {

inline void require_wide(std::size_t m, std::size_t n, const char* who) {
  if (m > n) throw std::invalid_argument(std::string(who) + ": matrix must be wide (m <= n)");
}

template <class T>
Matrix<T> witness_from_vector(std::size_t m, const Matrix<T>& v) {
  Matrix<T> x(m, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = p; q < m; ++q) x(p, q) = x(q, p) = v(sym_index(m, p, q), 0);
  // scale so the first nonzero entry (row-major) is 1
  for (const T& e : x.data())
    if (sign_of(e) != 0) {
      T inv = T(1) / e;
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) x(p, q) *= inv;
      break;
    }
  return x;
}

}  // namespace detail

struct SippOptions {
  /// Report nowhere-zero full-rank inputs as having the SIPP without solving.
  bool structural_fast_path = false;
};

/// Exact SIPP decision over Rational or QSqrt2 entries.
template <class T>
SippVerdict<T> sipp_check_exact(const Matrix<T>& a, SippOptions opt = {}) {
  detail::require_wide(a.rows(), a.cols(), "sipp_check_exact");
  SippVerdict<T> v;
  if (opt.structural_fast_path) {
    bool nowhere_zero = true;
    for (const T& e : a.data()) nowhere_zero = nowhere_zero && sign_of(e) != 0;
    if (nowhere_zero && rank_field(a) == a.rows()) {
      v.has_sipp = true;
      v.method = SippMethod::StructuralFastPath;
      v.fast_path = "nowhere-zero full rank";
      return v;
    }
  }
  auto sys = build_sipp_system(a);
  if constexpr (std::is_same_v<T, Rational>) {
    if (sys.constraints.rows() >= sys.unknowns() && rank_exact(sys.constraints) == sys.unknowns()) {
      v.has_sipp = true;
      return v;
    }
  }
  auto basis = nullspace_exact(sys.constraints);
  if (basis.empty()) {
    v.has_sipp = true;
    return v;
  }
  v.witness = detail::witness_from_vector(a.rows(), basis.front());
  return v;
}

/// Floating-point SIPP decision by numerical rank. Heuristic use only.
inline SippVerdict<double> sipp_check_float(const FloatMatrix& a, double tau = -1.0) {
  detail::require_wide(a.rows(), a.cols(), "sipp_check_float");
  auto sys = build_sipp_system(a);
  SippVerdict<double> v;
  v.method = SippMethod::FloatRank;
  v.has_sipp = sys.unknowns() == 0 || float_rank(sys.constraints, tau) == sys.unknowns();
  return v;
}

// ---------------------------------------------------------------------------
// Zero counts.

inline bool zero_count_bound_ok(const SignPattern& s) {
  detail::require_wide(s.rows(), s.cols(), "zero_count_bound_ok");
  const std::size_t m = s.rows(), n = s.cols();
  return s.zero_count() <= n * m - m * (m + 1) / 2;
}

template <class T>
bool zero_count_bound_ok(const Matrix<T>& a) {
  return zero_count_bound_ok(sgn_of(a));
}

// ---------------------------------------------------------------------------
// Hollow patterns.

inline bool is_nonzero_hollow(const SignPattern& s) {
  if (!s.is_square()) return false;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if ((s(i, j) == Sign::Zero) != (i == j)) return false;
  return true;
}

/// Signature matrices (as ±1 vectors) with D1 C_S D2 symmetric, if any.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> hollow_signature_symmetric(const SignPattern& s) {
  if (!s.is_square()) throw std::invalid_argument("hollow_signature_symmetric: pattern not square");
  if (!is_nonzero_hollow(s)) throw std::invalid_argument("hollow_signature_symmetric: pattern not nonzero hollow");
  const std::size_t n = s.rows();
  // With e_i = d1_i d2_i the condition reads e_i e_j = c_ij c_ji. The
  // off-diagonal support is complete, so e is forced once e_0 = +1.
  std::vector<int> e(n, 1);
  for (std::size_t j = 1; j < n; ++j) e[j] = to_int(s(0, j)) * to_int(s(j, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (e[i] * e[j] != to_int(s(i, j)) * to_int(s(j, i))) return std::nullopt;
  return std::pair{e, std::vector<int>(n, 1)};
}

// ---------------------------------------------------------------------------
// Structural sufficient conditions for "requires o-SIPP".

namespace structural {

inline constexpr const char* kStaircase = "staircase";
inline constexpr const char* kZerosInThreeRows = "zeros-in-three-rows";
inline constexpr const char* kFourZeros = "at-most-four-zeros";
inline constexpr const char* kPairColumns = "pair-support-columns";
inline constexpr const char* kHollow = "hollow-not-signature-symmetric";

/// Nonzero exactly on the diagonals j - i <= k (0 <= k <= n-1), or exactly on
/// j - i >= k (1-m <= k <= 0).
inline bool staircase(const SignPattern& s) {
  const long m = static_cast<long>(s.rows()), n = static_cast<long>(s.cols());
  auto fits = [&](long k, bool lower) {
    for (long i = 0; i < m; ++i)
      for (long j = 0; j < n; ++j) {
        bool want = lower ? (j - i <= k) : (j - i >= k);
        if ((s(i, j) != Sign::Zero) != want) return false;
      }
    return true;
  };
  for (long k = 0; k <= n - 1; ++k)
    if (fits(k, true)) return true;
  for (long k = 1 - m; k <= 0; ++k)
    if (fits(k, false)) return true;
  return false;
}

inline bool zeros_in_three_rows(const SignPattern& s) {
  std::size_t rows_with_zero = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto r = s.row(i);
    if (std::find(r.begin(), r.end(), Sign::Zero) != r.end()) ++rows_with_zero;
  }
  return rows_with_zero <= 3 && !has_combinatorially_orthogonal_rows(s);
}

inline bool at_most_four_zeros(const SignPattern& s) {
  return s.zero_count() <= 4 && !has_combinatorially_orthogonal_rows(s) &&
         !has_combinatorially_orthogonal_rows(s.transpose());
}

/// Every row pair {i, k} owns a column whose support is exactly {i, k}.
inline bool pair_support_columns(const SignPattern& s) {
  const std::size_t m = s.rows();
  if (m < 2) return false;
  std::vector<bool> covered(m * m, false);
  for (std::size_t j = 0; j < s.cols(); ++j) {
    std::vector<std::size_t> sup;
    for (std::size_t i = 0; i < m && sup.size() <= 2; ++i)
      if (s(i, j) != Sign::Zero) sup.push_back(i);
    if (sup.size() == 2) covered[sup[0] * m + sup[1]] = true;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = i + 1; k < m; ++k)
      if (!covered[i * m + k]) return false;
  return true;
}

inline bool hollow_not_signature_symmetric(const SignPattern& s) {
  return is_nonzero_hollow(s) && !hollow_signature_symmetric(s);
}

}  // namespace structural

/// First sufficient condition under which every row orthogonal realization of
/// S has the SIPP. nullopt is not a refutation.
inline std::optional<std::string> structural_requires_osipp(const SignPattern& s) {
  detail::require_wide(s.rows(), s.cols(), "structural_requires_osipp");
  if (structural::staircase(s)) return structural::kStaircase;
  if (structural::zeros_in_three_rows(s)) return structural::kZerosInThreeRows;
  if (structural::hollow_not_signature_symmetric(s)) return structural::kHollow;
  if (structural::at_most_four_zeros(s)) return structural::kFourZeros;
  if (structural::pair_support_columns(s)) return structural::kPairColumns;
  return std::nullopt;
}

/// Every matching sufficient condition, in check order.
inline std::vector<std::string> structural_matches(const SignPattern& s) {
  detail::require_wide(s.rows(), s.cols(), "structural_matches");
  std::vector<std::string> out;
  if (structural::staircase(s)) out.emplace_back(structural::kStaircase);
  if (structural::zeros_in_three_rows(s)) out.emplace_back(structural::kZerosInThreeRows);
  if (structural::hollow_not_signature_symmetric(s)) out.emplace_back(structural::kHollow);
  if (structural::at_most_four_zeros(s)) out.emplace_back(structural::kFourZeros);
  if (structural::pair_support_columns(s)) out.emplace_back(structural::kPairColumns);
  return out;
}

/// Nonzero hollow and signature equivalent to a symmetric pattern: if S allows
/// orthogonality, no row orthogonal realization has the SIPP.
inline bool hollow_forbids_osipp(const SignPattern& s) {
  return is_nonzero_hollow(s) && hollow_signature_symmetric(s).has_value();
}

}  // namespace orthosign
