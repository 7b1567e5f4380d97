#pragma once

// Sign and zero-nonzero patterns, signed permutation equivalence, and the
// elementary combinatorial predicates used throughout the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orthosign/error.hpp"
#include "orthosign/matrix.hpp"

namespace orthosign {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

inline Sign sign_from_int(int s) { return s > 0 ? Sign::Plus : (s < 0 ? Sign::Minus : Sign::Zero); }
inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign operator*(Sign a, Sign b) { return sign_from_int(to_int(a) * to_int(b)); }
inline Sign operator-(Sign a) { return sign_from_int(-to_int(a)); }

inline char to_char(Sign s) {
  switch (s) {
    case Sign::Plus: return '+';
    case Sign::Minus: return '-';
    default: return '0';
  }
}

/// Position of a sign in the order used for canonical forms: '+' < '-' < '0'
/// (the ASCII order of the pattern text).
inline int lex_rank(Sign s) {
  switch (s) {
    case Sign::Plus: return 0;
    case Sign::Minus: return 1;
    default: return 2;
  }
}

/// An m x n array over {+, -, 0}.
class SignPattern {
public:
  SignPattern(std::size_t rows, std::size_t cols, Sign fill = Sign::Zero)
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    check_shape();
  }
  SignPattern(std::size_t rows, std::size_t cols, std::vector<Sign> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape();
    if (entries_.size() != rows_ * cols_) throw std::invalid_argument("pattern entries do not match shape");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_wide() const noexcept { return rows_ <= cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Sign operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Sign& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  std::span<const Sign> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  const std::vector<Sign>& entries() const noexcept { return entries_; }

  bool is_nowhere_zero() const {
    return std::none_of(entries_.begin(), entries_.end(), [](Sign s) { return s == Sign::Zero; });
  }
  std::size_t zero_count() const {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), Sign::Zero));
  }

  SignPattern transpose() const {
    SignPattern t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Row-major entry string, e.g. "+-0+".
  std::string entry_string() const {
    std::string s;
    s.reserve(entries_.size());
    for (Sign e : entries_) s.push_back(to_char(e));
    return s;
  }

  SignPattern delete_column(std::size_t j) const {
    if (j >= cols_) throw std::out_of_range("column index out of range");
    if (cols_ == 1) throw std::invalid_argument("cannot delete the only column");
    SignPattern out(rows_, cols_ - 1);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0, d = 0; c < cols_; ++c)
        if (c != j) out(i, d++) = (*this)(i, c);
    return out;
  }

  /// [*this | O] with `extra` zero columns appended.
  SignPattern pad_zero_columns(std::size_t extra) const {
    SignPattern out(rows_, cols_ + extra);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    return out;
  }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

private:
  void check_shape() const {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("pattern must have at least one row and column");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Sign> entries_;
};

/// Lexicographic order on row-major entry strings with '+' < '-' < '0'.
inline bool lex_less(const SignPattern& a, const SignPattern& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  const auto& x = a.entries();
  const auto& y = b.entries();
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != y[k]) return lex_rank(x[k]) < lex_rank(y[k]);
  return false;
}

/// An m x n array over {*, 0}.
class ZnzPattern {
public:
  ZnzPattern(std::size_t rows, std::size_t cols, std::vector<bool> nonzero)
      : rows_(rows), cols_(cols), nonzero_(std::move(nonzero)) {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("pattern must have at least one row and column");
    if (nonzero_.size() != rows_ * cols_) throw std::invalid_argument("pattern entries do not match shape");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool nonzero(std::size_t i, std::size_t j) const { return nonzero_[i * cols_ + j]; }
  bool is_wide() const noexcept { return rows_ <= cols_; }

  std::string entry_string() const {
    std::string s;
    for (bool b : nonzero_) s.push_back(b ? '*' : '0');
    return s;
  }

  friend bool operator==(const ZnzPattern&, const ZnzPattern&) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<bool> nonzero_;
};

inline ZnzPattern znz_of(const SignPattern& s) {
  std::vector<bool> nz;
  nz.reserve(s.entries().size());
  for (Sign e : s.entries()) nz.push_back(e != Sign::Zero);
  return ZnzPattern(s.rows(), s.cols(), std::move(nz));
}

// ---------------------------------------------------------------------------
// Text format: one character per entry, rows as lines.

inline SignPattern parse_pattern(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw parse_error("empty pattern", 1, 1);

  const std::size_t cols = lines.front().size();
  std::vector<Sign> entries;
  entries.reserve(lines.size() * cols);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.empty()) throw parse_error("empty row", i + 1, 1);
    for (std::size_t j = 0; j < line.size(); ++j) {
      switch (line[j]) {
        case '+': entries.push_back(Sign::Plus); break;
        case '-': entries.push_back(Sign::Minus); break;
        case '0': entries.push_back(Sign::Zero); break;
        default:
          throw parse_error(std::string("illegal character '") + line[j] + "'", i + 1, j + 1);
      }
    }
    if (line.size() != cols)
      throw parse_error("ragged row: expected " + std::to_string(cols) + " entries, found " +
                            std::to_string(line.size()),
                        i + 1, std::min(line.size(), cols) + 1);
  }
  return SignPattern(lines.size(), cols, std::move(entries));
}

inline std::string format_pattern(const SignPattern& s) {
  std::string out;
  out.reserve(s.rows() * (s.cols() + 1));
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (i) out.push_back('\n');
    for (Sign e : s.row(i)) out.push_back(to_char(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Patterns of matrices.

template <class T>
SignPattern sgn_of(const Matrix<T>& a) {
  std::vector<Sign> e;
  e.reserve(a.rows() * a.cols());
  for (const T& x : a.data()) {
    if constexpr (std::is_floating_point_v<T>) {
      if (std::isnan(x)) throw std::domain_error("sgn_of: NaN entry");
    }
    e.push_back(sign_from_int(sign_of(x)));
  }
  return SignPattern(a.rows(), a.cols(), std::move(e));
}

template <class T>
ZnzPattern znz_of(const Matrix<T>& a) {
  return znz_of(sgn_of(a));
}

/// The unique (1,-1,0)-matrix realizing `s`.
inline ExactMatrix unit_realization(const SignPattern& s) {
  ExactMatrix c(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) c(i, j) = to_int(s(i, j));
  return c;
}

/// True iff `r` agrees with `s` on every nonzero entry of `s`.
inline bool is_superpattern(const SignPattern& r, const SignPattern& s) {
  if (r.rows() != s.rows() || r.cols() != s.cols()) throw std::invalid_argument("is_superpattern: shape mismatch");
  for (std::size_t k = 0; k < s.entries().size(); ++k)
    if (s.entries()[k] != Sign::Zero && r.entries()[k] != s.entries()[k]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Signed permutation equivalence.

/// B = P1 S P2 with signed permutation matrices P1, P2. Entry (i, j) of the
/// image is row_signs[i] * col_signs[j] * S(row_perm[i], col_perm[j]).
struct SignedPermEquivalence {
  std::vector<std::size_t> row_perm;
  std::vector<int> row_signs;
  std::vector<std::size_t> col_perm;
  std::vector<int> col_signs;

  static SignedPermEquivalence identity(std::size_t m, std::size_t n) {
    SignedPermEquivalence e;
    e.row_perm.resize(m);
    e.col_perm.resize(n);
    std::iota(e.row_perm.begin(), e.row_perm.end(), 0);
    std::iota(e.col_perm.begin(), e.col_perm.end(), 0);
    e.row_signs.assign(m, 1);
    e.col_signs.assign(n, 1);
    return e;
  }

  template <class Rng>
  static SignedPermEquivalence random(std::size_t m, std::size_t n, Rng& rng) {
    auto e = identity(m, n);
    std::shuffle(e.row_perm.begin(), e.row_perm.end(), rng);
    std::shuffle(e.col_perm.begin(), e.col_perm.end(), rng);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int& s : e.row_signs) s = coin(rng) ? 1 : -1;
    for (int& s : e.col_signs) s = coin(rng) ? 1 : -1;
    return e;
  }

  std::size_t rows() const { return row_perm.size(); }
  std::size_t cols() const { return col_perm.size(); }

  bool is_valid() const {
    auto perm_ok = [](const std::vector<std::size_t>& p) {
      std::vector<bool> seen(p.size(), false);
      for (std::size_t v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
      }
      return true;
    };
    auto signs_ok = [](const std::vector<int>& s) {
      return std::all_of(s.begin(), s.end(), [](int v) { return v == 1 || v == -1; });
    };
    return perm_ok(row_perm) && perm_ok(col_perm) && row_signs.size() == row_perm.size() &&
           col_signs.size() == col_perm.size() && signs_ok(row_signs) && signs_ok(col_signs);
  }

  SignedPermEquivalence inverse() const {
    SignedPermEquivalence inv = identity(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i) {
      inv.row_perm[row_perm[i]] = i;
      inv.row_signs[row_perm[i]] = row_signs[i];
    }
    for (std::size_t j = 0; j < cols(); ++j) {
      inv.col_perm[col_perm[j]] = j;
      inv.col_signs[col_perm[j]] = col_signs[j];
    }
    return inv;
  }

  /// The equivalence "apply *this, then `next`".
  SignedPermEquivalence then(const SignedPermEquivalence& next) const {
    if (next.rows() != rows() || next.cols() != cols()) throw std::invalid_argument("equivalence shape mismatch");
    SignedPermEquivalence c = identity(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i) {
      c.row_perm[i] = row_perm[next.row_perm[i]];
      c.row_signs[i] = next.row_signs[i] * row_signs[next.row_perm[i]];
    }
    for (std::size_t j = 0; j < cols(); ++j) {
      c.col_perm[j] = col_perm[next.col_perm[j]];
      c.col_signs[j] = next.col_signs[j] * col_signs[next.col_perm[j]];
    }
    return c;
  }
};

inline SignPattern apply_equiv(const SignPattern& s, const SignedPermEquivalence& e) {
  if (e.rows() != s.rows() || e.cols() != s.cols()) throw std::invalid_argument("apply_equiv: shape mismatch");
  if (!e.is_valid()) throw std::invalid_argument("apply_equiv: not a signed permutation pair");
  SignPattern out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      out(i, j) = sign_from_int(e.row_signs[i] * e.col_signs[j] * to_int(s(e.row_perm[i], e.col_perm[j])));
  return out;
}

template <class T>
Matrix<T> apply_equiv(const Matrix<T>& a, const SignedPermEquivalence& e) {
  if (e.rows() != a.rows() || e.cols() != a.cols()) throw std::invalid_argument("apply_equiv: shape mismatch");
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      T v = a(e.row_perm[i], e.col_perm[j]);
      if (e.row_signs[i] * e.col_signs[j] < 0) v = -v;
      out(i, j) = v;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form: lexicographically least element of the sign-equivalence
// orbit (row-major, '+' < '-' < '0').
//
// Rows are chosen one at a time (with a sign). Once the first k rows are
// fixed, the best column arrangement is forced: negate each column so its
// first nonzero entry is '+', then sort the columns lexicographically. The
// top k x n block of the result only depends on the first k rows, which gives
// the branch-and-bound cut.

namespace detail {

class CanonicalSearch {
public:
  explicit CanonicalSearch(const SignPattern& s) : s_(s), m_(s.rows()), n_(s.cols()) {
    used_.assign(m_, false);
    order_.reserve(m_);
    signs_.reserve(m_);
  }

  SignPattern run() {
    descend();
    return SignPattern(m_, n_, best_);
  }

private:
  // Column j restricted to the chosen rows, normalized, as lex ranks.
  std::vector<std::vector<int>> prefix_columns() const {
    std::vector<std::vector<int>> colv(n_, std::vector<int>(order_.size()));
    for (std::size_t j = 0; j < n_; ++j) {
      int flip = 0;
      for (std::size_t t = 0; t < order_.size(); ++t) {
        int v = signs_[t] * to_int(s_(order_[t], j));
        if (flip == 0 && v != 0) flip = v;  // first nonzero becomes '+'
        colv[j][t] = v;
      }
      for (std::size_t t = 0; t < order_.size(); ++t) colv[j][t] = lex_rank(sign_from_int(colv[j][t] * (flip ? flip : 1)));
    }
    std::sort(colv.begin(), colv.end());
    return colv;
  }

  // Compare the k-row prefix block with the incumbent: -1 less, 0 equal, 1 greater.
  int compare_prefix(const std::vector<std::vector<int>>& colv) const {
    if (best_.empty()) return -1;
    const std::size_t k = order_.size();
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t j = 0; j < n_; ++j) {
        int a = colv[j][t], b = lex_rank(best_[t * n_ + j]);
        if (a != b) return a < b ? -1 : 1;
      }
    return 0;
  }

  void descend() {
    auto colv = prefix_columns();
    int c = order_.empty() ? -1 : compare_prefix(colv);
    if (c > 0) return;
    if (order_.size() == m_) {
      if (c < 0) {
        best_.assign(m_ * n_, Sign::Zero);
        static constexpr Sign from_rank[3] = {Sign::Plus, Sign::Minus, Sign::Zero};
        for (std::size_t t = 0; t < m_; ++t)
          for (std::size_t j = 0; j < n_; ++j) best_[t * n_ + j] = from_rank[colv[j][t]];
      }
      return;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (used_[i]) continue;
      used_[i] = true;
      order_.push_back(i);
      // the first row's sign is absorbed by the column normalization
      for (int sign : {1, -1}) {
        if (order_.size() == 1 && sign < 0) continue;
        signs_.push_back(sign);
        descend();
        signs_.pop_back();
      }
      order_.pop_back();
      used_[i] = false;
    }
  }

  const SignPattern& s_;
  std::size_t m_, n_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
  std::vector<int> signs_;
  std::vector<Sign> best_;
};

}  // namespace detail

inline constexpr std::size_t kCanonicalSizeGuard = 42;

inline SignPattern canonical_form(const SignPattern& s, std::size_t size_guard = kCanonicalSizeGuard) {
  if (s.rows() * s.cols() > size_guard)
    throw guard_exceeded("canonical_form: " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                         " exceeds the size guard of " + std::to_string(size_guard) + " entries");
  return detail::CanonicalSearch(s).run();
}

// ---------------------------------------------------------------------------
// Pairwise predicates.

/// Rows i and k admit orthogonal realizations: either no column has both
/// entries nonzero, or both a '+' and a '-' entrywise product occur.
inline bool rows_potentially_orthogonal(const SignPattern& s, std::size_t i, std::size_t k) {
  bool plus = false, minus = false, any = false;
  for (std::size_t j = 0; j < s.cols(); ++j) {
    int p = to_int(s(i, j)) * to_int(s(k, j));
    any = any || p != 0;
    plus = plus || p > 0;
    minus = minus || p < 0;
  }
  return !any || (plus && minus);
}

/// First row-PPO violation: {i, i} for a zero row, {i, k} for a bad pair.
inline std::optional<std::pair<std::size_t, std::size_t>> row_ppo_violation(const SignPattern& s) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto r = s.row(i);
    if (std::all_of(r.begin(), r.end(), [](Sign e) { return e == Sign::Zero; })) return std::pair{i, i};
  }
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = i + 1; k < s.rows(); ++k)
      if (!rows_potentially_orthogonal(s, i, k)) return std::pair{i, k};
  return std::nullopt;
}

inline bool row_ppo(const SignPattern& s) { return !row_ppo_violation(s); }
inline bool column_ppo(const SignPattern& s) { return row_ppo(s.transpose()); }

inline bool combinatorially_orthogonal(const SignPattern& s, std::size_t i, std::size_t k) {
  if (i >= s.rows() || k >= s.rows()) throw std::out_of_range("row index out of range");
  for (std::size_t j = 0; j < s.cols(); ++j)
    if (s(i, j) != Sign::Zero && s(k, j) != Sign::Zero) return false;
  return true;
}

inline bool has_combinatorially_orthogonal_rows(const SignPattern& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = i + 1; k < s.rows(); ++k)
      if (combinatorially_orthogonal(s, i, k)) return true;
  return false;
}

/// Columns (j, l) with s_ij s_kj = + and s_il s_kl = -, if any. The first such
/// columns in index order are returned.
inline std::optional<std::pair<std::size_t, std::size_t>> negative_4cycle(const SignPattern& s, std::size_t i,
                                                                          std::size_t k) {
  if (i >= s.rows() || k >= s.rows()) throw std::out_of_range("row index out of range");
  if (i == k) throw std::invalid_argument("negative_4cycle: rows must be distinct");
  std::optional<std::size_t> plus, minus;
  for (std::size_t j = 0; j < s.cols() && !(plus && minus); ++j) {
    int p = to_int(s(i, j)) * to_int(s(k, j));
    if (p > 0 && !plus) plus = j;
    if (p < 0 && !minus) minus = j;
  }
  if (plus && minus) return std::pair{*plus, *minus};
  return std::nullopt;
}

}  // namespace orthosign
