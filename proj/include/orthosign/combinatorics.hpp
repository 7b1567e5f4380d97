#pragma once

// Column-disjoint negative 4-cycle covers (sufficient for allowing row
// orthogonality), the rank-1 submatrix obstruction (sufficient for not
// allowing it), and the decision pipeline combining them with certificates.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orthosign/certificate.hpp"
#include "orthosign/error.hpp"
#include "orthosign/pattern.hpp"

namespace orthosign {

/// One negative 4-cycle per row pair, all columns distinct.
struct FourCycle {
  std::size_t row_i, row_k;
  std::size_t plus_col;   // s_ij s_kj = +
  std::size_t minus_col;  // s_il s_kl = -
  friend bool operator==(const FourCycle&, const FourCycle&) = default;
};

struct FourCycleCover {
  std::vector<FourCycle> cycles;

  std::vector<std::size_t> used_columns() const {
    std::vector<std::size_t> cols;
    for (const auto& c : cycles) {
      cols.push_back(c.plus_col);
      cols.push_back(c.minus_col);
    }
    std::sort(cols.begin(), cols.end());
    return cols;
  }
};

/// Independent re-validation of a cover against S.
inline bool validate_cover(const SignPattern& s, const FourCycleCover& cover) {
  const std::size_t m = s.rows();
  std::vector<bool> pair_seen(m * m, false);
  std::vector<bool> col_used(s.cols(), false);
  for (const auto& c : cover.cycles) {
    if (c.row_i >= m || c.row_k >= m || c.row_i == c.row_k) return false;
    if (c.plus_col >= s.cols() || c.minus_col >= s.cols()) return false;
    std::size_t a = std::min(c.row_i, c.row_k), b = std::max(c.row_i, c.row_k);
    if (pair_seen[a * m + b]) return false;
    pair_seen[a * m + b] = true;
    for (std::size_t col : {c.plus_col, c.minus_col}) {
      if (col_used[col]) return false;
      col_used[col] = true;
    }
    if (to_int(s(a, c.plus_col)) * to_int(s(b, c.plus_col)) != 1) return false;
    if (to_int(s(a, c.minus_col)) * to_int(s(b, c.minus_col)) != -1) return false;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = i + 1; k < m; ++k)
      if (!pair_seen[i * m + k]) return false;
  return true;
}

/// The greedy of the random-pattern argument: row t claims the first
/// 2(m-1-t)+r unused columns in its support, then each later row k takes the
/// first unused '+' and '-' product columns inside that block.
inline std::optional<FourCycleCover> find_cover_greedy(const SignPattern& s, std::size_t r = 0) {
  const std::size_t m = s.rows(), n = s.cols();
  if (r > m) throw std::invalid_argument("find_cover_greedy: r must lie in {0, ..., m}");
  FourCycleCover cover;
  std::vector<bool> in_pool(n, true);
  for (std::size_t t = 0; t + 1 < m; ++t) {
    const std::size_t want = 2 * (m - 1 - t) + r;
    std::vector<std::size_t> w;
    for (std::size_t j = 0; j < n && w.size() < want; ++j)
      if (in_pool[j] && s(t, j) != Sign::Zero) w.push_back(j);
    if (w.size() < want) return std::nullopt;
    for (std::size_t j : w) in_pool[j] = false;
    std::vector<bool> taken(w.size(), false);
    for (std::size_t k = t + 1; k < m; ++k) {
      std::optional<std::size_t> plus, minus;
      for (std::size_t q = 0; q < w.size(); ++q) {
        if (taken[q]) continue;
        int p = to_int(s(t, w[q])) * to_int(s(k, w[q]));
        if (p > 0 && !plus) plus = q;
        if (p < 0 && !minus) minus = q;
      }
      if (!plus || !minus) return std::nullopt;
      taken[*plus] = taken[*minus] = true;
      cover.cycles.push_back({t, k, w[*plus], w[*minus]});
    }
  }
  return cover;
}

struct ExactCoverLimits {
  std::size_t max_rows = 6;
  std::size_t max_cols = 24;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

namespace detail {

/// Slots are (row pair, wanted product sign); a cover is an assignment of
/// distinct columns to all slots.
class CoverSearch {
public:
  CoverSearch(const SignPattern& s, const ExactCoverLimits& lim) : s_(s), lim_(lim) {
    const std::size_t m = s.rows();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = i + 1; k < m; ++k)
        for (int want : {1, -1}) {
          Slot slot{i, k, want, {}};
          for (std::size_t j = 0; j < s.cols(); ++j)
            if (to_int(s(i, j)) * to_int(s(k, j)) == want) slot.options.push_back(j);
          slots_.push_back(std::move(slot));
        }
    assign_.assign(slots_.size(), kNone);
    col_owner_.assign(s.cols(), kNone);
  }

  std::optional<FourCycleCover> run() {
    if (slots_.size() > s_.cols()) return std::nullopt;
    if (!search(0)) return std::nullopt;
    FourCycleCover c;
    for (std::size_t q = 0; q < slots_.size(); q += 2)
      c.cycles.push_back({slots_[q].i, slots_[q].k, assign_[q], assign_[q + 1]});
    return c;
  }

private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Slot {
    std::size_t i, k;
    int want;
    std::vector<std::size_t> options;
  };

  void check_deadline() {
    if (lim_.deadline && (ticks_++ & 0xff) == 0 && std::chrono::steady_clock::now() > *lim_.deadline)
      throw deadline_exceeded("find_cover_exact: deadline passed");
  }

  // Lookahead: can the open slots still be matched into free columns?
  bool completable() {
    std::vector<std::size_t> owner(s_.cols(), kNone);
    for (std::size_t q = 0; q < slots_.size(); ++q) {
      if (assign_[q] != kNone) continue;
      std::vector<bool> seen(s_.cols(), false);
      if (!augment(q, owner, seen)) return false;
    }
    return true;
  }

  bool augment(std::size_t q, std::vector<std::size_t>& owner, std::vector<bool>& seen) {
    for (std::size_t j : slots_[q].options) {
      if (col_owner_[j] != kNone || seen[j]) continue;
      seen[j] = true;
      if (owner[j] == kNone || augment(owner[j], owner, seen)) {
        owner[j] = q;
        return true;
      }
    }
    return false;
  }

  bool search(std::size_t placed) {
    check_deadline();
    if (placed == slots_.size()) return true;
    if (!completable()) return false;
    // fail-first: open slot with the fewest free options
    std::size_t best = kNone, best_count = kNone;
    for (std::size_t q = 0; q < slots_.size(); ++q) {
      if (assign_[q] != kNone) continue;
      std::size_t cnt = 0;
      for (std::size_t j : slots_[q].options) cnt += col_owner_[j] == kNone;
      if (cnt < best_count) {
        best = q;
        best_count = cnt;
      }
    }
    for (std::size_t j : slots_[best].options) {
      if (col_owner_[j] != kNone) continue;
      col_owner_[j] = best;
      assign_[best] = j;
      if (search(placed + 1)) return true;
      assign_[best] = kNone;
      col_owner_[j] = kNone;
    }
    return false;
  }

  const SignPattern& s_;
  ExactCoverLimits lim_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> assign_;
  std::vector<std::size_t> col_owner_;
  std::uint64_t ticks_ = 0;
};

}  // namespace detail

/// Exhaustive search: nullopt iff S has no column-disjoint cover.
inline std::optional<FourCycleCover> find_cover_exact(const SignPattern& s, const ExactCoverLimits& lim = {}) {
  if (s.rows() > lim.max_rows || s.cols() > lim.max_cols)
    throw guard_exceeded("find_cover_exact: " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                         " exceeds the size guard " + std::to_string(lim.max_rows) + "x" +
                         std::to_string(lim.max_cols));
  if (s.rows() < 2) return FourCycleCover{};
  return detail::CoverSearch(s, lim).run();
}

// ---------------------------------------------------------------------------
// Rank-1 obstruction.

struct Rank1Obstruction {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<int> template_row;  // restriction of each selected column to `rows`, up to sign
};

inline constexpr std::size_t kRank1RowGuard = 12;

/// Some r x s submatrix of rank one with r + s >= n + 2. Requires a
/// nowhere-zero pattern.
inline std::optional<Rank1Obstruction> rank1_obstruction(const SignPattern& s,
                                                         std::size_t row_guard = kRank1RowGuard) {
  if (!s.is_nowhere_zero()) throw std::invalid_argument("rank1_obstruction: pattern has a zero entry");
  const std::size_t m = s.rows(), n = s.cols();
  if (m > row_guard) throw guard_exceeded("rank1_obstruction: " + std::to_string(m) + " rows exceed the guard");
  for (std::size_t r = m; r >= 2; --r) {
    // subsets of size r in lexicographic order via bitmasks
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != r) continue;
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1u) rows.push_back(i);
      std::map<std::vector<int>, std::vector<std::size_t>> buckets;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<int> key;
        int flip = to_int(s(rows[0], j));
        for (std::size_t i : rows) key.push_back(to_int(s(i, j)) * flip);
        buckets[key].push_back(j);
      }
      for (auto& [key, cols] : buckets)
        if (r + cols.size() >= n + 2) return Rank1Obstruction{rows, cols, key};
    }
  }
  return std::nullopt;
}

/// Independent check that an obstruction is genuine: sizes, distinct indices,
/// and all 2x2 minors of the selected sign submatrix vanish.
inline bool validate_rank1_obstruction(const SignPattern& s, const Rank1Obstruction& ob) {
  if (!s.is_nowhere_zero()) return false;
  if (ob.rows.size() + ob.cols.size() < s.cols() + 2) return false;
  auto distinct_in_range = [](std::vector<std::size_t> v, std::size_t bound) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end() && (v.empty() || v.back() < bound);
  };
  if (!distinct_in_range(ob.rows, s.rows()) || !distinct_in_range(ob.cols, s.cols())) return false;
  for (std::size_t a = 0; a < ob.rows.size(); ++a)
    for (std::size_t b = a + 1; b < ob.rows.size(); ++b)
      for (std::size_t c = 0; c < ob.cols.size(); ++c)
        for (std::size_t d = c + 1; d < ob.cols.size(); ++d) {
          int minor = to_int(s(ob.rows[a], ob.cols[c])) * to_int(s(ob.rows[b], ob.cols[d])) -
                      to_int(s(ob.rows[a], ob.cols[d])) * to_int(s(ob.rows[b], ob.cols[c]));
          if (minor != 0) return false;
        }
  return true;
}

// ---------------------------------------------------------------------------
// Decision pipeline.

enum class Status { Allows, Forbidden, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Allows: return "Allows";
    case Status::Forbidden: return "Forbidden";
    default: return "Unknown";
  }
}

struct CertificateEvidence {
  ExactMatrix matrix;
  CertificateReport report;
};

/// A zero row (i == k) or a pair of rows/columns with sign products all of one sign.
struct PpoFailure {
  bool columns = false;
  std::size_t i = 0, k = 0;
};

struct StructuralEvidence {
  std::string name;
};

using Evidence =
    std::variant<std::monostate, CertificateEvidence, FourCycleCover, Rank1Obstruction, PpoFailure, StructuralEvidence>;

struct Verdict {
  Status status = Status::Unknown;
  Evidence evidence;
};

struct DecideConfig {
  std::size_t greedy_r = 0;
  ExactCoverLimits cover_limits;
  bool use_certificate_search = true;
  SearchConfig search;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::optional<PpoFailure> ppo_failure(const SignPattern& s) {
  if (auto v = row_ppo_violation(s)) return PpoFailure{false, v->first, v->second};
  if (s.is_square())
    if (auto v = row_ppo_violation(s.transpose())) return PpoFailure{true, v->first, v->second};
  return std::nullopt;
}

inline bool recheck_ppo_failure(const SignPattern& s, const PpoFailure& f) {
  const SignPattern t = f.columns ? s.transpose() : s;
  if (f.columns && !s.is_square()) return false;
  if (f.i >= t.rows() || f.k >= t.rows()) return false;
  if (f.i == f.k) {
    auto r = t.row(f.i);
    return std::all_of(r.begin(), r.end(), [](Sign e) { return e == Sign::Zero; });
  }
  return !rows_potentially_orthogonal(t, f.i, f.k);
}

inline bool recheck_certificate(const SignPattern& s, const CertificateEvidence& ev) {
  if (!(sgn_of(ev.matrix) == s)) return false;
  return verify_certificate(ev.matrix).accepted() && projection_preserves_signs(ev.matrix);
}

}  // namespace detail

/// Re-verifies the evidence of a verdict with code independent of the search.
inline bool evidence_supports(const SignPattern& s, const Verdict& v) {
  switch (v.status) {
    case Status::Unknown: return true;
    case Status::Allows:
      if (auto c = std::get_if<FourCycleCover>(&v.evidence)) return validate_cover(s, *c);
      if (auto c = std::get_if<CertificateEvidence>(&v.evidence)) return detail::recheck_certificate(s, *c);
      return false;
    case Status::Forbidden:
      if (auto p = std::get_if<PpoFailure>(&v.evidence)) return detail::recheck_ppo_failure(s, *p);
      if (auto r = std::get_if<Rank1Obstruction>(&v.evidence)) return validate_rank1_obstruction(s, *r);
      if (auto st = std::get_if<StructuralEvidence>(&v.evidence))
        return st->name == "fewer-columns-than-rows" && s.rows() > s.cols();
      return false;
  }
  return false;
}

/// Allows / Forbidden with checkable evidence, or Unknown.
inline Verdict decide_allows(const SignPattern& s, const DecideConfig& cfg = {}) {
  Verdict v;
  auto finish = [&](Verdict out) {
    if (!evidence_supports(s, out)) throw std::logic_error("decide_allows: evidence failed re-verification");
    return out;
  };
  if (s.rows() > s.cols()) return finish({Status::Forbidden, StructuralEvidence{"fewer-columns-than-rows"}});
  if (auto f = detail::ppo_failure(s)) return finish({Status::Forbidden, *f});
  if (s.is_nowhere_zero() && s.rows() <= kRank1RowGuard)
    if (auto ob = rank1_obstruction(s)) return finish({Status::Forbidden, *ob});
  if (auto c = find_cover_greedy(s, std::min(cfg.greedy_r, s.rows()))) return finish({Status::Allows, *c});
  if (s.rows() <= cfg.cover_limits.max_rows && s.cols() <= cfg.cover_limits.max_cols)
    if (auto c = find_cover_exact(s, cfg.cover_limits)) return finish({Status::Allows, *c});
  if (cfg.use_certificate_search && s.is_nowhere_zero())
    if (auto a = find_certificate(s, cfg.search, cfg.seed)) {
      CertificateEvidence ev{*a, verify_certificate(*a)};
      if (detail::recheck_certificate(s, ev)) return finish({Status::Allows, std::move(ev)});
    }
  return v;
}

}  // namespace orthosign
