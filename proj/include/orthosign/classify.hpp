#pragma once

// Enumeration of nowhere-zero sign patterns up to sign equivalence and the
// search for classes that minimally allow orthogonality.

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orthosign/combinatorics.hpp"
#include "orthosign/pattern.hpp"

namespace orthosign {

inline constexpr std::size_t kClassifyMaxRows = 5;
inline constexpr std::size_t kClassifyMaxCols = 6;

struct EnumerateOptions {
  /// Keep only patterns with at most this many distinct columns (up to sign).
  std::optional<std::size_t> max_distinct_columns;
};

/// Canonical forms of all nowhere-zero m x n classes, in increasing order.
/// Every class has a member whose first row is all '+', and column order is
/// free, so it suffices to range over multisets of columns starting with '+'.
inline std::vector<SignPattern> enumerate_classes(std::size_t m, std::size_t n, const EnumerateOptions& opt = {}) {
  if (m == 0 || n == 0) throw std::invalid_argument("enumerate_classes: m and n must be positive");
  if (m > kClassifyMaxRows || n > kClassifyMaxCols)
    throw guard_exceeded("enumerate_classes: " + std::to_string(m) + "x" + std::to_string(n) + " exceeds the guard " +
                         std::to_string(kClassifyMaxRows) + "x" + std::to_string(kClassifyMaxCols));
  const std::size_t types = std::size_t{1} << (m - 1);
  std::set<std::string> seen;
  std::vector<SignPattern> out;
  std::vector<std::size_t> cols(n, 0);
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from,
                                                                        std::size_t distinct) {
    if (opt.max_distinct_columns && distinct > *opt.max_distinct_columns) return;
    if (pos == n) {
      SignPattern s(m, n, Sign::Plus);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 1; i < m; ++i)
          if (cols[j] >> (i - 1) & 1u) s(i, j) = Sign::Minus;
      SignPattern c = canonical_form(s);
      if (seen.insert(c.entry_string()).second) out.push_back(std::move(c));
      return;
    }
    for (std::size_t t = from; t < types; ++t) {
      cols[pos] = t;
      rec(pos + 1, t, distinct + (pos == 0 || t != cols[pos - 1] ? 1 : 0));
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const SignPattern& a, const SignPattern& b) { return lex_less(a, b); });
  return out;
}

struct ClassRecord {
  SignPattern canonical;
  Status status = Status::Unknown;
  std::string basis;  // which argument settled the status
  bool minimal = false;
  std::optional<Verdict> verdict;  // evidence, when the pattern was decided directly
};

struct ClassificationRun {
  std::size_t m = 0, n_min = 0, n_max = 0;
  bool restricted = false;
  bool incomplete = false;
  std::vector<ClassRecord> classes;
  double seconds = 0;

  std::vector<const ClassRecord*> minimal_classes() const {
    std::vector<const ClassRecord*> v;
    for (const auto& c : classes)
      if (c.minimal) v.push_back(&c);
    return v;
  }
};

struct ClassifyOptions {
  /// For m = 5 and n = 6 keep only patterns with at most 5 distinct columns.
  bool restricted = true;
  DecideConfig decide;
};

namespace detail {

inline std::string basis_of(const Verdict& v) {
  if (std::holds_alternative<CertificateEvidence>(v.evidence)) return "certificate";
  if (std::holds_alternative<FourCycleCover>(v.evidence)) return "cover";
  if (std::holds_alternative<Rank1Obstruction>(v.evidence)) return "rank1";
  if (std::holds_alternative<PpoFailure>(v.evidence)) return "ppo";
  if (auto s = std::get_if<StructuralEvidence>(&v.evidence)) return s->name;
  return "none";
}

class Classifier {
public:
  explicit Classifier(ClassifyOptions opt) : opt_(std::move(opt)) {}

  /// Status of a pattern, cached by canonical form.
  const ClassRecord& decide(const SignPattern& s) {
    SignPattern c = canonical_form(s);
    auto key = c.entry_string() + "/" + std::to_string(c.rows());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    ClassRecord rec{c, Status::Unknown, "none", false, std::nullopt};
    Verdict v = decide_allows(c, opt_.decide);
    if (v.status == Status::Unknown && c.is_square() && c.rows() <= 5 && c.zero_count() == 0 && row_ppo(c) &&
        column_ppo(c)) {
      // nowhere-zero square patterns with m <= 5 allow orthogonality iff row and column PPO
      rec.status = Status::Allows;
      rec.basis = "square-ppo";
    } else {
      rec.status = v.status;
      rec.basis = basis_of(v);
      rec.verdict = std::move(v);
    }
    return cache_.emplace(key, std::move(rec)).first->second;
  }

  ClassRecord classify(const SignPattern& s, bool& incomplete) {
    const std::size_t m = s.rows(), n = s.cols();
    ClassRecord rec{s, Status::Unknown, "none", false, std::nullopt};
    bool all_forbidden = true;
    if (n > m) {
      for (std::size_t j = 0; j < n; ++j) {
        const ClassRecord& d = decide(s.delete_column(j));
        if (d.status == Status::Allows) {
          // a nowhere-zero realization has the SIPP, so adding a column keeps allowing
          rec.status = Status::Allows;
          rec.basis = "allowing-deletion";
          return rec;
        }
        if (d.status == Status::Unknown) all_forbidden = false;
      }
    }
    const ClassRecord& self = decide(s);
    rec.status = self.status;
    rec.basis = self.basis;
    rec.verdict = self.verdict;
    if (self.status == Status::Unknown) incomplete = true;
    if (self.status == Status::Allows) {
      if (!all_forbidden) incomplete = true;
      rec.minimal = all_forbidden;
    }
    return rec;
  }

private:
  ClassifyOptions opt_;
  std::map<std::string, ClassRecord> cache_;
};

}  // namespace detail

/// Classes of nowhere-zero m x n patterns, n = m..max_n, with their status
/// and whether they minimally allow orthogonality. Unknown statuses make the
/// run incomplete instead of being guessed.
inline ClassificationRun minimal_allows(std::size_t m, std::size_t max_n, const ClassifyOptions& opt = {}) {
  if (m == 0 || m > kClassifyMaxRows) throw guard_exceeded("minimal_allows: m must lie in 1..5");
  if (max_n < m) throw std::invalid_argument("minimal_allows: max_n must be at least m");
  auto t0 = std::chrono::steady_clock::now();
  ClassificationRun run;
  run.m = m;
  run.n_min = m;
  run.n_max = max_n;
  detail::Classifier cl(opt);
  for (std::size_t n = m; n <= max_n; ++n) {
    EnumerateOptions eo;
    if (opt.restricted && m == 5 && n >= 6) {
      eo.max_distinct_columns = 5;
      run.restricted = true;
    }
    for (const auto& s : enumerate_classes(m, n, eo)) run.classes.push_back(cl.classify(s, run.incomplete));
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// Text table: one block per row count listing the minimal classes.
inline std::string render_table(const ClassificationRun& run) {
  std::ostringstream os;
  os << "Rows | Minimal classes (canonical form, up to sign equivalence)\n";
  os << "-----+---------------------------------------------------------\n";
  auto mins = run.minimal_classes();
  if (mins.empty()) os << std::string(4 - std::to_string(run.m).size(), ' ') << run.m << " | (none)\n";
  bool first = true;
  for (const auto* c : mins) {
    std::string label = first ? std::to_string(run.m) : "";
    first = false;
    std::string shape = std::to_string(c->canonical.rows()) + "x" + std::to_string(c->canonical.cols());
    for (std::size_t i = 0; i < c->canonical.rows(); ++i) {
      os << std::string(4 - label.size(), ' ') << label << " | ";
      for (Sign e : c->canonical.row(i)) os << to_char(e) << ' ';
      if (i == 0) os << "  (" << shape << ", " << c->basis << ")";
      os << '\n';
      label.clear();
    }
    os << "     |\n";
  }
  os << "classes examined: " << run.classes.size() << (run.incomplete ? "  [INCOMPLETE]" : "") << '\n';
  return os.str();
}

}  // namespace orthosign
