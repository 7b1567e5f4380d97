#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "orthosign/classify.hpp"
#include "orthosign/constructions.hpp"
#include "orthosign/rng.hpp"

using namespace orthosign;

namespace {

// orbits of the signed permutation group on +-1 m x n patterns, by Burnside
std::size_t burnside_count(std::size_t m, std::size_t n) {
  std::vector<std::size_t> rp(m), cp(n);
  std::iota(rp.begin(), rp.end(), 0);
  std::size_t fixed_total = 0, group = 0;
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      for (std::uint32_t rs = 0; rs < (1u << m); ++rs)
        for (std::uint32_t cs = 0; cs < (1u << n); ++cs) {
          ++group;
          for (std::uint32_t bits = 0; bits < (1u << (m * n)); ++bits) {
            bool fixed = true;
            for (std::size_t i = 0; i < m && fixed; ++i)
              for (std::size_t j = 0; j < n && fixed; ++j) {
                unsigned src = bits >> (i * n + j) & 1u;
                unsigned flip = (rs >> i & 1u) ^ (cs >> j & 1u);
                unsigned dst = bits >> (rp[i] * n + cp[j]) & 1u;
                fixed = (src ^ flip) == dst;
              }
            fixed_total += fixed;
          }
        }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return fixed_total / group;
}

std::set<std::string> canon_set(std::initializer_list<const char*> names) {
  std::set<std::string> out;
  for (auto n : names) out.insert(canonical_form(fixture_pattern(n)).entry_string());
  return out;
}

std::set<std::string> minimal_of_shape(const ClassificationRun& run, std::size_t m, std::size_t n) {
  std::set<std::string> out;
  for (const auto* c : run.minimal_classes())
    if (c->canonical.rows() == m && c->canonical.cols() == n) out.insert(c->canonical.entry_string());
  return out;
}

void check_minimal_invariants(const ClassificationRun& run) {
  std::set<std::string> seen;
  for (const auto& c : run.classes) {
    EXPECT_TRUE(seen.insert(c.canonical.entry_string()).second);
    EXPECT_EQ(canonical_form(c.canonical), c.canonical);
    if (!c.minimal) continue;
    EXPECT_EQ(c.status, Status::Allows);
    if (c.verdict) EXPECT_TRUE(evidence_supports(c.canonical, *c.verdict));
    for (std::size_t j = 0; j < c.canonical.cols(); ++j) {
      auto d = c.canonical.delete_column(j);
      auto v = decide_allows(d);
      EXPECT_EQ(v.status, Status::Forbidden);
      EXPECT_TRUE(evidence_supports(d, v));
    }
  }
}

}  // namespace

TEST(Enumerate, SmallCounts) {
  EXPECT_EQ(enumerate_classes(1, 1).size(), 1u);
  auto two = enumerate_classes(2, 2);
  ASSERT_EQ(two.size(), 2u);
  std::set<std::string> want{canonical_form(parse_pattern("+-\n++")).entry_string(),
                             canonical_form(parse_pattern("++\n++")).entry_string()};
  EXPECT_EQ((std::set<std::string>{two[0].entry_string(), two[1].entry_string()}), want);
}

TEST(Enumerate, MatchesBurnside) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 3}, {2, 4}, {3, 4}})
    EXPECT_EQ(enumerate_classes(m, n).size(), burnside_count(m, n)) << m << "x" << n;
}

TEST(Enumerate, ClassesAreDistinctAndCanonical) {
  auto cls = enumerate_classes(4, 5);
  std::set<std::string> seen;
  for (const auto& c : cls) {
    EXPECT_TRUE(seen.insert(c.entry_string()).second);
    EXPECT_EQ(canonical_form(c), c);
    EXPECT_TRUE(c.is_nowhere_zero());
  }
  EXPECT_TRUE(std::is_sorted(cls.begin(), cls.end(), [](const auto& a, const auto& b) { return lex_less(a, b); }));
}

TEST(Enumerate, RestrictionIsASubset) {
  auto full = enumerate_classes(4, 5);
  auto some = enumerate_classes(4, 5, {3});
  EXPECT_LT(some.size(), full.size());
  std::set<std::string> f;
  for (const auto& c : full) f.insert(c.entry_string());
  for (const auto& c : some) EXPECT_TRUE(f.count(c.entry_string()));
}

TEST(Enumerate, Guard) {
  EXPECT_THROW(enumerate_classes(6, 6), guard_exceeded);
  EXPECT_THROW(enumerate_classes(5, 7), guard_exceeded);
  EXPECT_THROW(enumerate_classes(0, 3), std::invalid_argument);
}

TEST(Minimal, ThreeRows) {
  auto run = minimal_allows(3, 5);
  EXPECT_FALSE(run.incomplete);
  EXPECT_EQ(run.minimal_classes().size(), 1u);
  EXPECT_EQ(minimal_of_shape(run, 3, 3), canon_set({"minimal-m3"}));
  check_minimal_invariants(run);
}

TEST(Minimal, SmallRowCounts) {
  auto one = minimal_allows(1, 3);
  EXPECT_EQ(minimal_of_shape(one, 1, 1), canon_set({"minimal-m1"}));
  EXPECT_EQ(one.minimal_classes().size(), 1u);
  auto two = minimal_allows(2, 4);
  EXPECT_EQ(minimal_of_shape(two, 2, 2), canon_set({"minimal-m2"}));
  EXPECT_EQ(two.minimal_classes().size(), 1u);
}

TEST(Minimal, FourRows) {
  auto run = minimal_allows(4, 6);
  EXPECT_FALSE(run.incomplete);
  EXPECT_EQ(run.minimal_classes().size(), 4u);
  EXPECT_EQ(minimal_of_shape(run, 4, 4), canon_set({"minimal-m4-a", "minimal-m4-b", "minimal-m4-c"}));
  EXPECT_EQ(minimal_of_shape(run, 4, 5), canon_set({"minimal-m4-d"}));
  check_minimal_invariants(run);
  auto text = render_table(run);
  EXPECT_NE(text.find("(4x5, "), std::string::npos);
}

TEST(Minimal, FiveRowsRestricted) {
  auto run = minimal_allows(5, 6);
  EXPECT_TRUE(run.restricted);
  EXPECT_FALSE(run.incomplete);
  EXPECT_EQ(minimal_of_shape(run, 5, 6), canon_set({"S1", "S2", "S3"}));
  EXPECT_EQ(minimal_of_shape(run, 5, 5),
            canon_set({"minimal-m5-a", "minimal-m5-b", "minimal-m5-c", "minimal-m5-d", "minimal-m5-e", "minimal-m5-f",
                       "minimal-m5-g", "minimal-m5-h", "minimal-m5-i"}));
  EXPECT_EQ(minimal_of_shape(run, 5, 5).size(), 8u);
  check_minimal_invariants(run);
}

TEST(Minimal, FiveByFiveMatchesPpoCriterion) {
  SplitMix64 rng(91);
  DecideConfig cfg;
  for (int t = 0; t < 500; ++t) {
    SignPattern s(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) s(i, j) = rng() % 2 ? Sign::Plus : Sign::Minus;
    auto v = decide_allows(s, cfg);
    const bool ppo = row_ppo(s) && column_ppo(s);
    ASSERT_NE(v.status, Status::Unknown) << format_pattern(s);
    EXPECT_EQ(v.status == Status::Allows, ppo) << format_pattern(s);
  }
}

TEST(Minimal, Guard) {
  EXPECT_THROW(minimal_allows(6, 6), guard_exceeded);
  EXPECT_THROW(minimal_allows(4, 3), std::invalid_argument);
}
