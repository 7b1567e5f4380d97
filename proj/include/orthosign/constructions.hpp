#pragma once

// Named matrices and patterns: Hessenberg matrices, complete-graph incidence
// constructions, and a registry of exact fixtures.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orthosign/matrix.hpp"
#include "orthosign/pattern.hpp"
#include "orthosign/rng.hpp"

namespace orthosign {

/// n x n lower Hessenberg matrix with orthogonal rows: row i (0-based) has
/// ones in columns 0..i, then -(i+1), then zeros; the last row is all ones.
inline ExactMatrix hessenberg(std::size_t n) {
  if (n == 0) throw std::invalid_argument("hessenberg: n must be positive");
  ExactMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) h(i, j) = 1;
    if (i + 1 < n) h(i, i + 1) = -static_cast<long>(i + 1);
  }
  return h;
}

/// Orientation of K_m as a list of arcs (tail, head).
struct OrientedCompleteGraph {
  std::size_t m = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;

  /// Edge {i, j} with i < j oriented i -> j, edges in lexicographic order.
  static OrientedCompleteGraph standard(std::size_t m) {
    OrientedCompleteGraph g{m, {}};
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) g.arcs.emplace_back(i, j);
    return g;
  }

  static OrientedCompleteGraph random(std::size_t m, SplitMix64& rng) {
    auto g = standard(m);
    for (auto& a : g.arcs)
      if (rng() & 1u) std::swap(a.first, a.second);
    return g;
  }

  bool is_valid() const {
    if (arcs.size() != m * (m - 1) / 2) return false;
    std::vector<bool> seen(m * m, false);
    for (auto [u, v] : arcs) {
      if (u >= m || v >= m || u == v) return false;
      std::size_t a = std::min(u, v), b = std::max(u, v);
      if (seen[a * m + b]) return false;
      seen[a * m + b] = true;
    }
    return true;
  }
};

/// [R | R_oriented]: the unsigned vertex-edge incidence matrix followed by the
/// oriented one (-1 at the tail, +1 at the head). Rows are orthogonal.
inline ExactMatrix incidence_matrix(const OrientedCompleteGraph& g) {
  if (g.m < 2) throw std::invalid_argument("incidence_matrix: m must be at least 2");
  if (!g.is_valid()) throw std::invalid_argument("incidence_matrix: invalid orientation");
  const std::size_t e = g.arcs.size();
  ExactMatrix r(g.m, 2 * e);
  for (std::size_t c = 0; c < e; ++c) {
    auto [u, v] = g.arcs[c];
    r(u, c) = 1;
    r(v, c) = 1;
    r(u, e + c) = -1;
    r(v, e + c) = 1;
  }
  return r;
}

inline std::pair<ExactMatrix, SignPattern> incidence_pattern(const OrientedCompleteGraph& g) {
  ExactMatrix r = incidence_matrix(g);
  return {r, sgn_of(r)};
}

inline std::pair<ExactMatrix, SignPattern> incidence_pattern(std::size_t m) {
  return incidence_pattern(OrientedCompleteGraph::standard(m));
}

// ---------------------------------------------------------------------------
// An n x (n+1) matrix with orthogonal rows, full rank, no combinatorially
// orthogonal rows, zeros confined to n rows, and no SIPP. Needs sqrt(n-2)
// rational; entries live in Q(sqrt 2).

namespace detail {

inline Rational exact_sqrt(long v) {
  Integer z(v), s;
  mpz_sqrt(s.get_mpz_t(), z.get_mpz_t());
  if (s * s != z) throw std::invalid_argument("value is not a perfect square");
  return Rational(s);
}

}  // namespace detail

inline SurdMatrix zero_block_no_sipp(std::size_t n) {
  if (n < 3) throw std::invalid_argument("zero_block_no_sipp: n must be at least 3");
  const long nn = static_cast<long>(n);
  const QSqrt2 root(detail::exact_sqrt(nn - 2));
  const QSqrt2 half_sqrt2(Rational(0), Rational(1, 2));  // 1/sqrt(2)
  const std::size_t mid = n - 3;
  SurdMatrix a(n, n + 1);
  auto fill_tail = [&](std::size_t i, const QSqrt2& t) {
    a(i, n - 1) = t;
    a(i, n) = t;
  };
  for (std::size_t i = 0; i < mid; ++i) {
    a(i, 1) = root;
    for (std::size_t c = 0; c < mid; ++c) a(i, 2 + c) = c == i ? QSqrt2(3 - nn) : QSqrt2(1);
    fill_tail(i, half_sqrt2);
  }
  a(mid, 1) = root;
  for (std::size_t c = 0; c < mid; ++c) a(mid, 2 + c) = 1;
  fill_tail(mid, QSqrt2(3 - nn) * half_sqrt2);
  for (std::size_t t = 0; t < 2; ++t) {
    std::size_t i = mid + 1 + t;
    a(i, 0) = t == 0 ? root : -root;
    for (std::size_t c = 0; c < mid; ++c) a(i, 2 + c) = 1;
    fill_tail(i, half_sqrt2);
  }
  return a;
}

/// The symmetric X with (XA)∘A = O for zero_block_no_sipp(n).
inline SurdMatrix zero_block_no_sipp_witness(std::size_t n) {
  if (n < 3) throw std::invalid_argument("zero_block_no_sipp_witness: n must be at least 3");
  SurdMatrix x(n, n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    x(i, n - 2) = x(n - 2, i) = 1;
    x(i, n - 1) = x(n - 1, i) = -1;
  }
  return x;
}

/// A 7 x 7 matrix with orthogonal rows, zeros in the first four rows only, no
/// combinatorially orthogonal rows or columns, and no SIPP.
inline SurdMatrix seven_by_seven_no_sipp() {
  const QSqrt2 r2 = QSqrt2::sqrt2();
  const QSqrt2 a = QSqrt2(3) * r2, b = QSqrt2(6) * r2;
  return SurdMatrix{{-9, 9, 0, 0, a, -b, b},  {9, -9, 0, 0, a, -b, b},  {0, 0, -9, 9, -b, a, b},
                    {0, 0, 9, -9, -b, a, b},  {a, a, -b, -b, 8, 8, 4},  {-b, -b, a, a, 8, 8, 4},
                    {b, b, b, b, 4, 4, 2}};
}

inline SurdMatrix seven_by_seven_witness() {
  SurdMatrix x(7, 7);
  const int block[4][4] = {{0, 0, 1, -1}, {0, 0, -1, 1}, {1, -1, 0, 0}, {-1, 1, 0, 0}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) x(i, j) = block[i][j];
  return x;
}

// ---------------------------------------------------------------------------
// Fixture registry.

using Fixture = std::variant<SignPattern, ExactMatrix, SurdMatrix>;

namespace detail {

inline SignPattern pat(const char* slash_rows) {
  std::string s(slash_rows);
  std::replace(s.begin(), s.end(), '/', '\n');
  return parse_pattern(s);
}

inline const std::map<std::string, Fixture>& fixture_table() {
  static const std::map<std::string, Fixture> table = [] {
    std::map<std::string, Fixture> t;
    // 5 x 6 nowhere-zero patterns; S1, S2, S3 minimally allow orthogonality
    t.emplace("S1", pat("--++++/++--++/++++-+/+++++-/++++++"));
    t.emplace("S2", pat("---+++/++-+++/+++--+/+++++-/++++++"));
    t.emplace("S3", pat("--++++/+-++++/++--++/++++--/++++++"));
    t.emplace("S4", pat("---+++/+--+++/+++--+/+++++-/++++++"));
    t.emplace("R-4neg", pat("-+++/+-++/++-+/+++-/++++"));
    t.emplace("R-5neg", pat("--++/+-++/++-+/+++-/++++"));
    // integer certificates for S2, S1, S3
    t.emplace("cert-A", exact_from_ints({{-8, -74, -25, 41, 8, 65},
                                         {13, 65, -73, 4, 22, 43},
                                         {56, 7, 23, -28, -71, 50},
                                         {73, 4, 4, 75, 7, -32},
                                         {3, 29, 73, 7, 60, 49}}));
    t.emplace("cert-A1", exact_from_ints({{-424, -297, 42, 382, 424, 212},
                                          {290, 48, -578, -70, 247, 392},
                                          {126, 32, 2, 536, -490, 310},
                                          {466, 4, 39, 404, 305, -407},
                                          {49, 579, 384, 12, 255, 301}}));
    t.emplace("cert-A2", exact_from_ints({{-246, -246, 369, 123, 369, 123},
                                          {494, -254, 7, 127, 7, 314},
                                          {174, 230, -11, -421, 396, 75},
                                          {284, 107, 414, 56, -41, -392},
                                          {2, 477, 51, 367, 69, 231}}));
    t.emplace("stubborn-6x8", pat("++++++++/+++---++/++++++-+/+++-----/+++++++-/+++---+-"));
    // representatives of the minimal classes for m <= 5 (square ones and the 4 x 5)
    t.emplace("minimal-m1", pat("+"));
    t.emplace("minimal-m2", pat("+-/++"));
    t.emplace("minimal-m3", pat("+-+/++-/+++"));
    t.emplace("minimal-m4-a", pat("+-++/++-+/+++-/++++"));
    t.emplace("minimal-m4-b", pat("+--+/++-+/+++-/++++"));
    t.emplace("minimal-m4-c", pat("-+++/+-++/++-+/+++-"));
    t.emplace("minimal-m4-d", pat("-++++/+-+-+/++-+-/+++++"));
    const char* m5[] = {"+--++/++--+/+++--/++++-/+++++", "--+++/+--++/++--+/++++-/+++++",
                        "--+++/+--++/++-++/+++-+/++++-", "--+++/+--++/+++--/++++-/+++++",
                        "--+++/+--++/+++-+/++++-/+++++", "+--++/++-++/+++--/++++-/+++++",
                        "--+++/+-+++/++-++/+++-+/++++-", "-++++/+-+++/++-++/+++-+/++++-",
                        "+-+++/++-++/+++-+/++++-/+++++"};
    for (std::size_t k = 0; k < 9; ++k) t.emplace(std::string("minimal-m5-") + char('a' + k), pat(m5[k]));
    t.emplace("hollow-4x4", pat("0+++/+0-+/++0-/+-+0"));
    t.emplace("conference-6x6", pat("0+++++/+0+-+-/++0+--/+-+0-+/++--0+/+--++0"));
    t.emplace("three-row-zeros-S", pat("+0++/0++-/0-+-"));
    t.emplace("three-row-zeros-A", exact_from_ints({{1, 0, 1, 1}, {0, 1, 1, -1}, {0, -2, 1, -1}}));
    t.emplace("zero-block-n3", zero_block_no_sipp(3));
    t.emplace("zero-block-n3-X", zero_block_no_sipp_witness(3));
    t.emplace("zero-block-n6", zero_block_no_sipp(6));
    t.emplace("zero-block-n6-X", zero_block_no_sipp_witness(6));
    t.emplace("seven-Q", seven_by_seven_no_sipp());
    t.emplace("seven-X", seven_by_seven_witness());
    return t;
  }();
  return table;
}

}  // namespace detail

inline std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : detail::fixture_table()) names.push_back(k);
  return names;
}

/// Named fixture. Also accepts "hessenberg-N" and "incidence-M".
inline Fixture paper_fixture(const std::string& name) {
  const auto& t = detail::fixture_table();
  if (auto it = t.find(name); it != t.end()) return it->second;
  auto suffix_number = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    std::string tail = name.substr(prefix.size());
    if (!std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; }) || tail.size() > 3)
      return std::nullopt;
    return static_cast<std::size_t>(std::stoul(tail));
  };
  if (auto n = suffix_number("hessenberg-"); n && *n >= 1) return hessenberg(*n);
  if (auto m = suffix_number("incidence-"); m && *m >= 2) return incidence_matrix(OrientedCompleteGraph::standard(*m));
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

inline SignPattern fixture_pattern(const std::string& name) {
  Fixture f = paper_fixture(name);
  if (auto p = std::get_if<SignPattern>(&f)) return *p;
  if (auto a = std::get_if<ExactMatrix>(&f)) return sgn_of(*a);
  return sgn_of(std::get<SurdMatrix>(f));
}

/// The fixture as an exact rational matrix (patterns map to their (1,-1,0) realization).
inline ExactMatrix fixture_exact(const std::string& name) {
  Fixture f = paper_fixture(name);
  if (auto p = std::get_if<SignPattern>(&f)) return unit_realization(*p);
  if (auto a = std::get_if<ExactMatrix>(&f)) return *a;
  throw std::invalid_argument("fixture '" + name + "' has irrational entries");
}

}  // namespace orthosign
