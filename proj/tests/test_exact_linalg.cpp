#include <gtest/gtest.h>

#include <functional>

#include "orthosign/constructions.hpp"
#include "orthosign/exact_linalg.hpp"
#include "orthosign/rng.hpp"

using namespace orthosign;

namespace {

ExactMatrix random_rational(std::size_t m, std::size_t n, SplitMix64& rng, int spread = 3) {
  ExactMatrix a(m, n);
  for (auto& x : a.data()) x = Rational(static_cast<long>(rng() % (2 * spread + 1)) - spread, 1 + rng() % 3);
  return a;
}

Rational det_cofactor(const ExactMatrix& a, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  if (rows.size() == 1) return a(rows[0], cols[0]);
  Rational d = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto sub_rows = std::vector<std::size_t>(rows.begin() + 1, rows.end());
    auto sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + static_cast<long>(c));
    Rational t = a(rows[0], cols[c]) * det_cofactor(a, sub_rows, sub_cols);
    d += c % 2 == 0 ? t : Rational(-t);
  }
  return d;
}

// largest k with a nonzero k x k minor
std::size_t rank_by_minors(const ExactMatrix& a) {
  std::size_t best = 0;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::uint32_t rm = 1; rm < (1u << m); ++rm)
    for (std::uint32_t cm = 1; cm < (1u << n); ++cm) {
      if (__builtin_popcount(rm) != __builtin_popcount(cm)) continue;
      std::size_t k = static_cast<std::size_t>(__builtin_popcount(rm));
      if (k <= best) continue;
      std::vector<std::size_t> r, c;
      for (std::size_t i = 0; i < m; ++i)
        if (rm >> i & 1) r.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (cm >> j & 1) c.push_back(j);
      if (sgn(det_cofactor(a, r, c)) != 0) best = k;
    }
  return best;
}

}  // namespace

TEST(Rank, BareissMatchesMinorOracle) {
  SplitMix64 rng(21);
  for (int t = 0; t < 150; ++t) {
    std::size_t m = 1 + t % 4, n = 1 + (t / 4) % 5;
    auto a = random_rational(m, n, rng, t % 3 == 0 ? 1 : 3);
    std::size_t want = rank_by_minors(a);
    EXPECT_EQ(rank_exact(a), want);
    EXPECT_EQ(rank_field(a), want);
  }
}

TEST(Rank, DeficientByConstruction) {
  SplitMix64 rng(22);
  for (int t = 0; t < 50; ++t) {
    auto b = random_rational(4, 2, rng), c = random_rational(2, 6, rng);
    EXPECT_LE(rank_exact(b * c), 2u);
  }
  EXPECT_EQ(rank_exact(ExactMatrix(3, 3)), 0u);
  EXPECT_EQ(rank_exact(ExactMatrix::identity(5)), 5u);
}

TEST(Rank, IncidenceOfCompleteGraph) {
  for (std::size_t m = 2; m <= 6; ++m) EXPECT_EQ(rank_exact(incidence_matrix(OrientedCompleteGraph::standard(m))), m);
}

TEST(Rank, SurdMatrices) {
  SurdMatrix a{{QSqrt2::sqrt2(), 1}, {2, QSqrt2::sqrt2()}};  // det = 2 - 2 = 0
  EXPECT_EQ(rank_field(a), 1u);
  SurdMatrix b{{QSqrt2::sqrt2(), 1}, {1, QSqrt2::sqrt2()}};
  EXPECT_EQ(rank_field(b), 2u);
}

TEST(Nullspace, VectorsAreAnnihilatedAndIndependent) {
  SplitMix64 rng(23);
  for (int t = 0; t < 80; ++t) {
    std::size_t m = 1 + t % 4, n = 2 + t % 6;
    auto a = random_rational(m, n, rng, 1);
    auto basis = nullspace_exact(a);
    EXPECT_EQ(basis.size() + rank_exact(a), n);
    ExactMatrix stacked(n, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      EXPECT_TRUE((a * basis[k]).is_zero_matrix());
      for (std::size_t i = 0; i < n; ++i) stacked(i, k) = basis[k](i, 0);
    }
    EXPECT_EQ(rank_exact(stacked), basis.size());
  }
}

TEST(Orthogonality, GramAndDiagonal) {
  auto h = hessenberg(4);
  EXPECT_TRUE(has_orthogonal_rows(h));
  auto a = exact_from_ints({{1, 1}, {1, 0}});
  EXPECT_FALSE(has_orthogonal_rows(a));
  EXPECT_EQ(gram(a), exact_from_ints({{2, 1}, {1, 1}}));
}

TEST(SqrtBound, ExactOnSquares) {
  EXPECT_EQ(rational_sqrt_upper_bound(Rational(9, 16), 64), Rational(3, 4));
  EXPECT_EQ(rational_sqrt_upper_bound(Rational(0), 64), Rational(0));
  EXPECT_EQ(rational_sqrt_lower_bound(Rational(49, 4), 64), Rational(7, 2));
}

TEST(SqrtBound, BracketsAndIsTight) {
  SplitMix64 rng(24);
  for (int t = 0; t < 300; ++t) {
    Rational q(static_cast<long>(1 + rng() % 100000), static_cast<long>(1 + rng() % 100000));
    q.canonicalize();
    for (unsigned bits : {8u, 32u, 64u, 96u}) {
      Rational u = rational_sqrt_upper_bound(q, bits), l = rational_sqrt_lower_bound(q, bits);
      EXPECT_GE(u * u, q);
      EXPECT_LE(l * l, q);
      EXPECT_LE(l, u);
      // u - l <= 2 * 2^-bits * max(1, u)
      Rational slack(1);
      mpz_mul_2exp(slack.get_den_mpz_t(), slack.get_den_mpz_t(), bits);
      slack.canonicalize();
      Rational scale = u > 1 ? u : Rational(1);
      EXPECT_LE(u - l, 2 * slack * scale) << q << " bits " << bits;
    }
  }
}

TEST(FloatRank, AgreesWithExactOnWellConditioned) {
  SplitMix64 rng(25);
  for (int t = 0; t < 100; ++t) {
    auto a = random_rational(2 + t % 3, 3 + t % 4, rng, 2);
    EXPECT_EQ(float_rank(to_float(a)), rank_exact(a));
  }
}
