#include <gtest/gtest.h>

#include <chrono>

#include "orthosign/certificate.hpp"
#include "orthosign/constructions.hpp"
#include "orthosign/rng.hpp"
#include "oracles.hpp"

using namespace orthosign;

namespace {

Rational pow2_neg(unsigned bits) {
  Rational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), bits);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Certificate, FixtureA) {
  auto a = fixture_exact("cert-A");
  auto rep = verify_certificate(a);
  ASSERT_TRUE(rep.accepted()) << rep.reason;
  EXPECT_EQ(rep.delta, Rational(3, 73));
  EXPECT_EQ(rep.bound.epsilon_sq, Rational(71 * 71, 146335965));
  EXPECT_EQ(rep.witness_rows, std::make_pair(std::size_t{0}, std::size_t{3}));
  EXPECT_LT(rep.bound.epsilon_upper, Rational(6, 1000));
  EXPECT_LT(*rep.bound.pert_upper, Rational(3, 100));
  EXPECT_EQ(rep.bound.epsilon_sq, oracle::eps_sq(a));
  EXPECT_EQ(rep.delta, oracle::delta(a));
}

TEST(Certificate, FixturesA1A2) {
  auto a1 = fixture_exact("cert-A1"), a2 = fixture_exact("cert-A2");
  auto r1 = verify_certificate(a1), r2 = verify_certificate(a2);
  ASSERT_TRUE(r1.accepted());
  ASSERT_TRUE(r2.accepted());
  EXPECT_EQ(r1.delta, Rational(1, 268));
  EXPECT_EQ(r2.delta, Rational(2, 477));
  EXPECT_EQ(r1.bound.epsilon_sq, oracle::eps_sq(a1));
  EXPECT_EQ(r2.bound.epsilon_sq, oracle::eps_sq(a2));
  EXPECT_LT(r1.bound.epsilon_upper, Rational(7, 10000));
  EXPECT_LT(r2.bound.epsilon_upper, Rational(9, 10000));
  EXPECT_LT(*r1.bound.pert_upper, Rational(3, 1000));
  EXPECT_LT(*r2.bound.pert_upper, Rational(4, 1000));
}

TEST(Certificate, PatternsOfFixtures) {
  EXPECT_EQ(canonical_form(fixture_pattern("cert-A")), canonical_form(fixture_pattern("S2")));
  EXPECT_EQ(canonical_form(fixture_pattern("cert-A1")), canonical_form(fixture_pattern("S1")));
  EXPECT_EQ(canonical_form(fixture_pattern("cert-A2")), canonical_form(fixture_pattern("S3")));
}

TEST(Certificate, AcceptIsConfirmedByProjection) {
  for (auto name : {"cert-A", "cert-A1", "cert-A2"}) EXPECT_TRUE(projection_preserves_signs(fixture_exact(name)));
}

TEST(Certificate, RejectsFarFromOrthogonal) {
  auto rep = verify_certificate(exact_from_ints({{1, 2, 1}, {2, 1, -1}}));
  EXPECT_FALSE(rep.accepted());
  EXPECT_EQ(rep.reason, "perturbation bound not below delta");
  auto far = verify_certificate(exact_from_ints({{1, 2, 1}, {2, 1, 1}, {1, 1, 1}}));
  EXPECT_FALSE(far.accepted());
  EXPECT_FALSE(far.bound.pert_upper);
  auto r2 = verify_certificate(exact_from_ints({{1, 100}, {-100, 1}}));  // orthogonal but delta tiny
  EXPECT_TRUE(r2.accepted());
  auto r3 = verify_certificate(exact_from_ints({{1, 100}, {-10, 1}}));
  EXPECT_FALSE(r3.accepted());
}

TEST(Certificate, InputErrors) {
  EXPECT_THROW(verify_certificate(exact_from_ints({{1, 0}, {1, 1}})), std::invalid_argument);
  EXPECT_THROW(verify_certificate(exact_from_ints({{1}, {1}})), std::invalid_argument);
  EXPECT_THROW(verify_certificate(ExactMatrix()), std::invalid_argument);
}

TEST(Certificate, SingleRowAndIdenticalRows) {
  auto one = verify_certificate(exact_from_ints({{3, -1, 2}}));
  EXPECT_TRUE(one.accepted());
  EXPECT_EQ(*one.bound.pert_upper, Rational(0));
  auto same = verify_certificate(exact_from_ints({{1, 2, 3}, {1, 2, 3}}));
  EXPECT_FALSE(same.accepted());
  EXPECT_EQ(same.bound.epsilon_sq, Rational(1));
}

TEST(Certificate, InvariantUnderScalingAndSignedPermutation) {
  SplitMix64 rng(31);
  for (auto name : {"cert-A", "cert-A1", "cert-A2"}) {
    auto a = fixture_exact(name);
    auto base = verify_certificate(a);
    for (int t = 0; t < 20; ++t) {
      auto e = SignedPermEquivalence::random(a.rows(), a.cols(), rng);
      ExactMatrix b = apply_equiv(a, e);
      for (std::size_t i = 0; i < b.rows(); ++i) {
        Rational d(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 9));
        for (auto& x : b.row(i)) x *= d;
      }
      auto rep = verify_certificate(b);
      EXPECT_EQ(rep.accepted(), base.accepted());
      EXPECT_EQ(rep.delta, base.delta);
      EXPECT_EQ(rep.bound.epsilon_sq, base.bound.epsilon_sq);
    }
  }
}

TEST(Pert, TrivialValues) {
  EXPECT_EQ(pert_upper(1, Rational(1, 3)), Rational(0));
  EXPECT_EQ(pert_recursive(1, Rational(5, 7)), Rational(0));
  for (std::size_t m = 1; m <= 10; ++m) {
    EXPECT_EQ(pert_upper(m, Rational(0)), Rational(0));
    EXPECT_EQ(pert_recursive(m, Rational(0)), Rational(0));
  }
  EXPECT_LT(pert_upper(5, Rational(6, 1000)), Rational(3, 100));
  EXPECT_LT(pert_upper(5, Rational(7, 10000)), Rational(3, 1000));
}

TEST(Pert, Domain) {
  EXPECT_THROW(pert_upper(3, Rational(1, 2)), std::domain_error);
  EXPECT_THROW(pert_upper(3, Rational(-1, 10)), std::domain_error);
  EXPECT_THROW(pert_upper(0, Rational(0)), std::invalid_argument);
  EXPECT_NO_THROW(pert_upper(3, Rational(49, 100)));
}

TEST(Pert, MonotoneInEpsilonAndM) {
  for (std::size_t m = 2; m <= 8; ++m) {
    Rational prev = -1;
    for (int k = 0; k * (static_cast<int>(m) - 1) < 1000 && k <= 200; k += 5) {
      Rational eps(k, 1000);
      Rational v = pert_upper(m, eps);
      EXPECT_GE(v, prev) << "m=" << m << " k=" << k;
      prev = v;
      if ((m) * k < 1000) EXPECT_LE(v, pert_upper(m + 1, eps));
    }
  }
}

TEST(Pert, ClosedAndRecursiveAgree) {
  const unsigned bits = 96;
  Rational tol = pow2_neg(60);
  for (std::size_t m = 1; m <= 8; ++m)
    for (int k = 0; k < 25; ++k) {
      Rational eps(k, 25 * 10 * static_cast<long>(m));
      Rational a = pert_upper(m, eps, bits), b = pert_recursive(m, eps, bits);
      EXPECT_LE(abs(a - b), tol) << "m=" << m << " eps=" << eps;
    }
}

TEST(Pert, UpperBoundsTheDoubleValue) {
  for (std::size_t m = 2; m <= 6; ++m)
    for (int k = 1; k < 50; ++k) {
      double eps = k / (60.0 * static_cast<double>(m));
      Rational e = rational_from_double(eps);
      EXPECT_GE(to_double(pert_upper(m, e)), pert_double(m, eps) * (1 - 1e-12));
    }
}

TEST(Search, FindsAcceptedCertificates) {
  for (auto name : {"S1", "S2", "S3", "S4", "minimal-m4-d", "minimal-m3", "minimal-m5-a"}) {
    auto s = fixture_pattern(name);
    auto t0 = std::chrono::steady_clock::now();
    auto a = find_certificate(s, {}, 1);
    ASSERT_TRUE(a) << name;
    EXPECT_EQ(sgn_of(*a), s);
    EXPECT_TRUE(verify_certificate(*a).accepted());
    EXPECT_TRUE(projection_preserves_signs(*a));
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
  }
}

TEST(Search, DeterministicInSeed) {
  auto s = fixture_pattern("S2");
  EXPECT_EQ(find_certificate(s, {}, 9), find_certificate(s, {}, 9));
}

TEST(Search, RefusesUnsupportedPatterns) {
  EXPECT_FALSE(find_certificate(parse_pattern("+0\n++")));
  EXPECT_FALSE(find_certificate(parse_pattern("+\n+")));
  EXPECT_FALSE(find_certificate(parse_pattern("++\n++")));
  auto one = find_certificate(parse_pattern("+-+"));
  ASSERT_TRUE(one);
  EXPECT_TRUE(verify_certificate(*one).accepted());
}
