#pragma once

// Random sign patterns under mu_p, Monte-Carlo cover probabilities, and the
// closed-form bounds they are compared against.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "orthosign/combinatorics.hpp"
#include "orthosign/pattern.hpp"
#include "orthosign/rng.hpp"
#include "orthosign/scalar.hpp"

namespace orthosign {

/// Distribution on {+1, -1, 0} with P(+1) = P(-1) = p.
class MuP {
public:
  explicit MuP(Rational p) : p_(std::move(p)) {
    p_.canonicalize();
    if (sgn(p_) <= 0 || p_ > Rational(1, 2)) throw std::invalid_argument("mu_p: p must lie in (0, 1/2]");
    // threshold = floor(p * 2^64)
    Integer scaled = p_.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
    scaled /= p_.get_den();
    Integer hi = scaled >> 32, lo = scaled - (hi << 32);
    threshold_ = (static_cast<unsigned __int128>(hi.get_ui()) << 32) | lo.get_ui();
  }

  const Rational& p() const { return p_; }

  Sign draw(SplitMix64& rng) const {
    unsigned __int128 u = rng();
    if (u < threshold_) return Sign::Plus;
    if (u < 2 * threshold_) return Sign::Minus;
    return Sign::Zero;
  }

private:
  Rational p_;
  unsigned __int128 threshold_ = 0;
};

inline SignPattern sample_pattern(std::size_t m, std::size_t n, const MuP& mu, SplitMix64& rng) {
  std::vector<Sign> e(m * n);
  for (auto& x : e) x = mu.draw(rng);
  return SignPattern(m, n, std::move(e));
}

inline SignPattern sample_pattern(std::size_t m, std::size_t n, const MuP& mu, std::uint64_t seed) {
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  return sample_pattern(m, n, mu, rng);
}

// ---------------------------------------------------------------------------
// Intervals and bounds.

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct Interval {
  double lo = 0, hi = 1;
  double half_width() const { return (hi - lo) / 2; }
};

inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kWilsonZ95) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (ph + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Rational upper bound on exp(-x) for x >= 0: extended-precision value
/// nudged up a few ulps.
inline Rational exp_neg_upper(long double x) {
  long double v = std::exp(-x);
  for (int k = 0; k < 4; ++k) v = std::nextafter(v, 2.0L);
  double d = static_cast<double>(v);
  if (static_cast<long double>(d) < v) d = std::nextafter(d, 2.0);
  Rational q(d);
  q.canonicalize();
  return q;
}

/// 1 - m e^{-m/8} - (m/p)(1-p)^r, rounded down, clamped to [0, 1].
inline Rational cover_lower_bound(std::size_t m, const Rational& p, std::size_t r) {
  Rational pow = 1;
  for (std::size_t k = 0; k < r; ++k) pow *= (1 - p);
  Rational val = 1 - Rational(static_cast<unsigned long>(m)) * exp_neg_upper(static_cast<long double>(m) / 8) -
                 Rational(static_cast<unsigned long>(m)) / p * pow;
  val.canonicalize();
  if (sgn(val) < 0) return Rational(0);
  if (val > 1) return Rational(1);
  return val;
}

/// Smallest integer n with n >= m^2 + m r + 2m/p.
inline std::size_t cover_min_columns(std::size_t m, const Rational& p, std::size_t r) {
  Rational need = Rational(static_cast<unsigned long>(m * m + m * r)) + Rational(static_cast<unsigned long>(2 * m)) / p;
  need.canonicalize();
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
  return c.get_ui();
}

struct SimulationReport {
  std::size_t m = 0, n = 0, r = 0, trials = 0;
  Rational p;
  std::uint64_t seed = 0;
  std::size_t successes = 0;
  std::optional<std::size_t> successes_exact;
  double empirical = 0;
  Interval wilson;
  Rational lower_bound;
  bool bound_applicable = false;
};

/// Runs the greedy cover search on `trials` independent mu_p samples; trial k
/// uses stream (seed, k).
inline SimulationReport cover_probability(std::size_t m, std::size_t n, const Rational& p, std::size_t r,
                                          std::size_t trials, std::uint64_t seed, bool exact_oracle = false) {
  if (m == 0 || n == 0) throw std::invalid_argument("cover_probability: m and n must be positive");
  if (r > m) throw std::invalid_argument("cover_probability: r must lie in {0, ..., m}");
  MuP mu(p);
  SimulationReport rep;
  rep.m = m;
  rep.n = n;
  rep.p = mu.p();
  rep.r = r;
  rep.trials = trials;
  rep.seed = seed;
  rep.bound_applicable = n >= cover_min_columns(m, mu.p(), r);
  rep.lower_bound = cover_lower_bound(m, mu.p(), r);
  const bool run_exact = exact_oracle && m <= ExactCoverLimits{}.max_rows && n <= ExactCoverLimits{}.max_cols;
  if (run_exact) rep.successes_exact = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    SplitMix64 rng = SplitMix64::stream(seed, k);
    SignPattern s = sample_pattern(m, n, mu, rng);
    if (find_cover_greedy(s, r)) ++rep.successes;
    if (run_exact && find_cover_exact(s)) ++*rep.successes_exact;
  }
  rep.empirical = trials ? static_cast<double>(rep.successes) / static_cast<double>(trials) : 0.0;
  rep.wilson = wilson_interval(rep.successes, trials);
  return rep;
}

struct ThresholdBounds {
  std::size_t n_large_sparse = 0;             // m^2 + m log_{1/(1-p)} m + omega m
  std::optional<std::size_t> n_plus_minus;    // ceil(17 m^2 ln m), p = 1/2 only
};

inline ThresholdBounds threshold_bounds(std::size_t m, const Rational& p, double omega_factor = 4.0) {
  MuP mu(p);  // validates p
  if (m == 0) throw std::invalid_argument("threshold_bounds: m must be positive");
  const long double md = static_cast<long double>(m);
  const long double q = 1.0L - static_cast<long double>(to_double(mu.p()));
  ThresholdBounds b;
  b.n_large_sparse = static_cast<std::size_t>(std::ceil(md * md + md * std::log(md) / std::log(1.0L / q) +
                                                        static_cast<long double>(omega_factor) * md));
  if (mu.p() == Rational(1, 2))
    b.n_plus_minus = static_cast<std::size_t>(std::ceil(17.0L * md * md * std::log(md)));
  return b;
}

/// sum_{k=1}^{m-1} C(m,k+1) C(m,m+1-k) 2^{-k(m-k)}, exactly.
inline Rational rank1_bound_sum(std::size_t m) {
  if (m < 2) throw std::invalid_argument("rank1_bound_sum: m must be at least 2");
  Rational total = 0;
  for (std::size_t k = 1; k + 1 <= m; ++k) {
    Integer a, b;
    mpz_bin_uiui(a.get_mpz_t(), m, k + 1);
    mpz_bin_uiui(b.get_mpz_t(), m, m + 1 - k);
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k * (m - k));
    total += Rational(a * b, den);
  }
  total.canonicalize();
  return total;
}

/// Fraction of uniform +-1 m x m samples containing the rank-1 obstruction.
inline SimulationReport rank1_frequency(std::size_t m, std::size_t trials, std::uint64_t seed) {
  MuP mu(Rational(1, 2));
  SimulationReport rep;
  rep.m = rep.n = m;
  rep.p = mu.p();
  rep.trials = trials;
  rep.seed = seed;
  for (std::size_t k = 0; k < trials; ++k) {
    SplitMix64 rng = SplitMix64::stream(seed, k);
    if (rank1_obstruction(sample_pattern(m, m, mu, rng))) ++rep.successes;
  }
  rep.empirical = trials ? static_cast<double>(rep.successes) / static_cast<double>(trials) : 0.0;
  rep.wilson = wilson_interval(rep.successes, trials);
  return rep;
}

}  // namespace orthosign
