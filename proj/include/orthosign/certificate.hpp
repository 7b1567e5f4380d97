#pragma once

// Perturbation bounds, exact certificate verification and a numeric search
// for integer certificates of row orthogonality.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orthosign/exact_linalg.hpp"
#include "orthosign/matrix.hpp"
#include "orthosign/pattern.hpp"
#include "orthosign/rng.hpp"

namespace orthosign {

inline constexpr unsigned kDefaultSqrtBits = 64;

namespace detail {

inline void check_pert_domain(std::size_t m, const Rational& eps) {
  if (m == 0) throw std::invalid_argument("pert: m must be positive");
  if (sgn(eps) < 0) throw std::domain_error("pert: negative epsilon");
  if (m >= 2 && eps * static_cast<unsigned long>(m - 1) >= 1)
    throw std::domain_error("pert: epsilon must be below 1/(m-1)");
}

}  // namespace detail

/// Rational upper bound on pert_m(eps) from the closed form.
inline Rational pert_upper(std::size_t m, const Rational& eps, unsigned bits = kDefaultSqrtBits) {
  detail::check_pert_domain(m, eps);
  if (m == 1) return Rational(0);
  const unsigned long mm = m;
  Rational radicand = (1 + eps) / ((1 - Rational(mm - 2) * eps) * (1 - Rational(mm - 1) * eps));
  Rational u = rational_sqrt_upper_bound(radicand, bits) - 1;
  u.canonicalize();
  return u;
}

/// Rational upper bound on pert_m(eps) from the recursion in m.
inline Rational pert_recursive(std::size_t m, const Rational& eps, unsigned bits = kDefaultSqrtBits) {
  detail::check_pert_domain(m, eps);
  if (m == 1) return Rational(0);
  Rational factor = rational_sqrt_upper_bound(Rational((1 + eps) / (1 - eps)), bits);
  Rational inner = pert_recursive(m - 1, Rational(eps / (1 - eps)), bits);
  Rational u = factor * (inner + 1) - 1;
  u.canonicalize();
  return u;
}

/// Closed form in binary64, for plotting and heuristics only.
inline double pert_double(std::size_t m, double eps) {
  if (m <= 1) return 0.0;
  double d = static_cast<double>(m);
  if (eps * (d - 1) >= 1) return INFINITY;
  return std::sqrt((1 + eps) / ((1 - (d - 2) * eps) * (1 - (d - 1) * eps))) - 1;
}

/// min|x_i| / max|x_j|; zero if some entry vanishes.
template <class Row>
Rational delta_of(const Row& x) {
  Rational lo, hi;
  bool first = true;
  for (const Rational& v : x) {
    Rational a = abs(v);
    if (first) {
      lo = hi = a;
      first = false;
    } else {
      if (a < lo) lo = a;
      if (a > hi) hi = a;
    }
  }
  if (first || sgn(hi) == 0) throw std::invalid_argument("delta_of: zero vector");
  Rational d = lo / hi;
  d.canonicalize();
  return d;
}

struct EpsilonSq {
  Rational value;
  std::pair<std::size_t, std::size_t> rows{0, 0};
};

/// max over row pairs of <x_i,x_j>^2 / (|x_i|^2 |x_j|^2), exactly.
inline EpsilonSq epsilon_sq(const ExactMatrix& a) {
  ExactMatrix g = gram(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (sgn(g(i, i)) == 0) throw std::invalid_argument("epsilon_sq: zero row " + std::to_string(i));
  EpsilonSq best{Rational(0), {0, a.rows() > 1 ? 1 : 0}};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = i + 1; k < a.rows(); ++k) {
      Rational v = g(i, k) * g(i, k) / (g(i, i) * g(k, k));
      if (v > best.value) best = {v, {i, k}};
    }
  best.value.canonicalize();
  return best;
}

struct PertBound {
  std::size_t m = 0;
  Rational epsilon_sq;
  Rational epsilon_upper;
  std::optional<Rational> pert_upper;
};

enum class CertVerdict { Accept, Reject };

struct CertificateReport {
  CertVerdict verdict = CertVerdict::Reject;
  Rational delta;
  PertBound bound;
  std::pair<std::size_t, std::size_t> witness_rows{0, 0};
  std::size_t delta_row = 0;
  std::string reason;

  bool accepted() const { return verdict == CertVerdict::Accept; }
};

/// Exact check of the hypotheses of the approximate-orthogonality theorem.
/// Accept proves that sgn(A) allows row orthogonality; Reject proves nothing.
inline CertificateReport verify_certificate(const ExactMatrix& a, unsigned bits = kDefaultSqrtBits) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("verify_certificate: empty matrix");
  if (a.rows() > a.cols()) throw std::invalid_argument("verify_certificate: more rows than columns");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) == 0)
        throw std::invalid_argument("verify_certificate: zero entry at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");

  CertificateReport rep;
  const std::size_t m = a.rows();
  rep.delta = delta_of(a.row(0));
  for (std::size_t i = 1; i < m; ++i) {
    Rational d = delta_of(a.row(i));
    if (d < rep.delta) {
      rep.delta = d;
      rep.delta_row = i;
    }
  }
  EpsilonSq e = epsilon_sq(a);
  rep.witness_rows = e.rows;
  rep.bound.m = m;
  rep.bound.epsilon_sq = e.value;
  rep.bound.epsilon_upper = rational_sqrt_upper_bound(e.value, bits);

  if (m >= 2 && rep.bound.epsilon_upper * static_cast<unsigned long>(m - 1) >= 1) {
    rep.reason = "epsilon bound not below 1/(m-1)";
    return rep;
  }
  rep.bound.pert_upper = pert_upper(m, rep.bound.epsilon_upper, bits);
  if (*rep.bound.pert_upper < rep.delta) {
    rep.verdict = CertVerdict::Accept;
  } else {
    rep.reason = "perturbation bound not below delta";
  }
  return rep;
}

/// Runs the constructive projection (a reordering of modified Gram-Schmidt,
/// smallest sup-norm vector first) in extended precision and reports whether
/// every entry keeps its sign. Independent float check of an Accept.
inline bool projection_preserves_signs(const ExactMatrix& a) {
  using LD = long double;
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<LD>> x(m, std::vector<LD>(n));
  std::vector<LD> scale(m);
  for (std::size_t i = 0; i < m; ++i) {
    LD s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      x[i][j] = static_cast<LD>(to_double(a(i, j)));
      s += x[i][j] * x[i][j];
    }
    s = std::sqrt(s);
    scale[i] = s;
    for (auto& v : x[i]) v /= s;
  }
  auto supnorm = [](const std::vector<LD>& v) {
    LD s = 0;
    for (LD t : v) s = std::max(s, std::fabs(t));
    return s;
  };
  std::vector<bool> done(m, false);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t p = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && (p == m || supnorm(x[i]) < supnorm(x[p]))) p = i;
    done[p] = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      LD ip = 0;
      for (std::size_t j = 0; j < n; ++j) ip += x[i][j] * x[p][j];
      LD nn = 0;
      for (std::size_t j = 0; j < n; ++j) {
        x[i][j] -= ip * x[p][j];
        nn += x[i][j] * x[i][j];
      }
      nn = std::sqrt(nn);
      for (auto& v : x[i]) v /= nn;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LD v = x[i][j] * scale[i];
      if ((v > 0) != (sgn(a(i, j)) > 0) || v == 0) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Certificate search.

struct SearchConfig {
  double scale = 600.0;
  unsigned doublings = 4;
  unsigned iterations = 500;
  unsigned restarts = 20;
  std::vector<double> floors{0.1, 0.05, 0.02, 0.2};
  unsigned sqrt_bits = kDefaultSqrtBits;
};

namespace detail {

using Mat = Eigen::MatrixXd;

/// Nearest matrix with orthonormal rows: (X Xᵀ)^(-1/2) X.
inline std::optional<Mat> polar_rows(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(x * x.transpose());
  if (es.info() != Eigen::Success) return std::nullopt;
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() <= 1e-12 * std::max(1.0, ev.maxCoeff())) return std::nullopt;
  Eigen::VectorXd inv_sqrt = ev.array().rsqrt();
  return Mat(es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose() * x);
}

inline std::optional<ExactMatrix> round_and_verify(const Mat& q, double scale, unsigned bits) {
  const double qmax = q.cwiseAbs().maxCoeff();
  ExactMatrix a(q.rows(), q.cols());
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      double v = std::nearbyint(q(i, j) / qmax * scale);
      if (v == 0) return std::nullopt;
      a(i, j) = Rational(static_cast<long>(v));
    }
  if (verify_certificate(a, bits).accepted()) return a;
  return std::nullopt;
}

}  // namespace detail

/// Randomized search for an integer matrix that verify_certificate accepts.
/// Requires a wide nowhere-zero pattern; returns nullopt otherwise or when the
/// budget runs out. Deterministic in (S, cfg, seed).
inline std::optional<ExactMatrix> find_certificate(const SignPattern& s, const SearchConfig& cfg = {},
                                                   std::uint64_t seed = 0) {
  if (!s.is_wide() || !s.is_nowhere_zero()) return std::nullopt;
  const auto m = static_cast<Eigen::Index>(s.rows());
  const auto n = static_cast<Eigen::Index>(s.cols());
  detail::Mat sg(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) sg(i, j) = to_int(s(i, j));
  if (m == 1) return unit_realization(s);

  for (unsigned restart = 0; restart < cfg.restarts; ++restart) {
    SplitMix64 rng = SplitMix64::stream(seed, restart);
    const double floor = (cfg.floors.empty() ? 0.1 : cfg.floors[restart % cfg.floors.size()]) /
                         std::sqrt(static_cast<double>(n));
    detail::Mat x(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) x(i, j) = sg(i, j) * (0.5 + rng.uniform01());
    for (unsigned it = 0; it < cfg.iterations; ++it) {
      auto q = detail::polar_rows(x);
      if (!q) break;
      bool signs_ok = true;
      double min_abs = INFINITY;
      for (Eigen::Index i = 0; i < m && signs_ok; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          double v = sg(i, j) * (*q)(i, j);
          if (v <= 0) {
            signs_ok = false;
            break;
          }
          min_abs = std::min(min_abs, v);
        }
      if (signs_ok && min_abs >= floor / 2) {
        double scale = cfg.scale;
        for (unsigned d = 0; d <= cfg.doublings; ++d, scale *= 2)
          if (auto a = detail::round_and_verify(*q, scale, cfg.sqrt_bits)) return a;
      }
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          x(i, j) = sg(i, j) * (*q)(i, j) >= floor ? (*q)(i, j) : sg(i, j) * floor;
    }
  }
  return std::nullopt;
}

}  // namespace orthosign
