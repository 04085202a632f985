#pragma once

// Lowest eigenpairs of a symmetric tridiagonal matrix by Sturm-sequence
// bisection and inverse iteration. O(dim) memory, O(dim) work per count.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "adiagap/errors.hpp"
#include "adiagap/tridiagonal.hpp"

namespace adiagap {

struct EigenPair {
  double value = 0.0;
  std::optional<std::vector<double>> vector;
};

namespace detail {

inline double pivot_floor(const TridiagonalMatrix& t) {
  double max_b2 = 1.0;
  for (double b : t.offdiag()) max_b2 = std::max(max_b2, b * b);
  return std::numeric_limits<double>::min() * max_b2;
}

inline std::size_t sturm_count(const TridiagonalMatrix& t, double sigma, double pivmin) {
  const auto& a = t.diag();
  const auto& b = t.offdiag();
  std::size_t count = 0;
  double d = a[0] - sigma;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  const std::size_t n = a.size();
  for (std::size_t i = 1; i < n; ++i) {
    d = (a[i] - sigma) - b[i - 1] * b[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

// Several shifts in one pass. Each shift is its own chain of divisions, and
// the chains overlap in the pipeline, so up to ~4 shifts cost about as much
// as one.
template <std::size_t K>
inline std::array<std::size_t, K> sturm_counts(const TridiagonalMatrix& t, const std::array<double, K>& sigma,
                                               double pivmin) {
  const auto& a = t.diag();
  const auto& b = t.offdiag();
  std::array<double, K> d;
  std::array<std::size_t, K> count{};
  for (std::size_t k = 0; k < K; ++k) {
    d[k] = a[0] - sigma[k];
    if (std::abs(d[k]) < pivmin) d[k] = -pivmin;
    count[k] += d[k] < 0.0;
  }
  const std::size_t n = a.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double b2 = b[i - 1] * b[i - 1];
    for (std::size_t k = 0; k < K; ++k) {
      d[k] = (a[i] - sigma[k]) - b2 / d[k];
      if (std::abs(d[k]) < pivmin) d[k] = -pivmin;
      count[k] += d[k] < 0.0;
    }
  }
  return count;
}

}  // namespace detail

// Number of eigenvalues strictly below sigma (negative pivots of the shifted
// LDL^T factorization).
inline std::size_t sturm_count(const TridiagonalMatrix& t, double sigma) {
  return detail::sturm_count(t, sigma, detail::pivot_floor(t));
}

// Bisection stops at this bracket width by default: a few ulps of the largest
// spectral bound, i.e. as tight as the Sturm count itself resolves.
inline double default_tolerance(const TridiagonalMatrix& t) {
  const auto [lo, hi] = t.gershgorin();
  return 4.0 * std::numeric_limits<double>::epsilon() *
         std::max({1.0, std::abs(lo), std::abs(hi)});
}

// (lambda0, lambda1), each bracketed to width <= abs_tol (or to adjacent
// doubles, whichever comes first).
inline std::pair<double, double> lowest_two(const TridiagonalMatrix& t, double abs_tol) {
  if (!(abs_tol > 0.0)) throw ParameterError("lowest_two: abs_tol must be > 0");
  if (t.dim() < 2) throw ParameterError("lowest_two: dimension must be >= 2");
  const double pivmin = detail::pivot_floor(t);
  auto [g_lo, g_hi] = t.gershgorin();
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(g_lo), std::abs(g_hi)) +
                     2.0 * pivmin;
  g_lo -= pad;
  g_hi += pad;

  // Invariant for index k: count(lo) <= k < count(hi).
  double lo0 = g_lo, hi0 = g_hi, lo1 = g_lo, hi1 = g_hi;
  auto update = [&](double mid, std::size_t c) {
    if (c >= 1) hi0 = std::min(hi0, mid);
    else lo0 = std::max(lo0, mid);
    if (c >= 2) hi1 = std::min(hi1, mid);
    else lo1 = std::max(lo1, mid);
  };
  auto open = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return hi - lo > abs_tol && mid > lo && mid < hi;
  };
  // Multisection with four shifts per pass: spread over the joint bracket
  // until lambda0 and lambda1 separate, then over whichever brackets are
  // still open. A shift that rounds onto a bracket end becomes the midpoint.
  std::array<double, 4> shifts;
  auto spread = [&](double lo, double hi, std::size_t first, std::size_t k) {
    const double mid = 0.5 * (lo + hi);
    for (std::size_t j = 0; j < k; ++j) {
      const double x = lo + (hi - lo) * static_cast<double>(j + 1) / static_cast<double>(k + 1);
      shifts[first + j] = (x > lo && x < hi) ? x : mid;
    }
  };
  for (;;) {
    const bool open0 = open(lo0, hi0), open1 = open(lo1, hi1);
    if (!open0 && !open1) break;
    if (open0 && open1 && hi0 > lo1) {
      spread(lo0, hi1, 0, 4);
    } else if (open0 && open1) {
      spread(lo0, hi0, 0, 2);
      spread(lo1, hi1, 2, 2);
    } else if (open0) {
      spread(lo0, hi0, 0, 4);
    } else {
      spread(lo1, hi1, 0, 4);
    }
    const auto counts = detail::sturm_counts(t, shifts, pivmin);
    for (std::size_t j = 0; j < shifts.size(); ++j) update(shifts[j], counts[j]);
  }
  return {0.5 * (lo0 + hi0), 0.5 * (lo1 + hi1)};
}

inline std::pair<double, double> lowest_two(const TridiagonalMatrix& t) {
  return lowest_two(t, default_tolerance(t));
}

// Unit eigenvector for an eigenvalue approximation `lambda` by inverse
// iteration with a safeguarded LDL^T factorization of T - lambda I. The
// largest-magnitude component is made positive.
inline std::vector<double> eigenvector(const TridiagonalMatrix& t, double lambda,
                                       int max_iterations = 8) {
  const std::size_t n = t.dim();
  const auto& a = t.diag();
  const auto& b = t.offdiag();
  const double scale = std::max(1.0, t.norm_inf());
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivmin = eps * scale * 1e-3;

  std::vector<double> d(n), l(n > 0 ? n - 1 : 0);
  d[0] = a[0] - lambda;
  if (std::abs(d[0]) < pivmin) d[0] = std::signbit(d[0]) ? -pivmin : pivmin;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    l[i] = b[i] / d[i];
    d[i + 1] = (a[i + 1] - lambda) - l[i] * b[i];
    if (std::abs(d[i + 1]) < pivmin) d[i + 1] = std::signbit(d[i + 1]) ? -pivmin : pivmin;
  }

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double residual = INFINITY;
  const double target = 1e3 * eps * scale;
  for (int it = 0; it < max_iterations; ++it) {
    // Solve L D L^T x = v in place.
    for (std::size_t i = 1; i < n; ++i) v[i] -= l[i - 1] * v[i - 1];
    for (std::size_t i = 0; i < n; ++i) v[i] /= d[i];
    for (std::size_t i = n - 1; i-- > 0;) v[i] -= l[i] * v[i + 1];

    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    const double inv = 1.0 / std::sqrt(norm2);
    if (!std::isfinite(inv)) break;
    for (double& x : v) x *= inv;

    const auto tv = t.apply(v);
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += v[i] * tv[i];
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(tv[i] - rq * v[i]));
    if (residual <= target) {
      const auto big = std::max_element(v.begin(), v.end(),
                                        [](double x, double y) { return std::abs(x) < std::abs(y); });
      if (*big < 0.0)
        for (double& x : v) x = -x;
      return v;
    }
  }
  std::ostringstream msg;
  msg << "eigenvector: inverse iteration did not converge (residual " << residual << ")";
  throw ConvergenceError(msg.str(), residual);
}

inline EigenPair eigenpair(const TridiagonalMatrix& t, double lambda) {
  return EigenPair{lambda, eigenvector(t, lambda)};
}

}  // namespace adiagap
