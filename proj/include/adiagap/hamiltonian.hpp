#pragma once

// H(s) = (1-s) H0 + s H1 for f(x) = |x| + b(|x|), in the (n+1)-dimensional
// symmetric subspace and, for small n, in the full 2^n computational basis.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "adiagap/barrier.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/tridiagonal.hpp"

namespace adiagap {

inline constexpr int kFullHilbertMaxQubits = 14;

inline void check_schedule(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("schedule parameter s must lie in [0,1]");
}

inline TridiagonalMatrix build_symmetric(long n, double s, const BarrierSpec& spec) {
  if (n < 1) throw DomainError("build_symmetric: n must be >= 1");
  check_schedule(s);
  const auto dim = static_cast<std::size_t>(n) + 1;
  std::vector<double> diag(dim), off(dim - 1);
  const double nn = static_cast<double>(n);
  const double base = 0.5 * (1.0 - s) * nn;
  const double hop = -0.5 * (1.0 - s);
  for (long h = 0; h <= n; ++h) {
    const double hh = static_cast<double>(h);
    diag[static_cast<std::size_t>(h)] = base + s * (hh + barrier_value(spec, n, h));
    if (h < n) off[static_cast<std::size_t>(h)] = hop * std::sqrt((hh + 1.0) * (nn - hh));
  }
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

// Dense 2^n matrix, qubit i is bit i of the basis index. Oracle use only.
inline Eigen::MatrixXd build_full(int n, double s, const BarrierSpec& spec) {
  if (n < 1) throw DomainError("build_full: n must be >= 1");
  if (n > kFullHilbertMaxQubits) throw SizeLimitError("build_full: n > 14 is not supported");
  check_schedule(s);
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    const int weight = std::popcount(static_cast<std::uint64_t>(x));
    // Each single-qubit term (1/2)[[1,-1],[-1,1]] contributes 1/2 on the diagonal.
    h(x, x) = (1.0 - s) * 0.5 * n + s * (weight + barrier_value(spec, n, weight));
    for (int i = 0; i < n; ++i) h(x, x ^ (std::int64_t{1} << i)) = -0.5 * (1.0 - s);
  }
  return h;
}

inline double unperturbed_gap(double s) {
  check_schedule(s);
  return std::sqrt(1.0 - 2.0 * s + 2.0 * s * s);
}

// Closed-form barrier-free ground state in the symmetric subspace, assembled
// in log space so that binomial coefficients never overflow.
inline std::vector<double> unperturbed_ground_state(long n, double s) {
  if (n < 1) throw DomainError("unperturbed_ground_state: n must be >= 1");
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("unperturbed_ground_state: s must lie in [0,1)");
  const double delta = unperturbed_gap(s);
  const double nn = static_cast<double>(n);
  const double log_up = std::log(s + delta);
  const double log_down = std::log(1.0 - s);
  const double log_norm = 0.5 * nn * std::log(2.0 * delta * (delta + s));
  const double lg_n1 = std::lgamma(nn + 1.0);
  std::vector<double> logs(static_cast<std::size_t>(n) + 1);
  double peak = -INFINITY;
  for (long h = 0; h <= n; ++h) {
    const double hh = static_cast<double>(h);
    const double log_binom = lg_n1 - std::lgamma(hh + 1.0) - std::lgamma(nn - hh + 1.0);
    const double l = 0.5 * log_binom + (nn - hh) * log_up + hh * log_down - log_norm;
    logs[static_cast<std::size_t>(h)] = l;
    peak = std::max(peak, l);
  }
  std::vector<double> amp(logs.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    amp[i] = std::exp(logs[i] - peak);
    norm2 += amp[i] * amp[i];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : amp) v *= inv;
  return amp;
}

}  // namespace adiagap
