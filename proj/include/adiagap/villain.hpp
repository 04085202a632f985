#pragma once

// Discrete large-spin operators in the eigenbasis of j_z = J_z / J, q = m/J,
// m = -J..J (index 0 is q = -1). Used to check the exact shift-operator form
// of j_x and the semiclassical potential of the symmetric Hamiltonian.

#include <Eigen/Sparse>
#include <cmath>
#include <vector>

#include "adiagap/barrier.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/gapscan.hpp"
#include "adiagap/model.hpp"

namespace adiagap {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct SpinOperators {
  double J = 0.0;
  double epsilon = 0.0;  // 1/J
  int dim = 0;           // 2J + 1
  std::vector<double> q;  // diagonal of q_diag
  SparseMatrix jz;
  SparseMatrix jx;
  SparseMatrix p_shift;  // |q + eps><q|
  SparseMatrix m_shift;  // |q - eps><q|
  SparseMatrix q_diag;
  SparseMatrix a_op;     // (P - M) / (2 eps), discrete first derivative
  SparseMatrix b_op;     // (P - 2I + M) / eps^2, discrete second derivative
  SparseMatrix identity;
};

namespace detail {

inline SparseMatrix diagonal_matrix(const std::vector<double>& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  SparseMatrix m(n, n);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(d.size());
  for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, d[static_cast<std::size_t>(i)]);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline SparseMatrix shift_matrix(int dim, int offset) {
  SparseMatrix m(dim, dim);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < dim; ++i) {
    const int r = i + offset;
    if (r >= 0 && r < dim) t.emplace_back(r, i, 1.0);
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

}  // namespace detail

inline SpinOperators build_spin_ops(double J) {
  const double twice = 2.0 * J;
  if (!(J >= 0.5) || twice != std::floor(twice)) throw DomainError("build_spin_ops: 2J must be a positive integer");
  SpinOperators ops;
  ops.J = J;
  ops.epsilon = 1.0 / J;
  ops.dim = static_cast<int>(twice) + 1;
  const double eps = ops.epsilon;
  ops.q.resize(static_cast<std::size_t>(ops.dim));
  for (int i = 0; i < ops.dim; ++i) ops.q[static_cast<std::size_t>(i)] = eps * (static_cast<double>(i) - J);

  ops.q_diag = detail::diagonal_matrix(ops.q);
  ops.jz = ops.q_diag;
  ops.identity = detail::diagonal_matrix(std::vector<double>(static_cast<std::size_t>(ops.dim), 1.0));
  ops.p_shift = detail::shift_matrix(ops.dim, +1);
  ops.m_shift = detail::shift_matrix(ops.dim, -1);

  // <m+1| J_x |m> = sqrt((J-m)(J+m+1))/2; scaled by eps this is
  // sqrt((1-q)(1+q+eps))/2 with q the source state.
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i + 1 < ops.dim; ++i) {
    const double qi = ops.q[static_cast<std::size_t>(i)];
    const double v = 0.5 * std::sqrt(std::max(0.0, (1.0 - qi) * (1.0 + qi + eps)));
    t.emplace_back(i + 1, i, v);
    t.emplace_back(i, i + 1, v);
  }
  ops.jx.resize(ops.dim, ops.dim);
  ops.jx.setFromTriplets(t.begin(), t.end());

  ops.a_op = (ops.p_shift - ops.m_shift) * (0.5 / eps);
  ops.b_op = (ops.p_shift - 2.0 * ops.identity + ops.m_shift) * (1.0 / (eps * eps));
  return ops;
}

// Rebuilds j_x from (I +- eps A + eps^2/2 B) and the square-root prefactors and
// returns the largest entry-wise deviation from the directly assembled j_x.
// The prefactor multiplies the state before it is shifted, i.e.
//   j_x = 1/2 [ P sqrt((1-q)(1+q+eps)) + M sqrt((1+q)(1-q+eps)) ].
inline double verify_jx_identity(const SpinOperators& ops) {
  const double eps = ops.epsilon;
  std::vector<double> up(ops.q.size()), down(ops.q.size());
  for (std::size_t i = 0; i < ops.q.size(); ++i) {
    const double q = ops.q[i];
    up[i] = std::sqrt(std::max(0.0, (1.0 - q) * (1.0 + q + eps)));
    down[i] = std::sqrt(std::max(0.0, (1.0 + q) * (1.0 - q + eps)));
  }
  const SparseMatrix half_b = ops.b_op * (0.5 * eps * eps);
  const SparseMatrix a_eps = ops.a_op * eps;
  const SparseMatrix p_rebuilt = ops.identity + a_eps + half_b;
  const SparseMatrix m_rebuilt = ops.identity - a_eps + half_b;
  const SparseMatrix jx_rebuilt =
      0.5 * (SparseMatrix(p_rebuilt * detail::diagonal_matrix(up)) +
             SparseMatrix(m_rebuilt * detail::diagonal_matrix(down)));
  return detail::max_abs(SparseMatrix(jx_rebuilt - ops.jx));
}

inline double verify_jx_identity(double J) { return verify_jx_identity(build_spin_ops(J)); }

// Constant that puts the bottom of the semiclassical well (q = -1/2 at s*) at zero.
inline double delta_constant(double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("delta_constant: epsilon must be >= 0");
  return kSqrt3Minus1 * (24.0 + 12.0 * epsilon) / 24.0;
}

struct PotentialValue {
  double value = 0.0;
  bool delta_applied = false;  // false away from s*, where the offset is left at zero
};

// s q + s r(q) + Delta - (1-s)(sqrt(1-q^2) + eps / (2 sqrt(1-q^2))),
// with r(q) = eps b(J q + J) and n = 2/eps.
inline PotentialValue semiclassical_potential(double s, double q, double epsilon, const BarrierSpec& spec) {
  if (!(std::abs(q) < 1.0)) throw DomainError("semiclassical_potential: |q| must be < 1");
  if (!(epsilon >= 0.0)) throw DomainError("semiclassical_potential: epsilon must be >= 0");
  check_schedule(s);
  double r = 0.0;
  if (epsilon > 0.0 && !spec.is_zero()) {
    const long n = std::lround(2.0 / epsilon);
    const double J = 1.0 / epsilon;
    r = epsilon * barrier_profile(spec, n, J * q + J);
  }
  PotentialValue out;
  out.delta_applied = std::abs(s - critical_s()) <= 1e-12;
  const double delta = out.delta_applied ? delta_constant(epsilon) : 0.0;
  const double root = std::sqrt(1.0 - q * q);
  out.value = s * q + s * r + delta - (1.0 - s) * (root + epsilon / (2.0 * root));
  return out;
}

// x^2 coefficient of the s* potential about q = -1/2 (zero barrier),
// Richardson-extrapolated central difference.
inline double potential_quadratic_coefficient(double epsilon, double h = 1e-3) {
  const BarrierSpec zero = BarrierSpec::none();
  auto v = [&](double q) { return semiclassical_potential(critical_s(), q, epsilon, zero).value; };
  auto second = [&](double step) { return (v(-0.5 + step) - 2.0 * v(-0.5) + v(-0.5 - step)) / (step * step); };
  const double d = (4.0 * second(0.5 * h) - second(h)) / 3.0;
  return 0.5 * d;
}

// -(1-s) j_x + s j_z + s r(j_z) + Delta for the spin-J representation of an
// n = 2J qubit problem.
inline Eigen::MatrixXd spin_hamiltonian(const SpinOperators& ops, double s, const BarrierSpec& spec, double delta) {
  const long n = std::lround(2.0 * ops.J);
  Eigen::MatrixXd h = -(1.0 - s) * Eigen::MatrixXd(ops.jx);
  for (int i = 0; i < ops.dim; ++i) {
    const double q = ops.q[static_cast<std::size_t>(i)];
    h(i, i) += s * q + s * ops.epsilon * barrier_value(spec, n, i) + delta;
  }
  return h;
}

}  // namespace adiagap
