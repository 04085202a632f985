#pragma once

// Independent reference for the symmetric reduction: Rayleigh-Ritz of the
// full 2^n matrix on the orthonormal Dicke basis.

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// Column h is the normalized uniform superposition over Hamming weight h.
inline Eigen::MatrixXd dicke_basis(int n) {
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, n + 1);
  std::vector<double> count(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t x = 0; x < dim; ++x) count[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(x)))] += 1.0;
  for (std::int64_t x = 0; x < dim; ++x) {
    const int h = std::popcount(static_cast<std::uint64_t>(x));
    b(x, h) = 1.0 / std::sqrt(count[static_cast<std::size_t>(h)]);
  }
  return b;
}

struct SectorResult {
  Eigen::VectorXd eigenvalues;  // ascending
  double invariance_residual;   // ||H B - B (B^T H B)||_max
};

inline SectorResult symmetric_sector(const Eigen::MatrixXd& full, int n) {
  const Eigen::MatrixXd b = dicke_basis(n);
  const Eigen::MatrixXd hb = full * b;
  const Eigen::MatrixXd proj = b.transpose() * hb;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj, Eigen::EigenvaluesOnly);
  return {es.eigenvalues(), (hb - b * proj).cwiseAbs().maxCoeff()};
}

// Lowest eigenvalue over the whole 2^n space.
inline double full_ground(const Eigen::MatrixXd& full) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace oracle
