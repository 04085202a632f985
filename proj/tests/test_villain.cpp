#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "adiagap/eig.hpp"
#include "adiagap/hamiltonian.hpp"
#include "adiagap/villain.hpp"

using namespace adiagap;

TEST(Villain, SmallSpins) {
  const SpinOperators one = build_spin_ops(1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(one.jx));
  EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(1), 0.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(2), 1.0, 1e-14);

  const SpinOperators half = build_spin_ops(0.5);
  const Eigen::MatrixXd jz(half.jz);
  EXPECT_EQ(jz(0, 0), -1.0);
  EXPECT_EQ(jz(1, 1), 1.0);
  EXPECT_EQ(jz(0, 1), 0.0);
  EXPECT_THROW(build_spin_ops(0.3), DomainError);
}

TEST(Villain, OperatorInvariants) {
  for (double J : {1.5, 7.0, 40.0}) {
    const SpinOperators ops = build_spin_ops(J);
    const Eigen::MatrixXd jx(ops.jx), p(ops.p_shift), m(ops.m_shift), a(ops.a_op), b(ops.b_op);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(ops.dim, ops.dim);
    EXPECT_EQ((jx - jx.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(jx.diagonal().cwiseAbs().maxCoeff(), 0.0);

    Eigen::MatrixXd top = id, bottom = id;
    top(0, 0) = 0.0;
    bottom(ops.dim - 1, ops.dim - 1) = 0.0;
    EXPECT_EQ((p * m - top).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m * p - bottom).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE((ops.epsilon * a - 0.5 * (p - m)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((ops.epsilon * ops.epsilon * b - (p - 2.0 * id + m)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Villain, JxIdentityIsExact) {
  EXPECT_LE(verify_jx_identity(5.0), 1e-14);
  EXPECT_LE(verify_jx_identity(50.0), 1e-13);
  EXPECT_LE(verify_jx_identity(500.0), 1e-13);
  EXPECT_LE(verify_jx_identity(1000.0), 1e-13);
}

TEST(Villain, DeltaConstant) {
  EXPECT_NEAR(delta_constant(0.0), std::sqrt(3.0) - 1.0, 1e-15);
  EXPECT_NEAR(delta_constant(0.1), 0.76865334794732116, 1e-14);
  EXPECT_THROW(delta_constant(-1.0), DomainError);
}

TEST(Villain, PotentialMinimumAtZero) {
  for (double eps : {0.0, 1e-2, 1e-4}) {
    const PotentialValue v = semiclassical_potential(critical_s(), -0.5, eps, BarrierSpec::none());
    EXPECT_NEAR(v.value, 0.0, 1e-14) << eps;
    EXPECT_TRUE(v.delta_applied);
  }
  EXPECT_NEAR(semiclassical_potential(critical_s(), 0.0, 0.0, BarrierSpec::none()).value, 0.0980762113533160, 1e-13);
  EXPECT_FALSE(semiclassical_potential(0.5, 0.0, 0.0, BarrierSpec::none()).delta_applied);
  EXPECT_THROW(semiclassical_potential(0.5, 1.0, 0.0, BarrierSpec::none()), DomainError);
}

TEST(Villain, QuadraticCoefficientGivesOmega) {
  const double quad = potential_quadratic_coefficient(0.0);
  EXPECT_NEAR(quad, 2.0 / 3.0 * kSqrt3Minus1, 1e-8);
  EXPECT_NEAR(quad, 0.4880338717125849, 1e-8);
  EXPECT_NEAR(quad / (0.375 * kSqrt3Minus1), kOmega * kOmega, 1e-8);
}

TEST(Villain, SpinHamiltonianMatchesSymmetricBlock) {
  BarrierSpec spec;
  for (long n : {4L, 17L, 60L, 200L})
    for (double s : {0.3, critical_s()}) {
      const SpinOperators ops = build_spin_ops(0.5 * static_cast<double>(n));
      const double delta = delta_constant(ops.epsilon);
      const Eigen::MatrixXd h = spin_hamiltonian(ops, s, spec, delta);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
      const auto pair = lowest_two(build_symmetric(n, s, spec));
      EXPECT_NEAR(es.eigenvalues()(0), ops.epsilon * pair.first - 1.0 + delta, 1e-10) << n;
      EXPECT_NEAR(es.eigenvalues()(1), ops.epsilon * pair.second - 1.0 + delta, 1e-10) << n;
    }
}
