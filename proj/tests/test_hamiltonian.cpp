#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "adiagap/eig.hpp"
#include "adiagap/gapscan.hpp"
#include "adiagap/hamiltonian.hpp"
#include "support/oracle.hpp"

using namespace adiagap;

TEST(Hamiltonian, SymmetricEntries) {
  BarrierSpec spec;
  const auto t = build_symmetric(4, 0.5, spec);
  ASSERT_EQ(t.dim(), 5u);
  EXPECT_NEAR(t.diag()[1], 1.96167915500434, 1e-13);
  EXPECT_NEAR(barrier_value(spec, 4, 1), 0.923358310008687, 1e-13);
  EXPECT_NEAR(t.offdiag()[0], -0.25 * 2.0, 1e-15);
  EXPECT_NEAR(t.offdiag()[1], -0.25 * std::sqrt(6.0), 1e-15);
}

TEST(Hamiltonian, EndpointsAreDiagonalOrTransverse) {
  const auto t1 = build_symmetric(6, 1.0, BarrierSpec::none());
  for (double b : t1.offdiag()) EXPECT_EQ(b, 0.0);
  for (std::size_t h = 0; h < t1.dim(); ++h) EXPECT_EQ(t1.diag()[h], static_cast<double>(h));
  const auto pair = lowest_two(build_symmetric(6, 0.0, BarrierSpec::none()));
  EXPECT_NEAR(pair.first, 0.0, 1e-13);
  EXPECT_NEAR(pair.second, 1.0, 1e-13);
}

TEST(Hamiltonian, RejectsBadSchedule) {
  EXPECT_THROW(build_symmetric(4, -0.1, BarrierSpec::none()), DomainError);
  EXPECT_THROW(build_symmetric(4, 1.1, BarrierSpec::none()), DomainError);
  EXPECT_THROW(build_full(15, 0.5, BarrierSpec::none()), SizeLimitError);
}

TEST(Hamiltonian, FullMatrixSymmetricSector) {
  BarrierSpec spec;
  for (int n : {3, 5, 8}) {
    const auto full = build_full(n, 0.4, spec);
    EXPECT_NEAR((full - full.transpose()).cwiseAbs().maxCoeff(), 0.0, 0.0);
    const auto sector = oracle::symmetric_sector(full, n);
    const auto t = build_symmetric(n, 0.4, spec);
    const auto pair = lowest_two(t);
    EXPECT_NEAR(pair.first, sector.eigenvalues(0), 1e-11);
    EXPECT_NEAR(pair.second, sector.eigenvalues(1), 1e-11);
    // The global ground state lies in the symmetric sector.
    EXPECT_NEAR(oracle::full_ground(full), pair.first, 1e-11);
  }
}

TEST(Hamiltonian, UnperturbedGroundState) {
  const auto v1 = unperturbed_ground_state(1, 0.5);
  EXPECT_NEAR(v1[0], 0.9238795325112867, 1e-12);
  EXPECT_NEAR(v1[1], 0.3826834323650898, 1e-12);
  for (long n : {10L, 200L, 5000L}) {
    const double s = 0.3;
    const auto v = unperturbed_ground_state(n, s);
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    EXPECT_NEAR(norm, 1.0, 1e-12);
    const auto t = build_symmetric(n, s, BarrierSpec::none());
    const auto hv = t.apply(v);
    const double lambda = std::inner_product(v.begin(), v.end(), hv.begin(), 0.0);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(hv[i] - lambda * v[i]));
    EXPECT_LE(res, 1e-9) << "n=" << n;
  }
}

TEST(Hamiltonian, CriticalPointConstants) {
  EXPECT_NEAR(unperturbed_gap(critical_s()), std::sqrt(3.0) - 1.0, 1e-15);
  EXPECT_NEAR(2.0 * critical_s() + 1.0, std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(unperturbed_gap(0.5), std::sqrt(0.5), 1e-15);
}

TEST(Eig, SturmCountMatchesDense) {
  BarrierSpec spec;
  const int n = 9;
  const auto t = build_symmetric(n, 0.37, spec);
  const auto sector = oracle::symmetric_sector(build_full(n, 0.37, spec), n);
  for (Eigen::Index k = 0; k < sector.eigenvalues.size(); ++k) {
    const double lam = sector.eigenvalues(k);
    EXPECT_EQ(sturm_count(t, lam - 1e-8), static_cast<std::size_t>(k));
    EXPECT_EQ(sturm_count(t, lam + 1e-8), static_cast<std::size_t>(k + 1));
  }
}

TEST(Eig, DiagonalAndTwoByTwo) {
  const TridiagonalMatrix d({3.0, 1.0, 2.0}, {0.0, 0.0});
  const auto p = lowest_two(d);
  EXPECT_NEAR(p.first, 1.0, 1e-14);
  EXPECT_NEAR(p.second, 2.0, 1e-14);
  const TridiagonalMatrix t({0.0, 0.0}, {1.0});
  const auto q = lowest_two(t);
  EXPECT_NEAR(q.first, -1.0, 1e-14);
  EXPECT_NEAR(q.second, 1.0, 1e-14);
}

TEST(Eig, EigenvectorResidual) {
  BarrierSpec spec;
  for (long n : {50L, 2000L}) {
    const auto t = build_symmetric(n, critical_s(), spec);
    const auto pair = lowest_two(t);
    for (double lam : {pair.first, pair.second}) {
      const auto v = eigenvector(t, lam);
      const auto hv = t.apply(v);
      double res = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(hv[i] - lam * v[i]));
      EXPECT_LE(res, 1e-9 * t.norm_inf()) << "n=" << n;
      EXPECT_NEAR(std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)), 1.0, 1e-12);
    }
  }
}

TEST(Eig, GroundStateMatchesClosedForm) {
  const long n = 300;
  const double s = 0.3;
  const auto t = build_symmetric(n, s, BarrierSpec::none());
  const auto v = eigenvector(t, lowest_two(t).first);
  const auto ref = unperturbed_ground_state(n, s);
  double diff = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(v[i] - ref[i]));
  EXPECT_LE(diff, 1e-9);
}

TEST(Tridiagonal, CsvHeaderAndRows) {
  const TridiagonalMatrix t({1.0, 2.0}, {0.5});
  std::ostringstream os;
  t.write_csv(os);
  EXPECT_EQ(os.str().substr(0, 13), "diag,offdiag\n");
}
