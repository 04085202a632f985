#include <gtest/gtest.h>

#include <cmath>

#include "adiagap/model.hpp"

using namespace adiagap;

namespace {

ModelParams params(double alpha, double beta, double eps) {
  BarrierSpec spec;
  spec.alpha = alpha;
  spec.beta = beta;
  return ModelParams::from_spec(spec, eps);
}

double trapezoid_norm(const WavefunctionResult& w) {
  const double dx = w.x_grid[1] - w.x_grid[0];
  double acc = 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const double f = (i == 0 || i + 1 == w.values.size()) ? 0.5 : 1.0;
    acc += f * w.values[i] * w.values[i];
  }
  return acc * dx;
}

}  // namespace

TEST(Model, Constants) {
  EXPECT_NEAR(asymptotic_prefactor(), 1.90763660489981, 1e-13);
  EXPECT_NEAR(kWellC, 3.6427344100918364, 1e-13);
}

TEST(Model, HarmonicShortCircuit) {
  ModelParams p;
  p.a = 0.0;
  p.barrier_height = 0.2;
  const ModelLevels lv = solve_levels(p);
  EXPECT_TRUE(lv.harmonic);
  EXPECT_DOUBLE_EQ(lv.gap, 2.0 * kOmega / kWellC);
  EXPECT_DOUBLE_EQ(lv.nu_even, 0.0);
  EXPECT_DOUBLE_EQ(lv.nu_odd, 1.0);
}

TEST(Model, DegenerateLimitRoots) {
  ModelParams p;
  p.epsilon = 1e-4;
  p.a = 0.0;
  p.barrier_height = 1.0;
  EXPECT_NEAR(transcendental_residual(p, p.omega / p.c, Parity::Even), 0.0, 1e-10);
  EXPECT_NEAR(transcendental_residual(p, 3.0 * p.omega / p.c, Parity::Odd), 0.0, 1e-10);
  EXPECT_NEAR(transcendental_residual(p, 3.0 * p.omega / p.c, Parity::Even), -2.0 * p.scale(), 1e-9);
}

TEST(Model, BarrierPushesEvenLevelUp) {
  const ModelParams p = params(0.3, 0.3, 1e-4);
  EXPECT_GT(transcendental_residual(p, p.omega / p.c, Parity::Even), 0.0);
}

TEST(Model, RootsSolveMatching) {
  for (auto [a, b] : {std::pair{0.3, 0.3}, std::pair{0.1, 0.45}, std::pair{0.4, 0.4}})
    for (double eps : {1e-3, 1e-5, 1e-7}) {
      const ModelParams p = params(a, b, eps);
      const ModelLevels lv = solve_levels(p);
      EXPECT_LE(std::abs(transcendental_residual_relative(p, lv.e_even, Parity::Even)), 1e-8);
      EXPECT_LE(std::abs(transcendental_residual_relative(p, lv.e_odd, Parity::Odd)), 1e-8);
      EXPECT_LT(lv.e_even, lv.e_odd);
      EXPECT_GT(lv.gap, 0.0);
      EXPECT_LT(lv.gap, 2.0 * kOmega / kWellC);
    }
}

// Finite-difference discretisation of the same Schrodinger problem gives 0.41797.
TEST(Model, GapAgreesWithFiniteDifferences) {
  const ModelLevels lv = solve_levels(params(0.3, 0.3, 1e-4));
  EXPECT_NEAR(lv.gap, 0.41797, 2e-4);
}

TEST(Model, GapMonotoneInBarrierHeight) {
  ModelParams p = params(0.3, 0.3, 1e-4);
  const double full = p.barrier_height;
  double prev = INFINITY;
  for (double f : {1e-4, 1e-3, 0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0}) {
    p.barrier_height = f * full;
    const double g = solve_levels(p).gap;
    EXPECT_LE(g, prev + 1e-10) << f;
    prev = g;
  }
}

// The step replaces the parabola inside |x| < a, so the V -> 0 limit sits
// just off the harmonic gap (flat-bottomed centre).
TEST(Model, WeakBarrierApproachesHarmonic) {
  ModelParams p = params(0.3, 0.3, 1e-4);
  p.barrier_height *= 1e-6;
  const ModelLevels lv = solve_levels(p);
  EXPECT_TRUE(lv.above_barrier_even);
  EXPECT_TRUE(lv.above_barrier_odd);
  EXPECT_NEAR(lv.gap, 2.0 * kOmega / kWellC, 2e-4);
  EXPECT_LT(lv.e_even, kOmega / kWellC);
  EXPECT_LE(std::abs(transcendental_residual_relative(p, lv.e_even, Parity::Even)), 1e-8);
}

// The residual is continuous where the level crosses the barrier top.
TEST(Model, ResidualContinuousAtBarrierTop) {
  const ModelParams p = params(0.3, 0.3, 1e-4);
  const double top = p.barrier_height / (p.epsilon * p.c);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    const double below = transcendental_residual(p, top * (1.0 - 1e-9), par);
    const double above = transcendental_residual(p, top * (1.0 + 1e-9), par);
    EXPECT_NEAR(below, above, 1e-5 * std::abs(below));
  }
}

TEST(Model, Classification) {
  const RegionInfo poly = classify_region(0.3, 0.3);
  EXPECT_EQ(poly.region, Region::Polynomial);
  EXPECT_NEAR(*poly.exponent, -0.1, 1e-15);
  const RegionInfo expo = classify_region(0.4, 0.4);
  EXPECT_EQ(expo.region, Region::Exponential);
  EXPECT_NEAR(*expo.exponent, -0.2, 1e-15);
  EXPECT_NEAR(*expo.stretch_exponent, 0.1, 1e-15);
  EXPECT_EQ(classify_region(0.1, 0.2).region, Region::Constant);
  EXPECT_EQ(classify_region(0.25, 0.25).region, Region::Constant);
  EXPECT_EQ(classify_region(0.25, 0.5).region, Region::Polynomial);
  EXPECT_EQ(classify_region(0.1, 0.45).region, Region::Polynomial);
}

TEST(Model, AsymptoticValues) {
  EXPECT_NEAR(asymptotic_gap(params(0.3, 0.3, 1e-6)), 0.479176650409884, 1e-13);
  EXPECT_NEAR(asymptotic_gap(params(0.4, 0.4, 1e-4)), 0.0490486689906149, 1e-14);
  EXPECT_THROW(asymptotic_gap(params(0.1, 0.2, 1e-4)), DomainError);
  EXPECT_THROW(asymptotic_gap(params(0.6, 0.3, 1e-4)), DomainError);
}

TEST(Model, RejectsGaussianShape) {
  BarrierSpec spec;
  spec.shape = BarrierShape::Gaussian;
  EXPECT_THROW(ModelParams::from_spec(spec, 1e-4), ParameterError);
  EXPECT_THROW(ModelParams::from_spec(BarrierSpec{}, 0.0), DomainError);
}

TEST(Wavefunction, HarmonicIsGaussian) {
  BarrierSpec flat = BarrierSpec::none();
  const ModelParams p = ModelParams::from_spec(flat, 1e-3);
  const ModelLevels lv = solve_levels(p);
  const auto w = model_wavefunction(p, lv, Parity::Even, 0.5, 1001);
  const double z_per_x = p.scale();
  const double peak = w.values[500];
  for (std::size_t i = 0; i < w.values.size(); i += 50) {
    const double z = z_per_x * w.x_grid[i];
    EXPECT_NEAR(w.values[i], peak * std::exp(-0.25 * z * z), 1e-10 * peak);
  }
  EXPECT_NEAR(trapezoid_norm(w), 1.0, 1e-10);
}

TEST(Wavefunction, NormalisedParityAndContinuity) {
  BarrierSpec spec;
  spec.explicit_override = BarrierOverride{1.0 / 140.0, 1.0 / 300.0};
  const ModelParams p = ModelParams::from_spec(spec, 1.0 / 5000.0);
  const ModelLevels lv = solve_levels(p);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    const auto w = model_wavefunction(p, lv, par, 0.15, 6001);
    EXPECT_NEAR(trapezoid_norm(w), 1.0, 1e-9);
    const double sign = par == Parity::Even ? 1.0 : -1.0;
    for (std::size_t i = 0; i < w.values.size(); i += 97)
      EXPECT_NEAR(w.values[i], sign * w.values[w.values.size() - 1 - i], 1e-10);
    // Jump across x = a stays at grid resolution.
    const double dx = w.x_grid[1] - w.x_grid[0];
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i + 1 < w.values.size(); ++i) {
      peak = std::max(peak, std::abs(w.values[i]));
      if (w.x_grid[i] < p.a && w.x_grid[i + 1] >= p.a) worst = std::abs(w.values[i + 1] - w.values[i]);
    }
    EXPECT_LE(worst, 50.0 * dx * peak / p.a);
  }
}

TEST(Wavefunction, RejectsBadInput) {
  const ModelParams p = params(0.3, 0.3, 1e-4);
  const ModelLevels lv = solve_levels(p);
  EXPECT_THROW(model_wavefunction(p, lv, Parity::Even, 0.2, 100), ParameterError);
  EXPECT_THROW(model_wavefunction(p, lv, Parity::Even, 0.2, 51), ParameterError);
  const ModelLevels other = solve_levels(params(0.3, 0.3, 1e-5));
  EXPECT_THROW(model_wavefunction(p, other, Parity::Even, 0.2, 1001), ParameterError);
}
