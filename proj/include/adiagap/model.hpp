#pragma once

// Continuum quadratic well with a central step barrier,
//   psi'' = eps^-2 [V(x) - eps c E] psi,  V = omega^2 x^2 outside |x| < a, V = height inside,
// solved exactly with parabolic cylinder functions on either side of the barrier.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adiagap/barrier.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/roots.hpp"
#include "adiagap/specfun.hpp"

namespace adiagap {

inline constexpr double kSqrt3Minus1 = 0.73205080756887729353;
inline constexpr double kOmega = 4.0 / 3.0;
inline constexpr double kWellC = 8.0 / (3.0 * kSqrt3Minus1);

// Prefactor 8 omega^{3/2} / (c sqrt(pi)) of the polynomial-region gap law.
inline double asymptotic_prefactor(double omega = kOmega, double c = kWellC) {
  return 8.0 * omega * std::sqrt(omega) / (c * std::sqrt(std::numbers::pi));
}

struct ModelParams {
  double epsilon = 1e-4;
  double alpha = 0.3;
  double beta = 0.3;
  double omega = kOmega;
  double c = kWellC;
  double a = 0.0;               // barrier half-width in x
  double barrier_height = 0.0;  // V inside |x| < a

  static ModelParams from_spec(const BarrierSpec& spec, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("ModelParams: epsilon must lie in (0,1)");
    if (!spec.explicit_override && spec.shape != BarrierShape::Rectangular)
      throw ParameterError("ModelParams: the continuum model only supports a step barrier");
    ModelParams p;
    p.epsilon = epsilon;
    p.alpha = spec.alpha;
    p.beta = spec.beta;
    p.a = continuum_half_width(spec, epsilon);
    p.barrier_height = continuum_height(spec, epsilon);
    return p;
  }

  static ModelParams for_n(const BarrierSpec& spec, long n) {
    return from_spec(spec, 2.0 / static_cast<double>(n));
  }

  bool harmonic() const { return a == 0.0 || barrier_height == 0.0; }
  double scale() const { return std::sqrt(2.0 * omega / epsilon); }
  double nu(double energy) const { return c * energy / (2.0 * omega) - 0.5; }
  double kappa_squared(double energy) const {
    return barrier_height / (epsilon * epsilon) - c * energy / epsilon;
  }
};

enum class Parity { Even, Odd };

inline std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct ModelLevels {
  double e_even = 0.0;
  double e_odd = 0.0;
  double nu_even = 0.0;
  double nu_odd = 0.0;
  double k_even = 0.0;  // 0 when there is no barrier interior
  double k_odd = 0.0;
  bool above_barrier_even = false;  // level above the barrier top; k reported as 0
  bool above_barrier_odd = false;
  double gap = 0.0;
  // Even root closest to the unperturbed first excited level 3 omega / c.
  // Coincides with e_even except for weak barriers.
  double e_even_nearest_excited = 0.0;
  bool harmonic = false;

  double energy(Parity p) const { return p == Parity::Even ? e_even : e_odd; }
};

namespace detail {

struct MatchTerms {
  double residual;
  double magnitude;  // sum of the absolute sizes of both sides
};

inline MatchTerms match_terms(const ModelParams& p, double energy, Parity parity) {
  if (!(energy > 0.0)) throw DomainError("transcendental_residual: E must be > 0");
  const double k2 = p.kappa_squared(energy);
  const double scale = p.scale();
  const PcfValue d = pcf_d(p.nu(energy), scale * p.a);
  const bool even = parity == Parity::Even;
  double lhs, rhs;
  if (k2 >= 0.0) {
    const double k = std::sqrt(k2);
    const double decay = std::exp(-2.0 * k * p.a);
    const double sign = even ? 1.0 : -1.0;
    lhs = k * d.value * (1.0 - sign * decay);
    rhs = scale * d.derivative * (1.0 + sign * decay);
  } else {
    // Level above the barrier top: k = i kappa, cos/sin interior. Same
    // normalisation as above at k = 0, so the residual is continuous in E.
    const double kappa = std::sqrt(-k2);
    const double c = std::cos(kappa * p.a), s = std::sin(kappa * p.a);
    lhs = 2.0 * kappa * d.value * (even ? -s : c);
    rhs = 2.0 * scale * d.derivative * (even ? c : s);
  }
  return {lhs - rhs, std::abs(lhs) + std::abs(rhs)};
}

}  // namespace detail

// Matching condition at x = a, divided through by e^{ka}:
//   k D_nu(Z) (1 -+ e^{-2ka}) - sqrt(2 omega/eps) D'_nu(Z) (1 +- e^{-2ka}),
// upper signs for the even (cosh) interior, lower for the odd (sinh) one.
// Above the barrier top k becomes imaginary and the interior oscillates.
inline double transcendental_residual(const ModelParams& p, double energy, Parity parity) {
  return detail::match_terms(p, energy, parity).residual;
}

// Residual divided by the magnitude of its two terms.
inline double transcendental_residual_relative(const ModelParams& p, double energy, Parity parity) {
  const auto t = detail::match_terms(p, energy, parity);
  return t.magnitude > 0.0 ? t.residual / t.magnitude : t.residual;
}

struct LevelSolveOptions {
  int scan_points = 400;
  double scan_lo = 0.05;  // in units of omega, for c E
  double scan_hi = 5.0;
  double rel_tol = 1e-13;
};

namespace detail {

inline std::vector<double> parity_roots(const ModelParams& p, Parity parity, const LevelSolveOptions& opts,
                                        bool all_roots) {
  std::vector<double> roots;
  std::vector<std::pair<double, double>> grid;
  const int m = opts.scan_points;
  double prev_e = 0.0, prev_r = 0.0;
  bool have_prev = false;
  for (int i = 0; i < m; ++i) {
    const double ce = p.omega * (opts.scan_lo + (opts.scan_hi - opts.scan_lo) * i / (m - 1.0));
    const double e = ce / p.c;
    const double r = transcendental_residual(p, e, parity);
    grid.emplace_back(e, r);
    if (have_prev && ((r > 0.0) != (prev_r > 0.0) || r == 0.0)) {
      const double root = r == 0.0 ? e
                                   : brent_root([&](double en) { return transcendental_residual(p, en, parity); },
                                                prev_e, e, opts.rel_tol);
      roots.push_back(root);
      if (!all_roots) break;
    }
    prev_e = e;
    prev_r = r;
    have_prev = true;
  }
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "solve_levels: no " << to_string(parity) << " sign change in the scan (eps=" << p.epsilon
        << ", a=" << p.a << ", height=" << p.barrier_height << "); grid E:residual =";
    msg.precision(6);
    const std::size_t stride = std::max<std::size_t>(1, grid.size() / 20);
    for (std::size_t i = 0; i < grid.size(); i += stride) msg << ' ' << grid[i].first << ':' << grid[i].second;
    throw SolverError(msg.str());
  }
  return roots;
}

}  // namespace detail

inline ModelLevels solve_levels(const ModelParams& p, const LevelSolveOptions& opts = {}) {
  if (!(p.epsilon > 0.0)) throw DomainError("solve_levels: epsilon must be > 0");
  if (p.a < 0.0 || p.barrier_height < 0.0) throw DomainError("solve_levels: a and height must be >= 0");
  if (opts.scan_points < 2) throw ParameterError("solve_levels: scan_points must be >= 2");
  ModelLevels lv;
  if (p.harmonic()) {
    lv.harmonic = true;
    lv.e_even = p.omega / p.c;
    lv.e_odd = 3.0 * p.omega / p.c;
    lv.e_even_nearest_excited = lv.e_even;
  } else {
    const auto even = detail::parity_roots(p, Parity::Even, opts, true);
    const auto odd = detail::parity_roots(p, Parity::Odd, opts, false);
    lv.e_even = even.front();
    lv.e_odd = odd.front();
    const double excited = 3.0 * p.omega / p.c;
    lv.e_even_nearest_excited = *std::min_element(even.begin(), even.end(), [&](double x, double y) {
      return std::abs(x - excited) < std::abs(y - excited);
    });
  }
  lv.nu_even = p.nu(lv.e_even);
  lv.nu_odd = p.nu(lv.e_odd);
  auto kappa = [&](double e) {
    const double k2 = p.kappa_squared(e);
    return p.harmonic() || k2 < 0.0 ? 0.0 : std::sqrt(k2);
  };
  if (!p.harmonic()) {
    lv.above_barrier_even = p.kappa_squared(lv.e_even) < 0.0;
    lv.above_barrier_odd = p.kappa_squared(lv.e_odd) < 0.0;
  }
  lv.k_even = kappa(lv.e_even);
  lv.k_odd = kappa(lv.e_odd);
  lv.gap = lv.e_odd - lv.e_even;
  return lv;
}

enum class Region { Constant, Polynomial, Exponential };

inline std::string to_string(Region r) {
  switch (r) {
    case Region::Constant: return "constant";
    case Region::Polynomial: return "polynomial";
    case Region::Exponential: return "exponential";
  }
  return "unknown";
}

struct RegionInfo {
  Region region = Region::Constant;
  // Power of n: 1/2 - alpha - beta (polynomial) or the prefactor power
  // -beta/2 (exponential).
  std::optional<double> exponent;
  // Exponential region: g ~ n^{-beta/2} exp(-C n^{stretch}).
  std::optional<double> stretch_exponent;
};

inline RegionInfo classify_region(double alpha, double beta) {
  RegionInfo info;
  if (alpha + beta <= 0.5) {
    info.region = Region::Constant;
  } else if (2.0 * alpha + beta <= 1.0) {
    info.region = Region::Polynomial;
    info.exponent = 0.5 - (alpha + beta);
  } else {
    info.region = Region::Exponential;
    info.exponent = -0.5 * beta;
    info.stretch_exponent = 0.5 * (2.0 * alpha + beta - 1.0);
  }
  return info;
}

inline double asymptotic_gap(const ModelParams& p) {
  if (!(p.alpha < 0.5)) throw DomainError("asymptotic_gap: requires alpha < 1/2");
  const RegionInfo info = classify_region(p.alpha, p.beta);
  const double pref = asymptotic_prefactor(p.omega, p.c);
  switch (info.region) {
    case Region::Constant:
      throw DomainError("asymptotic_gap: constant region (alpha + beta <= 1/2) has no gap law; see classify_region");
    case Region::Polynomial:
      return pref * std::pow(p.epsilon, p.alpha + p.beta - 0.5);
    case Region::Exponential:
      return 2.0 * pref * std::pow(p.epsilon, 0.5 * p.beta) *
             std::exp(-std::pow(p.epsilon, 0.5 - p.alpha - 0.5 * p.beta));
  }
  return 0.0;
}

struct WavefunctionResult {
  std::vector<double> x_grid;
  std::vector<double> values;
  double a1 = 0.0;  // outer amplitude after normalization
  double a2 = 0.0;  // interior amplitude after normalization
  Parity parity = Parity::Even;
};

inline WavefunctionResult model_wavefunction(const ModelParams& p, const ModelLevels& levels, Parity parity,
                                             double x_max, int points) {
  if (points < 101 || points % 2 == 0) throw ParameterError("model_wavefunction: points must be odd and >= 101");
  if (!(x_max > 0.0)) throw ParameterError("model_wavefunction: x_max must be > 0");
  const double energy = levels.energy(parity);
  if (p.harmonic()) {
    const double expected = (parity == Parity::Even ? 1.0 : 3.0) * p.omega / p.c;
    if (std::abs(energy - expected) > 1e-10 * expected)
      throw ParameterError("model_wavefunction: levels do not belong to these parameters");
  } else {
    double rel = 1.0;
    try {
      rel = std::abs(transcendental_residual_relative(p, energy, parity));
    } catch (const DomainError&) {
    }
    if (rel > 1e-6) throw ParameterError("model_wavefunction: levels do not belong to these parameters");
  }

  const double nu = p.nu(energy);
  const double scale = p.scale();
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  double k = 0.0, kappa = 0.0, d_edge = 0.0, decay = 0.0;
  const bool oscillating = !p.harmonic() && p.kappa_squared(energy) < 0.0;
  if (!p.harmonic()) {
    d_edge = pcf_d(nu, scale * p.a).value;
    if (oscillating) {
      kappa = std::sqrt(-p.kappa_squared(energy));
    } else {
      k = std::sqrt(p.kappa_squared(energy));
      decay = std::exp(-2.0 * k * p.a);
    }
  }
  const double edge_trig = parity == Parity::Even ? std::cos(kappa * p.a) : std::sin(kappa * p.a);
  auto outer = [&](double z) { return z > kPcfZMax ? 0.0 : pcf_d(nu, z).value; };

  WavefunctionResult out;
  out.parity = parity;
  out.x_grid.resize(static_cast<std::size_t>(points));
  out.values.resize(static_cast<std::size_t>(points));
  const int half = points / 2;
  for (int i = 0; i < points; ++i) {
    const double x = x_max * static_cast<double>(i - half) / half;
    double v;
    if (!p.harmonic() && std::abs(x) < p.a) {
      if (oscillating) {
        v = d_edge * (parity == Parity::Even ? std::cos(kappa * x) : std::sin(kappa * x)) / edge_trig;
      } else {
        v = d_edge * (std::exp(k * (x - p.a)) + sign * std::exp(-k * (x + p.a))) / (1.0 + sign * decay);
      }
    } else if (x >= 0.0) {
      v = outer(scale * x);
    } else {
      v = sign * outer(-scale * x);
    }
    out.x_grid[static_cast<std::size_t>(i)] = x;
    out.values[static_cast<std::size_t>(i)] = v;
  }
  const double h = x_max / half;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double w = (i == 0 || i + 1 == out.values.size()) ? 0.5 : 1.0;
    norm2 += w * out.values[i] * out.values[i];
  }
  norm2 *= h;
  if (!(norm2 > 0.0)) throw SolverError("model_wavefunction: wavefunction vanishes on the grid");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : out.values) v *= inv;
  out.a1 = inv;
  if (oscillating) {
    out.a2 = inv * d_edge / edge_trig;
  } else if (!p.harmonic()) {
    out.a2 = inv * d_edge * std::exp(-k * p.a) / (1.0 + sign * decay);
  }
  return out;
}

}  // namespace adiagap
