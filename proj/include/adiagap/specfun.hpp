#pragma once

// Real-argument special functions used by the continuum model: log-gamma,
// Kummer's M(a,b,z), and the parabolic cylinder function D_nu(z) with its
// derivative.
//
// D_nu(z) is evaluated in three regimes:
//   z <= 2       Kummer-series representation (no cancellation for z < 0,
//                mild cancellation for 0 < z <= 2);
//   z >= 9       the large-z asymptotic series, accurate to < 1e-17 there;
//   2 < z < 9    high-order Taylor integration of the Weber equation from
//                z = 9 down to z, seeded by the asymptotic series. Integrating
//                towards smaller z follows the growing direction of the
//                recessive solution, so the march is stable.

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "adiagap/errors.hpp"

namespace adiagap {

struct LogGamma {
  double value = 0.0;  // ln|Gamma(x)|
  int sign = 1;        // sign of Gamma(x)
};

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

inline LogGamma log_gamma(double x) {
  if (is_nonpositive_integer(x) || std::isnan(x)) throw DomainError("log_gamma: pole at nonpositive integer");
  LogGamma out;
  out.value = std::lgamma(x);
  if (x < 0.0) out.sign = (static_cast<long long>(std::ceil(-x)) % 2 == 1) ? -1 : 1;
  return out;
}

// 1/Gamma(x); zero at the poles.
inline double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0 && x < 170.0) return 1.0 / std::tgamma(x);
  if (x <= 0.0 && x > -170.0) return 1.0 / std::tgamma(x);
  const LogGamma lg = log_gamma(x);
  return lg.sign * std::exp(-lg.value);
}

namespace detail {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace detail

inline constexpr double kKummerMaxArgument = 900.0;
inline constexpr int kKummerTermCap = 20000;

// M(a, b, z) = sum_k (a)_k / (b)_k z^k / k!
inline double kummer_m(double a, double b, double z) {
  if (is_nonpositive_integer(b)) throw DomainError("kummer_m: b must not be a nonpositive integer");
  if (!(std::abs(z) <= kKummerMaxArgument)) throw DomainError("kummer_m: |z| outside series regime");
  if (z == 0.0) return 1.0;
  detail::CompensatedSum acc;
  double term = 1.0;
  acc.add(term);
  // Past k_safe the term ratio stays below 1 in magnitude.
  const double k_safe = std::abs(z) + std::abs(a) + std::abs(b) + 2.0;
  for (int k = 0; k < kKummerTermCap; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) / (b + kk) * z / (kk + 1.0);
    if (term == 0.0) return acc.value();
    acc.add(term);
    if (kk > k_safe && std::abs(term) <= 1e-17 * std::abs(acc.value())) return acc.value();
  }
  std::ostringstream msg;
  msg << "kummer_m: series did not converge within " << kKummerTermCap << " terms";
  throw AccuracyError(msg.str(), acc.value());
}

struct PcfValue {
  double value = 0.0;       // D_nu(z)
  double derivative = 0.0;  // dD_nu/dz
};

namespace detail {

inline constexpr double kPcfSeriesMax = 2.0;
inline constexpr double kPcfAsymptoticMin = 9.0;
inline constexpr double kPcfTaylorStep = 0.25;

inline PcfValue pcf_series(double nu, double z) {
  const double x = 0.5 * z * z;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double ca = sqrt_pi * reciprocal_gamma(0.5 * (1.0 - nu));
  const double cb = std::sqrt(2.0) * sqrt_pi * reciprocal_gamma(-0.5 * nu);
  const double a1 = -0.5 * nu;
  const double a2 = 0.5 * (1.0 - nu);
  const double m1 = ca != 0.0 ? kummer_m(a1, 0.5, x) : 0.0;
  const double m2 = cb != 0.0 ? kummer_m(a2, 1.5, x) : 0.0;
  const double f = ca * m1 - cb * z * m2;
  // d/dz M(a,b,z^2/2) = z (a/b) M(a+1, b+1, z^2/2)
  const double dm1 = ca != 0.0 && a1 != 0.0 ? z * (a1 / 0.5) * kummer_m(a1 + 1.0, 1.5, x) : 0.0;
  const double dm2 = cb != 0.0 && a2 != 0.0 ? z * (a2 / 1.5) * kummer_m(a2 + 1.0, 2.5, x) : 0.0;
  const double df = ca * dm1 - cb * (m2 + z * dm2);
  const double pref = std::exp2(0.5 * nu) * std::exp(-0.25 * z * z);
  return {pref * f, pref * (df - 0.5 * z * f)};
}

// D_nu(z) ~ e^{-z^2/4} z^nu sum_k t_k, t_k = (-1)^k nu(nu-1)...(nu-2k+1) / (k! (2 z^2)^k)
inline PcfValue pcf_asymptotic(double nu, double z) {
  const double inv2z2 = 1.0 / (2.0 * z * z);
  CompensatedSum sum, dsum;
  double t = 1.0;
  sum.add(t);
  dsum.add(t * nu);  // sum of (nu - 2k) t_k
  double prev = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double kk = static_cast<double>(k);
    t *= -(nu - 2.0 * kk) * (nu - 2.0 * kk - 1.0) * inv2z2 / (kk + 1.0);
    if (t == 0.0) break;
    if (std::abs(t) > std::abs(prev)) break;  // asymptotic series starts to diverge
    sum.add(t);
    dsum.add(t * (nu - 2.0 * kk - 2.0));
    prev = t;
    if (std::abs(t) <= 1e-18 * std::abs(sum.value())) break;
  }
  const double base = std::exp(-0.25 * z * z + nu * std::log(z));
  const double s = sum.value();
  return {base * s, base * (dsum.value() / z - 0.5 * z * s)};
}

// One Taylor step of y'' = (z^2/4 - nu - 1/2) y from z0 to z0 + h. The
// coefficients follow from the polynomial right-hand side:
// (m+2)(m+1) c_{m+2} = q0 c_m + q1 c_{m-1} + q2 c_{m-2}.
inline void weber_taylor_step(double nu, double z0, double h, double& y, double& dy) {
  const double q0 = 0.25 * z0 * z0 - nu - 0.5;
  const double q1 = 0.5 * z0;
  constexpr double q2 = 0.25;
  constexpr int kMaxOrder = 80;
  double c[kMaxOrder + 2];
  c[0] = y;
  c[1] = dy;
  CompensatedSum val, der;
  val.add(c[0]);
  val.add(c[1] * h);
  der.add(c[1]);
  double hp = h;  // h^(m+1)
  double prev_dv = c[1] * h;
  for (int m = 0; m < kMaxOrder; ++m) {
    double rhs = q0 * c[m];
    if (m >= 1) rhs += q1 * c[m - 1];
    if (m >= 2) rhs += q2 * c[m - 2];
    c[m + 2] = rhs / ((m + 2.0) * (m + 1.0));
    const double dv = c[m + 2] * hp * h;
    const double dd = (m + 2.0) * c[m + 2] * hp;
    val.add(dv);
    der.add(dd);
    hp *= h;
    const double tiny = 1e-19 * (std::abs(val.value()) + std::abs(der.value()));
    if (m > 6 && std::abs(dv) <= tiny && std::abs(prev_dv) <= tiny && std::abs(dd) <= tiny) break;
    prev_dv = dv;
  }
  y = val.value();
  dy = der.value();
}

inline PcfValue pcf_integrated(double nu, double z) {
  PcfValue start = pcf_asymptotic(nu, kPcfAsymptoticMin);
  const double span = kPcfAsymptoticMin - z;
  const int steps = static_cast<int>(std::ceil(span / kPcfTaylorStep));
  const double h = -span / steps;
  double y = start.value, dy = start.derivative;
  for (int i = 0; i < steps; ++i) weber_taylor_step(nu, kPcfAsymptoticMin + i * h, h, y, dy);
  return {y, dy};
}

}  // namespace detail

inline constexpr double kPcfNuMin = -1.0;
inline constexpr double kPcfNuMax = 6.0;
inline constexpr double kPcfZMax = 30.0;

// Parabolic cylinder function D_nu(z), the solution of
// D'' + (nu + 1/2 - z^2/4) D = 0 that decays as z -> +infinity.
// Accepts nu in [-1, 7] internally (one above the public box) so that the
// recurrence D' = (z/2) D_nu - D_{nu+1} stays available to callers.
inline PcfValue pcf_d(double nu, double z) {
  if (!(nu >= kPcfNuMin && nu <= kPcfNuMax + 1.0))
    throw DomainError("pcf_d: nu outside [-1, 7]");
  if (!(std::abs(z) <= kPcfZMax)) throw DomainError("pcf_d: z outside [-30, 30]");
  if (z <= detail::kPcfSeriesMax) return detail::pcf_series(nu, z);
  if (z >= detail::kPcfAsymptoticMin) return detail::pcf_asymptotic(nu, z);
  return detail::pcf_integrated(nu, z);
}

}  // namespace adiagap
