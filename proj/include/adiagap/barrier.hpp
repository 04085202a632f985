#pragma once

// Barrier added to the Hamming-weight cost f(x) = |x| + b(|x|), plus its image
// in the continuum quadratic-well model.

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "adiagap/errors.hpp"

namespace adiagap {

enum class BarrierShape { Rectangular, Gaussian };

inline std::string to_string(BarrierShape shape) {
  return shape == BarrierShape::Rectangular ? "rectangular" : "gaussian";
}

inline BarrierShape parse_shape(const std::string& text) {
  if (text == "rectangular" || text == "rect") return BarrierShape::Rectangular;
  if (text == "gaussian" || text == "gauss") return BarrierShape::Gaussian;
  throw ParameterError("unknown barrier shape '" + text + "'");
}

// Direct continuum-model values, bypassing the n^alpha x n^beta scaling.
struct BarrierOverride {
  double half_width_x = 0.0;
  double height_v = 0.0;
};

struct BarrierSpec {
  double alpha = 0.3;  // width ~ n^alpha
  double beta = 0.3;   // height ~ n^beta
  BarrierShape shape = BarrierShape::Rectangular;
  double center_fraction = 0.25;
  double height_scale = 0.75;
  double width_scale = 1.0;
  std::optional<BarrierOverride> explicit_override;

  // height_scale == 0 is accepted and means "no barrier".
  void validate() const {
    if (!(height_scale >= 0.0) || !std::isfinite(height_scale))
      throw ParameterError("height_scale must be >= 0");
    if (!(width_scale > 0.0) || !std::isfinite(width_scale))
      throw ParameterError("width_scale must be > 0");
    if (!(center_fraction > 0.0 && center_fraction < 1.0))
      throw ParameterError("center_fraction must lie in (0,1)");
    if (!std::isfinite(alpha) || !std::isfinite(beta))
      throw ParameterError("alpha and beta must be finite");
    if (explicit_override) {
      if (!(explicit_override->half_width_x >= 0.0) || !(explicit_override->height_v >= 0.0))
        throw ParameterError("override width and height must be >= 0");
    }
  }

  bool is_zero() const {
    if (explicit_override)
      return explicit_override->height_v == 0.0 || explicit_override->half_width_x == 0.0;
    return height_scale == 0.0;
  }

  static BarrierSpec none() {
    BarrierSpec spec;
    spec.height_scale = 0.0;
    return spec;
  }
};

// Height scale_h * (n/2)^beta; the half-width of the support is
// scale_w * (n/2)^alpha / 2 sites.
inline double barrier_height(const BarrierSpec& spec, long n) {
  return spec.height_scale * std::pow(0.5 * static_cast<double>(n), spec.beta);
}

inline double barrier_half_width(const BarrierSpec& spec, long n) {
  return 0.5 * spec.width_scale * std::pow(0.5 * static_cast<double>(n), spec.alpha);
}

// b(h) evaluated at a real Hamming weight; the lattice version below restricts
// to integers. Support boundary is closed.
inline double barrier_profile(const BarrierSpec& spec, long n, double h) {
  if (spec.height_scale == 0.0) return 0.0;
  const double center = spec.center_fraction * static_cast<double>(n);
  const double half = barrier_half_width(spec, n);
  const double dist = h - center;
  switch (spec.shape) {
    case BarrierShape::Rectangular:
      return std::abs(dist) <= half ? barrier_height(spec, n) : 0.0;
    case BarrierShape::Gaussian:
      return barrier_height(spec, n) * std::exp(-dist * dist / (2.0 * half * half));
  }
  return 0.0;
}

inline double barrier_value(const BarrierSpec& spec, long n, long h) {
  if (n < 1) throw DomainError("barrier_value: n must be positive");
  if (h < 0 || h > n) throw DomainError("barrier_value: h outside [0, n]");
  return barrier_profile(spec, n, static_cast<double>(h));
}

// Continuum barrier as it enters psi'' = eps^-2 [omega^2 x^2 + V(x) - eps c E] psi,
// i.e. with the 4/3 prefactor of the quadratic-well reduction already applied:
// height (4/3) height_scale eps^(1-beta), half-width width_scale eps^(1-alpha)/2.
// With default scales this is exactly eps^(1-beta) on |x| < eps^(1-alpha)/2.
inline double continuum_height(const BarrierSpec& spec, double epsilon) {
  if (spec.explicit_override) return spec.explicit_override->height_v;
  return (4.0 / 3.0) * spec.height_scale * std::pow(epsilon, 1.0 - spec.beta);
}

inline double continuum_half_width(const BarrierSpec& spec, double epsilon) {
  if (spec.explicit_override) return spec.explicit_override->half_width_x;
  return 0.5 * spec.width_scale * std::pow(epsilon, 1.0 - spec.alpha);
}

inline double continuum_barrier(const BarrierSpec& spec, double epsilon, double x) {
  if (!(epsilon > 0.0)) throw DomainError("continuum_barrier: epsilon must be > 0");
  const double height = continuum_height(spec, epsilon);
  const double a = continuum_half_width(spec, epsilon);
  if (spec.explicit_override || spec.shape == BarrierShape::Rectangular)
    return std::abs(x) < a ? height : 0.0;
  return a > 0.0 ? height * std::exp(-x * x / (2.0 * a * a)) : 0.0;
}

// Flat key-value form shared by the CLI flags and --config files.
inline std::map<std::string, std::string> to_key_values(const BarrierSpec& spec) {
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::map<std::string, std::string> kv{
      {"alpha", fmt(spec.alpha)},
      {"beta", fmt(spec.beta)},
      {"shape", to_string(spec.shape)},
      {"center", fmt(spec.center_fraction)},
      {"height-scale", fmt(spec.height_scale)},
      {"width-scale", fmt(spec.width_scale)},
  };
  if (spec.explicit_override) {
    kv["override-width"] = fmt(spec.explicit_override->half_width_x);
    kv["override-height"] = fmt(spec.explicit_override->height_v);
  }
  return kv;
}

inline BarrierSpec barrier_from_key_values(const std::map<std::string, std::string>& kv) {
  BarrierSpec spec;
  auto number = [&](const std::string& key, double& out) {
    auto it = kv.find(key);
    if (it == kv.end()) return false;
    std::size_t used = 0;
    try {
      out = std::stod(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != it->second.size())
      throw ParameterError("barrier key '" + key + "' is not a number: " + it->second);
    return true;
  };
  number("alpha", spec.alpha);
  number("beta", spec.beta);
  number("center", spec.center_fraction);
  number("height-scale", spec.height_scale);
  number("width-scale", spec.width_scale);
  if (auto it = kv.find("shape"); it != kv.end()) spec.shape = parse_shape(it->second);
  BarrierOverride ov;
  const bool has_w = number("override-width", ov.half_width_x);
  const bool has_h = number("override-height", ov.height_v);
  if (has_w != has_h)
    throw ParameterError("override-width and override-height must be given together");
  if (has_w) spec.explicit_override = ov;
  spec.validate();
  return spec;
}

}  // namespace adiagap
