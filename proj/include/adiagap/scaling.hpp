#pragma once

// n-sweeps comparing the discrete gap, the continuum-model gap and the
// closed-form asymptotic law, with power-law and stretched-exponential fits.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adiagap/barrier.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/gapscan.hpp"
#include "adiagap/model.hpp"
#include "adiagap/parallel.hpp"

namespace adiagap {

struct FitResult {
  double exponent = 0.0;       // slope (power-law fit)
  double log_prefactor = 0.0;  // intercept, ln K
  double r_squared = 0.0;
  std::optional<double> stretch_c;              // exponential fit: C
  std::optional<double> stretch_exponent_used;  // exponential fit: (1 - 2 alpha - beta)/2
};

namespace detail {

struct LineFit {
  double slope, intercept, r_squared;
};

inline LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DataError("fit: abscissae are all equal", -1);
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return f;
}

inline void check_fit_input(std::span<const double> n_values, std::span<const double> gaps) {
  if (n_values.size() != gaps.size()) throw DataError("fit: n_values and gaps differ in length", -1);
  if (gaps.size() < 3) throw DataError("fit: at least 3 points are required", -1);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i] > 0.0)) throw DataError("fit: non-positive gap at index " + std::to_string(i), static_cast<long>(i));
    if (!(n_values[i] > 0.0)) throw DataError("fit: non-positive n at index " + std::to_string(i), static_cast<long>(i));
  }
}

}  // namespace detail

// ln gap = ln K + exponent * ln n
inline FitResult fit_power_law(std::span<const double> n_values, std::span<const double> gaps) {
  detail::check_fit_input(n_values, gaps);
  std::vector<double> lx(n_values.size()), ly(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    lx[i] = std::log(n_values[i]);
    ly[i] = std::log(gaps[i]);
  }
  const auto line = detail::least_squares_line(lx, ly);
  FitResult out;
  out.exponent = line.slope;
  out.log_prefactor = line.intercept;
  out.r_squared = line.r_squared;
  return out;
}

// ln gap = ln K + (beta/2) ln eps - C eps^{(1 - 2 alpha - beta)/2}, eps = 2/n,
// solved for (ln K, C) with the prefactor power imposed.
inline FitResult fit_exponential(std::span<const double> n_values, std::span<const double> gaps, double alpha,
                                 double beta) {
  if (!(2.0 * alpha + beta > 1.0)) throw ParameterError("fit_exponential: requires 2 alpha + beta > 1");
  detail::check_fit_input(n_values, gaps);
  const double p = 0.5 * (1.0 - 2.0 * alpha - beta);
  std::vector<double> u(gaps.size()), y(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double eps = 2.0 / n_values[i];
    u[i] = std::pow(eps, p);
    y[i] = std::log(gaps[i]) - 0.5 * beta * std::log(eps);
  }
  const auto line = detail::least_squares_line(u, y);
  FitResult out;
  out.exponent = -0.5 * beta;
  out.log_prefactor = line.intercept;
  out.r_squared = line.r_squared;
  out.stretch_c = -line.slope;
  out.stretch_exponent_used = p;
  return out;
}

enum class SPolicy { AtCriticalS, GlobalMin };

inline std::string to_string(SPolicy p) { return p == SPolicy::AtCriticalS ? "critical" : "global"; }

struct StudyOptions {
  long n_min = 1000;
  long n_max = 100000;
  int points = 7;
  SPolicy s_policy = SPolicy::AtCriticalS;
  bool include_discrete = true;
  unsigned workers = 1;
  int coarse_points = 200;   // GlobalMin only
  double refine_tol = 1e-6;  // GlobalMin only
};

struct ScalingStudy {
  BarrierSpec spec;
  std::vector<long> n_values;
  SPolicy s_policy = SPolicy::AtCriticalS;
  std::vector<std::optional<double>> gaps_discrete;
  std::vector<std::optional<double>> gaps_model;
  std::vector<std::optional<double>> gaps_asymptotic;
  std::vector<std::optional<double>> s_used;
  std::vector<std::string> flags;  // per-n notes: precision, failures
  RegionInfo region;
  FitResult fit;                     // discrete fit when available, else model
  std::optional<FitResult> fit_discrete;
  std::optional<FitResult> fit_model;
  std::optional<FitResult> fit_model_exponential;
};

inline long round_to_even(double x) {
  const long r = std::lround(x / 2.0) * 2;
  return std::max(2L, r);
}

// Geometric n ladder, each n rounded to an even integer.
inline std::vector<long> geometric_n_values(long n_min, long n_max, int points) {
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(points));
  const double ratio = static_cast<double>(n_max) / static_cast<double>(n_min);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(round_to_even(static_cast<double>(n_min) * std::pow(ratio, t)));
  }
  return out;
}

namespace detail {

inline std::optional<FitResult> try_fit(const std::vector<long>& n, const std::vector<std::optional<double>>& g,
                                        bool exponential, double alpha, double beta) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (g[i] && *g[i] > 0.0) {
      xs.push_back(static_cast<double>(n[i]));
      ys.push_back(*g[i]);
    }
  if (xs.size() < 3) return std::nullopt;
  return exponential ? fit_exponential(xs, ys, alpha, beta) : fit_power_law(xs, ys);
}

inline void append_flag(std::string& flags, const std::string& f) {
  if (!flags.empty()) flags += ';';
  flags += f;
}

}  // namespace detail

inline ScalingStudy run_study(const BarrierSpec& spec, const StudyOptions& opts) {
  spec.validate();
  if (opts.n_min < 10) throw ParameterError("run_study: n_min must be >= 10");
  if (opts.n_max < opts.n_min) throw ParameterError("run_study: n_max must be >= n_min");
  if (opts.points < 3) throw ParameterError("run_study: points must be >= 3");

  ScalingStudy st;
  st.spec = spec;
  st.s_policy = opts.s_policy;
  st.n_values = geometric_n_values(opts.n_min, opts.n_max, opts.points);
  st.region = classify_region(spec.alpha, spec.beta);
  const std::size_t m = st.n_values.size();
  st.gaps_discrete.assign(m, std::nullopt);
  st.gaps_model.assign(m, std::nullopt);
  st.gaps_asymptotic.assign(m, std::nullopt);
  st.s_used.assign(m, std::nullopt);
  st.flags.assign(m, std::string());

  const bool model_ok = spec.explicit_override || spec.shape == BarrierShape::Rectangular;
  const bool asymptotic_ok = !spec.is_zero() && st.region.region != Region::Constant && spec.alpha < 0.5;

  parallel_for(m, opts.workers, [&](std::size_t i) {
    const long n = st.n_values[i];
    std::string& flags = st.flags[i];
    if (opts.include_discrete) {
      try {
        GapPoint p = opts.s_policy == SPolicy::AtCriticalS
                         ? gap_at(n, critical_s(), spec)
                         : min_gap(n, spec, opts.coarse_points, opts.refine_tol, 1);
        st.gaps_discrete[i] = p.gap;
        st.s_used[i] = p.s;
        if (p.precision_flag) detail::append_flag(flags, "precision_limited");
      } catch (const std::exception&) {
        detail::append_flag(flags, "discrete_failed");
      }
    }
    if (model_ok) {
      try {
        const ModelParams params = ModelParams::for_n(spec, n);
        st.gaps_model[i] = solve_levels(params).gap;
        if (asymptotic_ok) st.gaps_asymptotic[i] = asymptotic_gap(params);
      } catch (const std::exception&) {
        detail::append_flag(flags, "model_failed");
      }
    } else {
      detail::append_flag(flags, "model_unsupported_shape");
    }
  });

  bool any = false;
  for (std::size_t i = 0; i < m; ++i) any = any || st.gaps_discrete[i] || st.gaps_model[i];
  if (!any) throw SolverError("run_study: every point failed");

  st.fit_discrete = detail::try_fit(st.n_values, st.gaps_discrete, false, spec.alpha, spec.beta);
  st.fit_model = detail::try_fit(st.n_values, st.gaps_model, false, spec.alpha, spec.beta);
  if (st.region.region == Region::Exponential)
    st.fit_model_exponential = detail::try_fit(st.n_values, st.gaps_model, true, spec.alpha, spec.beta);
  if (st.fit_discrete) {
    st.fit = *st.fit_discrete;
  } else if (st.fit_model_exponential) {
    st.fit = *st.fit_model_exponential;
  } else if (st.fit_model) {
    st.fit = *st.fit_model;
  }
  return st;
}

// Columns: n, epsilon, gap_discrete, gap_model, gap_asymptotic, s_used, flags.
// Missing values are written as NA.
inline void write_study_csv(std::ostream& os, const ScalingStudy& st) {
  const auto old = os.precision(17);
  auto opt = [&](const std::optional<double>& v) {
    if (v) {
      os << *v;
    } else {
      os << "NA";
    }
  };
  os << "n,epsilon,gap_discrete,gap_model,gap_asymptotic,s_used,flags\n";
  for (std::size_t i = 0; i < st.n_values.size(); ++i) {
    os << st.n_values[i] << ',' << 2.0 / static_cast<double>(st.n_values[i]) << ',';
    opt(st.gaps_discrete[i]);
    os << ',';
    opt(st.gaps_model[i]);
    os << ',';
    opt(st.gaps_asymptotic[i]);
    os << ',';
    opt(st.s_used[i]);
    os << ',' << st.flags[i] << '\n';
  }
  os.precision(old);
}

// Log-log matplotlib script that reads the study CSV.
inline void write_plot_script(std::ostream& os, const std::string& csv_path) {
  os << "import csv\n"
        "import matplotlib.pyplot as plt\n\n"
        "rows = [r for r in csv.DictReader(l for l in open(" << '"' << csv_path << '"'
     << ") if not l.startswith('#'))]\n"
        "n = [float(r['n']) for r in rows]\n"
        "fig, ax = plt.subplots()\n"
        "for col, label in [('gap_discrete', 'discrete'), ('gap_model', 'model'), ('gap_asymptotic', 'asymptotic')]:\n"
        "    pts = [(x, float(r[col])) for x, r in zip(n, rows) if r[col] != 'NA']\n"
        "    if pts:\n"
        "        ax.loglog(*zip(*pts), marker='o', label=label)\n"
        "ax.set_xlabel('n')\n"
        "ax.set_ylabel('gap')\n"
        "ax.legend()\n"
        "fig.savefig(" << '"' << csv_path << ".png\")\n";
}

}  // namespace adiagap
