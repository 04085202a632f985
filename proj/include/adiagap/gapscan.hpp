#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "adiagap/barrier.hpp"
#include "adiagap/eig.hpp"
#include "adiagap/hamiltonian.hpp"
#include "adiagap/parallel.hpp"

namespace adiagap {

// s* = (sqrt(3) - 1)/2, where the barrier-free ground state is centred on h = n/4.
inline constexpr double critical_s() { return 0.36602540378443864676; }

struct GapPoint {
  double s = 0.0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double gap = 0.0;
  bool precision_flag = false;  // gap within 100x of the bisection tolerance
};

struct GapOptions {
  std::optional<double> abs_tol;  // default: default_tolerance(T)
};

inline GapPoint gap_at(long n, double s, const BarrierSpec& spec, const GapOptions& opts = {}) {
  const auto t = build_symmetric(n, s, spec);
  const double tol = opts.abs_tol.value_or(default_tolerance(t));
  const auto [l0, l1] = lowest_two(t, tol);
  GapPoint p;
  p.s = s;
  p.lambda0 = l0;
  p.lambda1 = l1;
  p.gap = std::max(0.0, l1 - l0);
  p.precision_flag = p.gap <= 100.0 * tol;
  return p;
}

struct MinGapOptions {
  int coarse_points = 200;  // lower bound on the grid size, see grid_density
  // Grid spacing is at most 1 / (grid_density * sqrt(n)): the barrier dip in
  // gap(s) narrows like n^{-1/2} and a fixed grid steps over it at large n.
  // Zero keeps exactly coarse_points.
  double grid_density = 4.0;
  double refine_tol = 1e-6;
  double s_lo = 0.01;
  double s_hi = 0.99;
  unsigned workers = 1;
  GapOptions gap;
};

struct MinGapResult {
  GapPoint best;                  // refined minimum; best.s is s_min
  std::vector<GapPoint> coarse;   // the uniform grid that seeded the refinement
};

// Grid search over [s_lo, s_hi] followed by golden-section refinement of the
// interval around the grid minimum. Never returns a gap above the grid minimum.
inline MinGapResult min_gap_scan(long n, const BarrierSpec& spec, const MinGapOptions& opts = {}) {
  if (opts.coarse_points < 3) throw ParameterError("min_gap: coarse_points must be >= 3");
  if (!(opts.refine_tol > 0.0)) throw ParameterError("min_gap: refine_tol must be > 0");
  if (!(opts.grid_density >= 0.0)) throw ParameterError("min_gap: grid_density must be >= 0");
  const double needed =
      std::ceil((opts.s_hi - opts.s_lo) * opts.grid_density * std::sqrt(static_cast<double>(n))) + 1.0;
  const auto m = std::max(static_cast<std::size_t>(opts.coarse_points), static_cast<std::size_t>(needed));
  MinGapResult out;
  out.coarse.resize(m);
  parallel_for(m, opts.workers, [&](std::size_t i) {
    const double s = opts.s_lo + (opts.s_hi - opts.s_lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    out.coarse[i] = gap_at(n, s, spec, opts.gap);
  });
  std::size_t imin = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (out.coarse[i].gap < out.coarse[imin].gap) imin = i;

  double a = out.coarse[imin == 0 ? 0 : imin - 1].s;
  double b = out.coarse[imin + 1 == m ? m - 1 : imin + 1].s;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  GapPoint pc = gap_at(n, c, spec, opts.gap);
  GapPoint pd = gap_at(n, d, spec, opts.gap);
  while (b - a > opts.refine_tol) {
    if (pc.gap <= pd.gap) {
      b = d;
      d = c;
      pd = pc;
      c = b - inv_phi * (b - a);
      pc = gap_at(n, c, spec, opts.gap);
    } else {
      a = c;
      c = d;
      pc = pd;
      d = a + inv_phi * (b - a);
      pd = gap_at(n, d, spec, opts.gap);
    }
  }
  GapPoint refined = gap_at(n, 0.5 * (a + b), spec, opts.gap);
  for (const GapPoint* p : {&pc, &pd})
    if (p->gap < refined.gap) refined = *p;
  out.best = refined.gap <= out.coarse[imin].gap ? refined : out.coarse[imin];
  return out;
}

inline GapPoint min_gap(long n, const BarrierSpec& spec, int coarse_points = 200,
                        double refine_tol = 1e-6, unsigned workers = 1) {
  MinGapOptions opts;
  opts.coarse_points = coarse_points;
  opts.refine_tol = refine_tol;
  opts.workers = workers;
  return min_gap_scan(n, spec, opts).best;
}

inline void write_gap_csv(std::ostream& os, const std::vector<GapPoint>& points) {
  const auto old = os.precision(17);
  os << "s,lambda0,lambda1,gap,precision_flag\n";
  for (const auto& p : points)
    os << p.s << ',' << p.lambda0 << ',' << p.lambda1 << ',' << p.gap << ','
       << (p.precision_flag ? 1 : 0) << '\n';
  os.precision(old);
}

}  // namespace adiagap
