// Lowest even and odd states of the harmonic well with a thin central step,
// printed as x, psi_even, psi_odd columns.

#include <cstdio>

#include "adiagap/adiagap.hpp"

int main() {
  using namespace adiagap;
  BarrierSpec spec;
  spec.explicit_override = BarrierOverride{1.0 / 140.0, 1.0 / 300.0};
  const ModelParams p = ModelParams::from_spec(spec, 1.0 / 5000.0);
  const ModelLevels lv = solve_levels(p);
  std::printf("# E_even %.10f  E_odd %.10f  gap %.10f\n", lv.e_even, lv.e_odd, lv.gap);

  const auto even = model_wavefunction(p, lv, Parity::Even, 0.15, 301);
  const auto odd = model_wavefunction(p, lv, Parity::Odd, 0.15, 301);
  for (std::size_t i = 0; i < even.x_grid.size(); ++i)
    std::printf("%.6f %.8f %.8f\n", even.x_grid[i], even.values[i], odd.values[i]);
}
