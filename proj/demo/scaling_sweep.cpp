// Gap at s* for a growing number of qubits: discrete spectrum against the
// continuum model and the asymptotic law, then a power-law fit.

#include <cstdio>

#include "adiagap/adiagap.hpp"

int main() {
  using namespace adiagap;
  BarrierSpec spec;  // alpha = beta = 0.3, rectangular, centred at n/4

  StudyOptions opts;
  opts.n_min = 1000;
  opts.n_max = 100000;
  opts.points = 5;
  opts.workers = default_workers();
  const ScalingStudy st = run_study(spec, opts);

  std::printf("%10s %14s %14s %14s\n", "n", "discrete", "model", "asymptotic");
  for (std::size_t i = 0; i < st.n_values.size(); ++i) {
    std::printf("%10ld %14.8f %14.8f %14.8f\n", st.n_values[i], st.gaps_discrete[i].value_or(0.0),
                st.gaps_model[i].value_or(0.0), st.gaps_asymptotic[i].value_or(0.0));
  }
  std::printf("fitted exponent %.4f (region %s, law %.4f)\n", st.fit.exponent, to_string(st.region.region).c_str(),
              st.region.exponent.value_or(0.0));
}
