// adiagap command-line front end.
//
// Exit codes: 0 success, 2 usage error, 1 computation error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adiagap/adiagap.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace adiagap;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string output;
  std::string format;
  unsigned workers = 1;
  bool no_meta = false;

  // barrier flags
  double alpha = 0.3;
  double beta = 0.3;
  std::string shape = "rectangular";
  double center = 0.25;
  double height_scale = 0.75;
  double width_scale = 1.0;
  std::optional<double> override_width;
  std::optional<double> override_height;
};

BarrierSpec make_spec(const Globals& g) {
  BarrierSpec spec;
  spec.alpha = g.alpha;
  spec.beta = g.beta;
  spec.center_fraction = g.center;
  spec.height_scale = g.height_scale;
  spec.width_scale = g.width_scale;
  try {
    spec.shape = parse_shape(g.shape);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (g.override_width.has_value() != g.override_height.has_value())
    throw UsageError("--override-width and --override-height must be given together");
  if (g.override_width) spec.explicit_override = BarrierOverride{*g.override_width, *g.override_height};
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return spec;
}

json spec_json(const BarrierSpec& spec) {
  json j;
  for (const auto& [k, v] : to_key_values(spec)) j[k] = v;
  return j;
}

json meta_json(const std::string& sub) {
  return json{{"tool", "adiagap"}, {"version", ADIAGAP_VERSION}, {"subcommand", sub}};
}

// Writes to --output or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
    out().precision(17);
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Globals& g, const std::string& sub, json body) {
  if (!g.no_meta) body["meta"] = meta_json(sub);
  Sink sink(g.output);
  sink.out() << body.dump() << '\n';
}

void csv_meta(const Globals& g, std::ostream& os, const std::string& sub) {
  if (!g.no_meta) os << "# adiagap " << ADIAGAP_VERSION << ' ' << sub << '\n';
}

std::string pick_format(const Globals& g, const std::string& fallback) { return g.format.empty() ? fallback : g.format; }

double resolve_epsilon(const std::optional<double>& eps, const std::optional<long>& n) {
  if (eps && n) throw UsageError("give either --epsilon or --n, not both");
  if (!eps && !n) throw UsageError("one of --epsilon or --n is required");
  if (n) {
    if (*n < 2) throw UsageError("--n must be >= 2");
    return 2.0 / static_cast<double>(*n);
  }
  if (!(*eps > 0.0)) throw UsageError("--epsilon must be > 0");
  return *eps;
}

json gap_point_json(const GapPoint& p) {
  return json{{"s", p.s},
              {"lambda0", p.lambda0},
              {"lambda1", p.lambda1},
              {"gap", p.gap},
              {"precision_flag", p.precision_flag}};
}

json levels_json(const ModelParams& p, const ModelLevels& lv) {
  json j{{"epsilon", p.epsilon},
         {"a", p.a},
         {"barrier_height", p.barrier_height},
         {"omega", p.omega},
         {"c", p.c},
         {"e_even", lv.e_even},
         {"e_odd", lv.e_odd},
         {"nu_even", lv.nu_even},
         {"nu_odd", lv.nu_odd},
         {"k_even", lv.k_even},
         {"k_odd", lv.k_odd},
         {"gap", lv.gap},
         {"e_even_nearest_excited", lv.e_even_nearest_excited},
         {"harmonic", lv.harmonic}};
  return j;
}

// Rounds to 15 significant digits so decimal inputs give decimal outputs
// (0.5 - 0.3 - 0.3 prints as -0.1).
double tidy(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  std::ostringstream os;
  os.precision(15);
  os << x;
  return std::stod(os.str());
}

std::vector<double> parse_j_list(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw UsageError("bad --J value: " + tok);
      }
      if (used != tok.size()) throw UsageError("bad --J value: " + tok);
      out.push_back(v);
    }
  }
  if (out.empty()) throw UsageError("--J needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-gap numerics for symmetric-subspace annealing with a Hamming-weight barrier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ADIAGAP_VERSION));
  app.set_config("--config", "", "flat key = value file supplying defaults; flags override it");

  Globals g;
  g.workers = default_workers();
  app.add_option("-o,--output", g.output, "output file (default: stdout)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", g.workers, "worker threads (default: $ADIAGAP_WORKERS or hardware)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-meta", g.no_meta, "omit the version/metadata header");

  const std::string barrier_group = "Barrier";
  app.add_option("--alpha", g.alpha, "barrier width exponent")->group(barrier_group);
  app.add_option("--beta", g.beta, "barrier height exponent")->group(barrier_group);
  app.add_option("--shape", g.shape, "rectangular or gaussian")->group(barrier_group);
  app.add_option("--center", g.center, "barrier center as a fraction of n")->group(barrier_group);
  app.add_option("--height-scale", g.height_scale, "height prefactor")->group(barrier_group);
  app.add_option("--width-scale", g.width_scale, "width prefactor")->group(barrier_group);
  app.add_option("--override-width", g.override_width, "continuum half-width a (model only)")->group(barrier_group);
  app.add_option("--override-height", g.override_height, "continuum height V (model only)")->group(barrier_group);

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // gap
  long gap_n = 0;
  double gap_s = 0.0;
  std::string dump_matrix;
  auto* c_gap = sub("gap", "two lowest eigenvalues and gap of the symmetric Hamiltonian");
  c_gap->add_option("--n", gap_n, "qubits")->required()->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  c_gap->add_option("--s", gap_s, "schedule parameter")->required()->check(CLI::Range(0.0, 1.0));
  c_gap->add_option("--dump-matrix", dump_matrix, "write the tridiagonal matrix as CSV");

  // min-gap
  long mg_n = 0;
  int mg_coarse = 200;
  double mg_tol = 1e-6;
  auto* c_min = sub("min-gap", "minimum gap over s, plus the gap at s*");
  c_min->add_option("--n", mg_n, "qubits")->required()->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  c_min->add_option("--coarse-points", mg_coarse, "coarse grid size")->check(CLI::Range(3, 1000000));
  c_min->add_option("--refine-tol", mg_tol, "golden-section tolerance in s")->check(CLI::PositiveNumber);

  // model-gap / asymptotic / wavefunction share --epsilon | --n
  std::optional<double> m_eps;
  std::optional<long> m_n;
  auto* c_model = sub("model-gap", "continuum-model levels and gap");
  auto* c_asym = sub("asymptotic", "closed-form asymptotic gap");
  auto* c_wave = sub("wavefunction", "piecewise model wavefunction on a grid");
  for (auto* c : {c_model, c_asym, c_wave}) {
    c->add_option("--epsilon", m_eps, "semiclassical parameter 2/n");
    c->add_option("--n", m_n, "qubits (epsilon = 2/n)");
  }
  std::string parity = "even";
  double x_max = 0.2;
  int w_points = 2001;
  c_wave->add_option("--parity", parity, "even or odd")->check(CLI::IsMember({"even", "odd"}));
  c_wave->add_option("--x-max", x_max, "grid half-extent")->check(CLI::PositiveNumber);
  c_wave->add_option("--points", w_points, "grid points (odd, >= 101)");

  // classify
  auto* c_class = sub("classify", "region of the (alpha, beta) diagram");

  // study
  long st_min = 1000, st_max = 100000;
  int st_points = 7;
  std::string policy = "critical";
  bool no_discrete = false;
  std::string plot_script;
  auto* c_study = sub("study", "n-sweep of discrete, model and asymptotic gaps with fits");
  c_study->add_option("--n-min", st_min, "smallest n");
  c_study->add_option("--n-max", st_max, "largest n");
  c_study->add_option("--points", st_points, "geometric points");
  c_study->add_option("--policy", policy, "critical (gap at s*) or global (min over s)")
      ->check(CLI::IsMember({"critical", "global"}));
  c_study->add_flag("--no-discrete", no_discrete, "skip the tridiagonal computation");
  c_study->add_option("--plot-script", plot_script, "write a matplotlib script reading the CSV output");

  // villain-check
  std::vector<std::string> j_raw;
  auto* c_vill = sub("villain-check", "spin-operator identity deviations and potential coefficients");
  c_vill->add_option("--J", j_raw, "spin values, comma or space separated")->required();

  // pcf
  double p_nu = 0.0, p_z = 0.0;
  auto* c_pcf = sub("pcf", "parabolic cylinder function value and derivative");
  c_pcf->add_option("--nu", p_nu, "order")->required();
  c_pcf->add_option("--z", p_z, "argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int stage = 0;  // 0 while validating, 1 once computing
  try {
    const BarrierSpec spec = make_spec(g);

    if (c_gap->parsed()) {
      const std::string fmt = pick_format(g, "json");
      stage = 1;
      if (!dump_matrix.empty()) {
        std::ofstream f(dump_matrix);
        if (!f) throw std::runtime_error("cannot open " + dump_matrix);
        build_symmetric(gap_n, gap_s, spec).write_csv(f);
      }
      const GapPoint p = gap_at(gap_n, gap_s, spec);
      if (fmt == "json") {
        json body{{"n", gap_n}};
        body.update(gap_point_json(p));
        emit_json(g, "gap", body);
      } else {
        Sink sink(g.output);
        csv_meta(g, sink.out(), "gap");
        write_gap_csv(sink.out(), {p});
      }
    } else if (c_min->parsed()) {
      const std::string fmt = pick_format(g, "json");
      stage = 1;
      MinGapOptions opts;
      opts.coarse_points = mg_coarse;
      opts.refine_tol = mg_tol;
      opts.workers = g.workers;
      const MinGapResult r = min_gap_scan(mg_n, spec, opts);
      const GapPoint at = gap_at(mg_n, critical_s(), spec);
      if (fmt == "json") {
        json body{{"n", mg_n},
                  {"s_min", r.best.s},
                  {"gap_min", r.best.gap},
                  {"s_critical", critical_s()},
                  {"gap_at_critical", at.gap},
                  {"min", gap_point_json(r.best)},
                  {"critical", gap_point_json(at)}};
        emit_json(g, "min-gap", body);
      } else {
        Sink sink(g.output);
        csv_meta(g, sink.out(), "min-gap");
        write_gap_csv(sink.out(), r.coarse);
      }
    } else if (c_model->parsed() || c_asym->parsed()) {
      const double eps = resolve_epsilon(m_eps, m_n);
      if (pick_format(g, "json") != "json") throw UsageError("this subcommand only writes json");
      if (spec.shape != BarrierShape::Rectangular && !spec.explicit_override)
        throw UsageError("the continuum model needs a rectangular barrier or an override");
      stage = 1;
      const ModelParams p = ModelParams::from_spec(spec, eps);
      if (c_model->parsed()) {
        const ModelLevels lv = solve_levels(p);
        json body = levels_json(p, lv);
        const RegionInfo info = classify_region(spec.alpha, spec.beta);
        if (!spec.explicit_override && info.region != Region::Constant && spec.alpha < 0.5)
          body["gap_asymptotic"] = asymptotic_gap(p);
        emit_json(g, "model-gap", body);
      } else {
        const RegionInfo info = classify_region(p.alpha, p.beta);
        json body{{"epsilon", eps}, {"region", to_string(info.region)}, {"gap", asymptotic_gap(p)}};
        emit_json(g, "asymptotic", body);
      }
    } else if (c_wave->parsed()) {
      const double eps = resolve_epsilon(m_eps, m_n);
      const std::string fmt = pick_format(g, "csv");
      if (w_points < 101 || w_points % 2 == 0) throw UsageError("--points must be odd and >= 101");
      stage = 1;
      const ModelParams p = ModelParams::from_spec(spec, eps);
      const ModelLevels lv = solve_levels(p);
      const Parity par = parity == "odd" ? Parity::Odd : Parity::Even;
      const WavefunctionResult w = model_wavefunction(p, lv, par, x_max, w_points);
      if (fmt == "json") {
        json body{{"parity", parity}, {"energy", lv.energy(par)}, {"a1", w.a1}, {"a2", w.a2},
                  {"x", w.x_grid}, {"psi", w.values}};
        emit_json(g, "wavefunction", body);
      } else {
        Sink sink(g.output);
        csv_meta(g, sink.out(), "wavefunction");
        sink.out() << "x,psi\n";
        for (std::size_t i = 0; i < w.x_grid.size(); ++i) sink.out() << w.x_grid[i] << ',' << w.values[i] << '\n';
      }
    } else if (c_class->parsed()) {
      if (pick_format(g, "json") != "json") throw UsageError("classify only writes json");
      const RegionInfo info = classify_region(spec.alpha, spec.beta);
      json body{{"region", to_string(info.region)}};
      if (info.exponent) body["exponent"] = tidy(*info.exponent);
      if (info.stretch_exponent) body["stretch_exponent"] = tidy(*info.stretch_exponent);
      emit_json(g, "classify", body);
    } else if (c_study->parsed()) {
      const std::string fmt = pick_format(g, "csv");
      StudyOptions opts;
      opts.n_min = st_min;
      opts.n_max = st_max;
      opts.points = st_points;
      opts.s_policy = policy == "global" ? SPolicy::GlobalMin : SPolicy::AtCriticalS;
      opts.include_discrete = !no_discrete;
      opts.workers = g.workers;
      if (st_min < 10 || st_max < st_min || st_points < 3)
        throw UsageError("study needs n-min >= 10, n-max >= n-min, points >= 3");
      if (!plot_script.empty() && g.output.empty()) throw UsageError("--plot-script needs --output");
      stage = 1;
      const ScalingStudy st = run_study(spec, opts);
      auto fit_json = [](const FitResult& f) {
        json j{{"exponent", f.exponent}, {"log_prefactor", f.log_prefactor}, {"r_squared", f.r_squared}};
        if (f.stretch_c) j["stretch_c"] = *f.stretch_c;
        if (f.stretch_exponent_used) j["stretch_exponent_used"] = *f.stretch_exponent_used;
        return j;
      };
      json fits{{"region", to_string(st.region.region)}, {"s_policy", to_string(st.s_policy)},
                {"barrier", spec_json(spec)}, {"fit", fit_json(st.fit)}};
      if (st.fit_discrete) fits["fit_discrete"] = fit_json(*st.fit_discrete);
      if (st.fit_model) fits["fit_model"] = fit_json(*st.fit_model);
      if (st.fit_model_exponential) fits["fit_model_exponential"] = fit_json(*st.fit_model_exponential);
      if (fmt == "csv") {
        {
          Sink sink(g.output);
          csv_meta(g, sink.out(), "study");
          write_study_csv(sink.out(), st);
        }
        if (!g.output.empty()) {
          if (!g.no_meta) fits["meta"] = meta_json("study");
          std::ofstream side(g.output + ".json");
          side << fits.dump(2) << '\n';
        }
        if (!plot_script.empty()) {
          std::ofstream ps(plot_script);
          write_plot_script(ps, g.output);
        }
      } else {
        json rows = json::array();
        auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
        for (std::size_t i = 0; i < st.n_values.size(); ++i)
          rows.push_back({{"n", st.n_values[i]},
                          {"epsilon", 2.0 / static_cast<double>(st.n_values[i])},
                          {"gap_discrete", opt(st.gaps_discrete[i])},
                          {"gap_model", opt(st.gaps_model[i])},
                          {"gap_asymptotic", opt(st.gaps_asymptotic[i])},
                          {"s_used", opt(st.s_used[i])},
                          {"flags", st.flags[i]}});
        fits["rows"] = rows;
        emit_json(g, "study", fits);
      }
    } else if (c_vill->parsed()) {
      const std::vector<double> js = parse_j_list(j_raw);
      for (double J : js)
        if (!(J >= 1.0) || std::abs(2.0 * J - std::round(2.0 * J)) > 0.0)
          throw UsageError("--J values must be half-integers >= 1");
      const std::string fmt = pick_format(g, "csv");
      stage = 1;
      const double kinetic = 0.375 * kSqrt3Minus1;
      json rows = json::array();
      for (double J : js) {
        const SpinOperators ops = build_spin_ops(J);
        const double quad = potential_quadratic_coefficient(0.0);
        rows.push_back({{"J", J},
                        {"dim", ops.dim},
                        {"jx_deviation", verify_jx_identity(ops)},
                        {"delta", delta_constant(ops.epsilon)},
                        {"quadratic_coefficient", quad},
                        {"omega_squared", quad / kinetic}});
      }
      if (fmt == "json") {
        emit_json(g, "villain-check", json{{"rows", rows}});
      } else {
        Sink sink(g.output);
        csv_meta(g, sink.out(), "villain-check");
        sink.out() << "J,dim,jx_deviation,delta,quadratic_coefficient,omega_squared\n";
        for (const auto& r : rows)
          sink.out() << r["J"].get<double>() << ',' << r["dim"].get<int>() << ','
                     << r["jx_deviation"].get<double>() << ',' << r["delta"].get<double>() << ','
                     << r["quadratic_coefficient"].get<double>() << ',' << r["omega_squared"].get<double>() << '\n';
      }
    } else if (c_pcf->parsed()) {
      if (pick_format(g, "json") != "json") throw UsageError("pcf only writes json");
      stage = 1;
      const PcfValue v = pcf_d(p_nu, p_z);
      emit_json(g, "pcf", json{{"nu", p_nu}, {"z", p_z}, {"value", v.value}, {"derivative", v.derivative}});
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << (stage == 0 ? "usage error: " : "error: ") << e.what() << '\n';
    return stage == 0 ? 2 : 1;
  }
  return 0;
}
