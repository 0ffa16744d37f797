// Command-line front end: each subcommand writes a CSV (with a JSON manifest
// sidecar) or prints a JSON report.
//
// Exit codes: 0 success, 2 parse or configuration error, 3 internal
// consistency failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvnl/bell.hpp"
#include "cvnl/errors.hpp"
#include "cvnl/pipelines.hpp"
#include "cvnl/state_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

Grid parse_grid(const std::string& text) {
  Grid g;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw cvnl::ParseError(0, "grid must be 'min:max:step', got '" + text + "'");
  }
  return g;
}

std::vector<double> parse_list(const std::string& text, std::size_t expected) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cvnl::ParseError(0, "malformed number '" + item + "' in list");
    }
  }
  if (v.size() != expected) {
    throw cvnl::ParseError(0, "expected " + std::to_string(expected) + " comma-separated values");
  }
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cvnl::Error("cannot write '" + path + "'");
  out << text;
}

std::string manifest_path(const std::string& csv_path) { return csv_path + ".manifest.json"; }

// Writes the CSV and its manifest sidecar.
void emit(cvnl::CsvDocument doc, const std::string& out, const std::string& command,
          const nlohmann::json& config, std::uint64_t seed,
          std::chrono::steady_clock::time_point started) {
  const auto manifest_file = manifest_path(out);
  doc.metadata["manifest"] = manifest_file.substr(manifest_file.find_last_of('/') + 1);
  write_text(out, doc.render());
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const nlohmann::json manifest{{"command", command},
                                {"config", config},
                                {"seed", seed},
                                {"code_version", cvnl::code_version()},
                                {"wall_time_s", wall},
                                {"outputs", {out}}};
  write_text(manifest_file, manifest.dump(2) + "\n");
}

void add_optimizer_flags(CLI::App* cmd, cvnl::OptimizerOptions& opts) {
  cmd->add_option("--starts", opts.starts, "Random multistarts per search")->capture_default_str();
  cmd->add_option("--max-evals", opts.max_evals_per_start, "Evaluation budget per start")
      ->capture_default_str();
  cmd->add_option("--opt-seed", opts.seed, "Seed for random starts")->capture_default_str();
}

nlohmann::json settings_json(const cvnl::MeasurementSettings& s) {
  const auto flat = s.flat();
  return std::vector<double>(flat.begin(), flat.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genuine tripartite nonlocality of three-mode Gaussian states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cvnl::code_version());

  int threads = 1;
  app.add_option("--threads", threads, "Worker threads (never changes output)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  cvnl::OptimizerOptions opts;

  // svet-sym
  double sym_a = 2.0;
  auto* svet_sym = app.add_subcommand("svet-sym", "Analytic vs numeric max |S| of a symmetric pure state");
  svet_sym->add_option("--a", sym_a, "Local invariant a >= 1")->required();
  add_optimizer_flags(svet_sym, opts);

  // fig1ab
  double a1 = 2.0;
  double grid_min = 1.0;
  double grid_max = 3.0;
  double step = 0.1;
  std::string out;
  auto* fig1ab = app.add_subcommand("fig1ab", "Grid of max |S| and tripartite entanglement at fixed a1");
  fig1ab->add_option("--a1", a1, "Fixed local invariant of mode 1")->capture_default_str();
  fig1ab->add_option("--grid-min", grid_min, "Lower end of the a2 and a3 axes")->capture_default_str();
  fig1ab->add_option("--grid-max", grid_max, "Upper end of the a2 and a3 axes")->capture_default_str();
  fig1ab->add_option("--step", step, "Grid spacing")->capture_default_str();
  fig1ab->add_option("--out", out, "CSV output path")->required();
  add_optimizer_flags(fig1ab, opts);

  // scatter-pure / scatter-mixed
  cvnl::SamplerConfig sampler;
  sampler.count = 1000;
  std::string law = to_string(sampler.law);
  auto* scatter_pure = app.add_subcommand("scatter-pure", "Random pure states: entanglement vs max |S|");
  scatter_pure->add_option("--n", sampler.count, "Number of samples")->capture_default_str();
  scatter_pure->add_option("--seed", sampler.seed, "Sampler seed")->capture_default_str();
  scatter_pure->add_option("--a-max", sampler.a_max, "Upper bound on each a_i")->capture_default_str();
  scatter_pure->add_flag("--low-range-bias", sampler.low_range_bias, "Draw a_i from [1, 1.5]");
  scatter_pure->add_option("--out", out, "CSV output path")->required();
  add_optimizer_flags(scatter_pure, opts);

  auto* scatter_mixed = app.add_subcommand("scatter-mixed", "Random mixed states: purity vs max |S|");
  scatter_mixed->add_option("--n", sampler.count, "Number of samples")->capture_default_str();
  scatter_mixed->add_option("--seed", sampler.seed, "Sampler seed")->capture_default_str();
  scatter_mixed->add_option("--nu-max", sampler.nu_max, "Upper bound on symplectic eigenvalues")->capture_default_str();
  scatter_mixed->add_option("--r-max", sampler.r_max, "Upper bound on squeezing parameters")->capture_default_str();
  scatter_mixed->add_option("--law", law, "williamson-euler | product-thermal")->capture_default_str();
  scatter_mixed->add_option("--out", out, "CSV output path")->required();
  add_optimizer_flags(scatter_mixed, opts);

  // classify
  std::string a_grid;
  std::string z_grid;
  std::string mu_grid = "0.5:1:0.05";
  auto* classify = app.add_subcommand("classify", "Region flags of symmetric mixed states");
  auto* a_opt = classify->add_option("--a-grid", a_grid, "min:max:step over a");
  auto* z_opt = classify->add_option("--z-grid", z_grid, "min:max:step over z in (0, 1]");
  a_opt->excludes(z_opt);
  classify->add_option("--mu-grid", mu_grid, "min:max:step over purity")->capture_default_str();
  classify->add_option("--out", out, "CSV output path")->required();
  add_optimizer_flags(classify, opts);

  // bell
  std::string mode;
  std::string ineq = "svetlichny";
  std::string state_file;
  double bell_sym_a = 0.0;
  std::string params_text;
  std::string settings_text;
  auto* bell = app.add_subcommand("bell", "Evaluate or maximize a Bell expression");
  bell->add_option("mode", mode, "eval | maximize")->required()->check(CLI::IsMember({"eval", "maximize"}));
  bell->add_option("--ineq", ineq, "Inequality file or 'svetlichny'")->capture_default_str();
  auto* sf = bell->add_option("--state-file", state_file, "Covariance matrix JSON");
  auto* sa = bell->add_option("--sym-a", bell_sym_a, "Symmetric pure state sigma^s(a)");
  auto* sp = bell->add_option("--params", params_text, "Pure standard form a1,a2,a3");
  sf->excludes(sa)->excludes(sp);
  sa->excludes(sp);
  bell->add_option("--settings", settings_text, "Twelve comma-separated setting coordinates (eval)");
  bell->add_option("--seed", opts.seed, "Seed for random starts")->capture_default_str();
  bell->add_option("--starts", opts.starts, "Random multistarts per search")->capture_default_str();

  // state
  double state_sym_a = 0.0;
  double mixed_mu = 1.0;
  std::string state_params;
  auto* state = app.add_subcommand("state", "Write a covariance matrix JSON file");
  auto* ssa = state->add_option("--sym-a", state_sym_a, "sigma^s(a), or sigma^ms(a, mu) with --mu");
  auto* ssp = state->add_option("--params", state_params, "Pure standard form a1,a2,a3");
  ssa->excludes(ssp);
  state->add_option("--mu", mixed_mu, "Purity for the scaled symmetric state")->needs(ssa);
  state->add_option("--out", out, "JSON output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  opts.threads = 1;
  const auto started = std::chrono::steady_clock::now();
  try {
    if (*svet_sym) {
      const auto report = cvnl::svet_sym(sym_a, opts);
      std::cout << cvnl::to_json(report).dump(2) << "\n";
      return report.delta > 1e-5 ? kExitConsistency : 0;
    }
    if (*fig1ab) {
      const auto axis = cvnl::grid_values(grid_min, grid_max, step);
      const auto rows = cvnl::compute_fig1ab(a1, axis, opts, threads);
      emit(cvnl::render_fig1ab(a1, axis, rows, opts), out, "fig1ab",
           {{"a1", a1}, {"grid_min", grid_min}, {"grid_max", grid_max}, {"step", step}}, opts.seed,
           started);
      return 0;
    }
    if (*scatter_pure) {
      const auto rows = cvnl::compute_scatter_pure(sampler, opts, threads);
      emit(cvnl::render_scatter_pure(sampler, opts, rows), out, "scatter-pure",
           {{"n", sampler.count}, {"a_max", sampler.a_max}, {"low_range_bias", sampler.low_range_bias}},
           sampler.seed, started);
      return 0;
    }
    if (*scatter_mixed) {
      sampler.law = cvnl::mixed_law_from_string(law);
      const auto rows = cvnl::compute_scatter_mixed(sampler, opts, threads);
      emit(cvnl::render_scatter_mixed(sampler, opts, rows), out, "scatter-mixed",
           {{"n", sampler.count}, {"nu_max", sampler.nu_max}, {"r_max", sampler.r_max}, {"law", law}},
           sampler.seed, started);
      return 0;
    }
    if (*classify) {
      std::vector<double> a_values;
      if (!z_grid.empty()) {
        const auto g = parse_grid(z_grid);
        for (double z : cvnl::grid_values(g.lo, g.hi, g.step)) a_values.push_back(cvnl::a_from_z(z));
      } else {
        const auto g = parse_grid(a_grid.empty() ? "1:3:0.1" : a_grid);
        a_values = cvnl::grid_values(g.lo, g.hi, g.step);
      }
      const auto mg = parse_grid(mu_grid);
      const auto mu_values = cvnl::grid_values(mg.lo, mg.hi, mg.step);
      const auto rows = cvnl::compute_classify(a_values, mu_values, opts, threads);
      emit(cvnl::render_classify(rows, opts), out, "classify",
           {{"a_grid", a_grid}, {"z_grid", z_grid}, {"mu_grid", mu_grid}}, opts.seed, started);
      return 0;
    }
    if (*bell) {
      const auto expr = cvnl::resolve_expression(ineq);
      const cvnl::CovarianceMatrix cm = [&] {
        if (!state_file.empty()) return cvnl::read_state_file(state_file);
        if (!params_text.empty()) {
          const auto p = parse_list(params_text, 3);
          return cvnl::build_pure_standard_form({p[0], p[1], p[2]});
        }
        if (*sa) return cvnl::symmetric_pure(bell_sym_a);
        throw cvnl::ParseError(0, "bell needs --state-file, --sym-a or --params");
      }();
      nlohmann::json report{{"expression", expr.name}, {"mode", mode}, {"bound", expr.bound}};
      if (mode == "eval") {
        const auto settings = settings_text.empty()
                                  ? cvnl::MeasurementSettings::origin()
                                  : cvnl::MeasurementSettings::from_flat(parse_list(settings_text, 12));
        const double value = cvnl::evaluate(expr, cm, settings);
        report["value"] = value;
        report["violated"] = value > expr.bound;
        report["settings"] = settings_json(settings);
      } else {
        const auto r = cvnl::maximize_expression(expr, cm, opts);
        report["value"] = r.value;
        report["violated"] = r.value > expr.bound;
        report["settings"] = settings_json(r.settings);
        report["evaluations"] = r.evaluations;
        report["converged"] = r.converged;
        report["seed"] = opts.seed;
      }
      std::cout << report.dump(2) << "\n";
      return 0;
    }
    if (*state) {
      cvnl::CovarianceMatrix cm = cvnl::vacuum();
      if (!state_params.empty()) {
        const auto p = parse_list(state_params, 3);
        cm = cvnl::build_pure_standard_form({p[0], p[1], p[2]});
      } else if (*ssa) {
        cm = cvnl::scaled_symmetric_mixed(state_sym_a, mixed_mu);
      }
      cvnl::write_state_file(cm, out);
      return 0;
    }
  } catch (const cvnl::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const cvnl::NumericalDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const cvnl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
