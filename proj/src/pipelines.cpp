#include "cvnl/pipelines.hpp"

#include <cmath>
#include <cstdio>

#include "cvnl/errors.hpp"

#ifndef CVNL_VERSION
#define CVNL_VERSION "dev"
#endif

namespace cvnl {

namespace {

nlohmann::json optimizer_json(const OptimizerOptions& o) {
  return {{"method", "nelder-mead multistart"},
          {"starts", o.starts},
          {"box", {o.box_lo, o.box_hi}},
          {"f_tol", o.f_tol},
          {"max_evals_per_start", o.max_evals_per_start},
          {"initial_edge", o.initial_edge},
          {"seed", o.seed}};
}

nlohmann::json sampler_json(const SamplerConfig& c) {
  return {{"seed", c.seed},       {"count", c.count},   {"a_max", c.a_max},
          {"nu_max", c.nu_max},   {"r_max", c.r_max},   {"low_range_bias", c.low_range_bias},
          {"mixed_law", to_string(c.law)}};
}

nlohmann::json base_metadata(const std::string& table) {
  return {{"schema", kCsvSchema},
          {"table", table},
          {"version", code_version()},
          {"constants", reference_constants()}};
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string code_version() { return CVNL_VERSION; }

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json reference_constants() {
  return {{"svetlichny_bound", kSvetlichnyBound},
          {"asymptotic_max", asymptotic_svetlichny_max()},
          {"purity_cutoff", svetlichny_purity_cutoff()},
          {"symmetric_threshold_a", symmetric_violation_threshold()},
          {"entanglement_threshold", 0.5 * std::log(32.0 / 27.0)}};
}

std::string CsvDocument::render() const {
  std::string out = "# " + metadata.dump() + "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

SymmetricReport svet_sym(double a, const OptimizerOptions& opts) {
  SymmetricReport r;
  r.a = a;
  r.p_star = symmetric_pstar(a);
  r.s_max_analytic = symmetric_max_analytic(a);
  r.s_max_numeric = maximize_restricted(symmetric_pure(a), opts).value;
  r.delta = std::abs(r.s_max_analytic - r.s_max_numeric);
  return r;
}

nlohmann::json to_json(const SymmetricReport& r) {
  return {{"a", r.a},
          {"p_star", r.p_star},
          {"s_max_analytic", r.s_max_analytic},
          {"s_max_numeric", r.s_max_numeric},
          {"delta", r.delta}};
}

std::vector<double> grid_values(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("grid needs step > 0 and max >= min");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
  return v;
}

std::vector<GridRow> compute_fig1ab(double a1, const std::vector<double>& axis,
                                    const OptimizerOptions& opts, int threads) {
  const std::size_t n = axis.size();
  std::vector<GridRow> rows(n * n);
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    GridRow& row = rows[i];
    row.a2 = axis[i / n];
    row.a3 = axis[i % n];
    const PureStateParams params{a1, row.a2, row.a3};
    if (!params.satisfies_triangle()) return;
    row.s_max = maximize_restricted(build_pure_standard_form(params), opts).value;
    row.entanglement = tripartite_renyi2_pure(params);
  });
  return rows;
}

CsvDocument render_fig1ab(double a1, const std::vector<double>& axis, const std::vector<GridRow>& rows,
                          const OptimizerOptions& opts) {
  CsvDocument doc;
  doc.metadata = base_metadata("fig1ab");
  doc.metadata["config"] = {{"a1", a1}, {"axis", axis}};
  doc.metadata["optimizer"] = optimizer_json(opts);
  doc.columns = {"a2", "a3", "s_max", "entanglement"};
  for (const auto& r : rows) {
    doc.rows.push_back({format_real(r.a2), format_real(r.a3), r.s_max ? format_real(*r.s_max) : "",
                        r.entanglement ? format_real(*r.entanglement) : ""});
  }
  return doc;
}

std::vector<PureScatterRow> compute_scatter_pure(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                                 int threads) {
  cfg.validate();
  std::vector<PureScatterRow> rows(cfg.count);
  parallel_for(cfg.count, threads, [&](std::size_t i) {
    PureScatterRow& row = rows[i];
    row.params = sample_pure_params(cfg, i);
    const auto r = maximize_restricted(build_pure_standard_form(row.params), opts);
    row.entanglement = tripartite_renyi2_pure(row.params);
    row.s_max = r.value;
    for (std::size_t j = 0; j < 3; ++j) row.p[j] = r.settings.xi[j](1);
    row.converged = r.converged;
  });
  return rows;
}

CsvDocument render_scatter_pure(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                const std::vector<PureScatterRow>& rows) {
  CsvDocument doc;
  doc.metadata = base_metadata("scatter_pure");
  doc.metadata["sampler"] = sampler_json(cfg);
  doc.metadata["sampler"]["law"] = "uniform a_i with triangle rejection";
  doc.metadata["optimizer"] = optimizer_json(opts);
  doc.metadata["settings_ansatz"] = "xi_j=(0,p_j), xi'_j=(0,-p_j)";
  doc.columns = {"index", "a1", "a2", "a3", "entanglement", "s_max", "p1", "p2", "p3", "converged"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    doc.rows.push_back({std::to_string(i), format_real(r.params.a1), format_real(r.params.a2),
                        format_real(r.params.a3), format_real(r.entanglement), format_real(r.s_max),
                        format_real(r.p[0]), format_real(r.p[1]), format_real(r.p[2]),
                        flag(r.converged)});
  }
  return doc;
}

std::vector<MixedScatterRow> compute_scatter_mixed(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                                   int threads) {
  cfg.validate();
  std::vector<MixedScatterRow> rows(cfg.count);
  parallel_for(cfg.count, threads, [&](std::size_t i) {
    MixedScatterRow& row = rows[i];
    const auto sample = sample_mixed(cfg, i);
    const auto r = maximize_full(sample.cm, opts);
    row.purity = purity(sample.cm);
    row.s_max = r.value;
    row.nu = sample.nu;
    row.squeezing = sample.squeezing;
    row.settings = r.settings;
    row.converged = r.converged;
  });
  return rows;
}

CsvDocument render_scatter_mixed(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                 const std::vector<MixedScatterRow>& rows) {
  CsvDocument doc;
  doc.metadata = base_metadata("scatter_mixed");
  doc.metadata["sampler"] = sampler_json(cfg);
  doc.metadata["sampler"]["law"] = to_string(cfg.law);
  doc.metadata["optimizer"] = optimizer_json(opts);
  doc.metadata["settings_ansatz"] = "full";
  doc.columns = {"index", "purity", "s_max", "nu1", "nu2", "nu3", "r1", "r2", "r3"};
  for (const char* name : {"q1", "p1", "q2", "p2", "q3", "p3", "q1p", "p1p", "q2p", "p2p", "q3p", "p3p"}) {
    doc.columns.emplace_back(name);
  }
  doc.columns.emplace_back("converged");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::vector<std::string> line{std::to_string(i), format_real(r.purity), format_real(r.s_max)};
    for (double v : r.nu) line.push_back(format_real(v));
    for (double v : r.squeezing) line.push_back(format_real(v));
    for (double v : r.settings.flat()) line.push_back(format_real(v));
    line.push_back(flag(r.converged));
    doc.rows.push_back(std::move(line));
  }
  return doc;
}

double a_from_z(double z) {
  if (!(z > 0.0 && z <= 1.0)) throw DomainError("z must lie in (0, 1]");
  if (z == 1.0) return 1.0;
  // z_parameter decreases from 1 at a = 1 towards 0.
  double lo = 1.0;
  double hi = 2.0;
  while (z_parameter(hi) > z) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw DomainError("z too small to invert");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (z_parameter(mid) > z ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<ClassifyRow> compute_classify(const std::vector<double>& a_values,
                                          const std::vector<double>& mu_values,
                                          const OptimizerOptions& opts, int threads) {
  const std::size_t nm = mu_values.size();
  std::vector<ClassifyRow> rows(a_values.size() * nm);
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    ClassifyRow& row = rows[i];
    row.a = a_values[i / nm];
    row.mu = mu_values[i % nm];
    row.z = z_parameter(row.a);
    row.label = classify_symmetric_mixed(row.a, row.mu, opts);
  });
  return rows;
}

CsvDocument render_classify(const std::vector<ClassifyRow>& rows, const OptimizerOptions& opts) {
  CsvDocument doc;
  doc.metadata = base_metadata("classify");
  doc.metadata["optimizer"] = optimizer_json(opts);
  doc.metadata["separability_note"] =
      "fully_inseparable=0 covers both fully separable and bound entangled states";
  doc.columns = {"a",           "z",
                 "mu",          "fully_inseparable",
                 "promiscuous", "svetlichny_nonlocal",
                 "min_nu_bipartition", "min_nu_two_mode",
                 "s_max"};
  for (const auto& r : rows) {
    doc.rows.push_back({format_real(r.a), format_real(r.z), format_real(r.mu),
                        flag(r.label.fully_inseparable), flag(r.label.promiscuous),
                        flag(r.label.svetlichny_nonlocal), format_real(r.label.min_nu_bipartition),
                        format_real(r.label.min_nu_two_mode), format_real(r.label.s_max)});
  }
  return doc;
}

}  // namespace cvnl
