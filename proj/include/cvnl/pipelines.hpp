#pragma once

// Grid and Monte Carlo pipelines behind the command-line tool. Each pipeline
// computes typed rows and renders them as CSV with a one-line JSON metadata
// header. Rows are computed in parallel and written in index order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cvnl/entanglement.hpp"
#include "cvnl/optimizer.hpp"
#include "cvnl/sampler.hpp"
#include "cvnl/svetlichny.hpp"

namespace cvnl {

inline constexpr const char* kCsvSchema = "cvnl.csv/1";

std::string code_version();

// Calls fn(i) for i in [0, count) on `threads` workers. fn must write only to
// slot i of its output.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < count; i = next++) fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// printf %.17g.
std::string format_real(double v);

// Physical constants recorded in every CSV header for the plotting side.
nlohmann::json reference_constants();

struct CsvDocument {
  nlohmann::json metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render() const;
};

// --- symmetric pure states ---------------------------------------------------

struct SymmetricReport {
  double a = 1.0;
  double p_star = 0.0;
  double s_max_analytic = 0.0;
  double s_max_numeric = 0.0;
  double delta = 0.0;
};

SymmetricReport svet_sym(double a, const OptimizerOptions& opts = {});
nlohmann::json to_json(const SymmetricReport& r);

// --- Fig. 1(a),(b) style grid over (a2, a3) at fixed a1 ----------------------

struct GridRow {
  double a2 = 0.0;
  double a3 = 0.0;
  // Empty when (a1, a2, a3) violates the triangle condition.
  std::optional<double> s_max;
  std::optional<double> entanglement;
};

std::vector<double> grid_values(double lo, double hi, double step);

std::vector<GridRow> compute_fig1ab(double a1, const std::vector<double>& axis,
                                    const OptimizerOptions& opts, int threads);
CsvDocument render_fig1ab(double a1, const std::vector<double>& axis, const std::vector<GridRow>& rows,
                          const OptimizerOptions& opts);

// --- pure scatter ------------------------------------------------------------

struct PureScatterRow {
  PureStateParams params;
  double entanglement = 0.0;
  double s_max = 0.0;
  std::array<double, 3> p{};
  bool converged = false;
};

std::vector<PureScatterRow> compute_scatter_pure(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                                 int threads);
CsvDocument render_scatter_pure(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                const std::vector<PureScatterRow>& rows);

// --- mixed scatter -----------------------------------------------------------

struct MixedScatterRow {
  double purity = 0.0;
  double s_max = 0.0;
  std::array<double, 3> nu{};
  std::array<double, 3> squeezing{};
  MeasurementSettings settings;
  bool converged = false;
};

std::vector<MixedScatterRow> compute_scatter_mixed(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                                   int threads);
CsvDocument render_scatter_mixed(const SamplerConfig& cfg, const OptimizerOptions& opts,
                                 const std::vector<MixedScatterRow>& rows);

// --- symmetric mixed classification ------------------------------------------

struct ClassifyRow {
  double a = 1.0;
  double z = 1.0;
  double mu = 1.0;
  RegionLabel label;
};

// Inverse of z_parameter on (0, 1].
double a_from_z(double z);

std::vector<ClassifyRow> compute_classify(const std::vector<double>& a_values,
                                          const std::vector<double>& mu_values,
                                          const OptimizerOptions& opts, int threads);
CsvDocument render_classify(const std::vector<ClassifyRow>& rows, const OptimizerOptions& opts);

}  // namespace cvnl
