#pragma once

// Multistart Nelder-Mead maximizer.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cvnl {

struct OptimizerOptions {
  int starts = 16;
  // Random starts are drawn uniformly from [box_lo, box_hi] per coordinate.
  double box_lo = -1.5;
  double box_hi = 1.5;
  double f_tol = 1e-12;
  int max_evals_per_start = 2000;
  std::uint64_t seed = 0;
  // Worker threads for the starts. Does not affect the result.
  int threads = 1;
  double initial_edge = 0.25;

  void validate() const;
};

struct OptimizationResult {
  double value = 0.0;
  std::vector<double> point;
  long evaluations = 0;
  bool converged = false;
  // Index of the winning start; deterministic starts come first.
  int best_start = -1;
};

using Objective = std::function<double(std::span<const double>)>;

// Maximizes `f` over R^n. `extra_starts` are tried before the random ones and
// take the lowest start indices. Ties are broken by the lower start index, so
// the result does not depend on `threads`.
OptimizationResult maximize(const Objective& f, int n, const OptimizerOptions& opts,
                            std::span<const std::vector<double>> extra_starts = {});

// One local simplex ascent from `x0`, including the single restart of a
// collapsed simplex.
OptimizationResult nelder_mead(const Objective& f, std::vector<double> x0,
                               const OptimizerOptions& opts);

// Stateless 64-bit mixer used to derive per-index seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace cvnl
