#include "cvnl/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "cvnl/errors.hpp"

namespace cvnl {

void OptimizerOptions::validate() const {
  if (starts < 1) throw DomainError("optimizer needs at least one start");
  if (!(box_hi > box_lo)) throw DomainError("optimizer start box is empty");
  if (!(f_tol > 0.0)) throw DomainError("f_tol must be positive");
  if (max_evals_per_start < 1) throw DomainError("max_evals_per_start must be positive");
  if (!(initial_edge > 0.0)) throw DomainError("initial_edge must be positive");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

class Simplex {
 public:
  Simplex(const Objective& f, int n, long budget) : f_(f), n_(n), budget_(budget) {}

  double eval(const std::vector<double>& x) {
    ++evals_;
    const double v = f_(x);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  }

  long evals() const { return evals_; }
  bool exhausted() const { return evals_ >= budget_; }

  // Runs one ascent from `x0` with edge length `edge`. Returns true when the
  // spread of values across the simplex fell below `f_tol`.
  bool run(std::vector<double>& best_x, double& best_f, double edge, double f_tol) {
    const auto m = static_cast<std::size_t>(n_) + 1;
    std::vector<std::vector<double>> pts(m, best_x);
    std::vector<double> vals(m);
    vals[0] = best_f;
    for (std::size_t i = 1; i < m; ++i) {
      pts[i][i - 1] += edge;
      vals[i] = eval(pts[i]);
    }
    std::vector<std::size_t> order(m);
    std::vector<double> centroid(static_cast<std::size_t>(n_));
    std::vector<double> trial(static_cast<std::size_t>(n_));
    std::vector<double> trial2(static_cast<std::size_t>(n_));

    auto along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
      for (std::size_t d = 0; d < out.size(); ++d) out[d] = centroid[d] + t * (worst[d] - centroid[d]);
    };

    bool converged = false;
    while (true) {
      std::iota(order.begin(), order.end(), 0);
      // Descending by value, stable so that ties keep vertex order.
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
      const std::size_t hi = order.front();
      const std::size_t lo = order.back();
      const std::size_t second_lo = order[m - 2];
      if (vals[hi] - vals[lo] <= f_tol * (1.0 + std::abs(vals[hi]))) {
        converged = true;
        break;
      }
      if (exhausted()) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == lo) continue;
        for (std::size_t d = 0; d < centroid.size(); ++d) centroid[d] += pts[i][d];
      }
      for (double& c : centroid) c /= static_cast<double>(n_);

      along(-kReflect, trial, pts[lo]);
      const double fr = eval(trial);
      if (fr > vals[hi]) {
        along(-kReflect * kExpand, trial2, pts[lo]);
        const double fe = eval(trial2);
        if (fe > fr) {
          pts[lo] = trial2;
          vals[lo] = fe;
        } else {
          pts[lo] = trial;
          vals[lo] = fr;
        }
        continue;
      }
      if (fr > vals[second_lo]) {
        pts[lo] = trial;
        vals[lo] = fr;
        continue;
      }
      // Outside contraction when the reflection beat the worst vertex,
      // inside contraction otherwise.
      const bool outside = fr > vals[lo];
      along(outside ? -kReflect * kContract : kContract, trial2, pts[lo]);
      const double fc = eval(trial2);
      if (fc > (outside ? fr : vals[lo])) {
        pts[lo] = trial2;
        vals[lo] = fc;
        continue;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (i == hi) continue;
        for (std::size_t d = 0; d < pts[i].size(); ++d) {
          pts[i][d] = pts[hi][d] + kShrink * (pts[i][d] - pts[hi][d]);
        }
        vals[i] = eval(pts[i]);
      }
    }
    const auto best = static_cast<std::size_t>(
        std::max_element(vals.begin(), vals.end()) - vals.begin());
    if (vals[best] > best_f) {
      best_f = vals[best];
      best_x = pts[best];
    }
    return converged;
  }

 private:
  const Objective& f_;
  int n_;
  long budget_;
  long evals_ = 0;
};

}  // namespace

OptimizationResult nelder_mead(const Objective& f, std::vector<double> x0,
                               const OptimizerOptions& opts) {
  const int n = static_cast<int>(x0.size());
  Simplex simplex(f, n, opts.max_evals_per_start);
  double best_f = simplex.eval(x0);
  bool converged = simplex.run(x0, best_f, opts.initial_edge, opts.f_tol);
  if (converged && !simplex.exhausted()) {
    // A collapsed simplex may sit on a ridge; rebuild it once around the
    // incumbent.
    converged = simplex.run(x0, best_f, opts.initial_edge, opts.f_tol);
  }
  return {best_f, std::move(x0), simplex.evals(), converged, 0};
}

OptimizationResult maximize(const Objective& f, int n, const OptimizerOptions& opts,
                            std::span<const std::vector<double>> extra_starts) {
  opts.validate();
  if (n < 1) throw DomainError("optimizer dimension must be positive");
  for (const auto& s : extra_starts) {
    if (static_cast<int>(s.size()) != n) throw DimensionMismatch("extra start has wrong dimension");
  }

  const std::size_t total = extra_starts.size() + static_cast<std::size_t>(opts.starts);
  std::vector<std::vector<double>> starts(total);
  for (std::size_t i = 0; i < extra_starts.size(); ++i) starts[i] = extra_starts[i];
  for (int r = 0; r < opts.starts; ++r) {
    std::mt19937_64 rng(derive_seed(opts.seed, 0x6f7074, static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> u(opts.box_lo, opts.box_hi);
    auto& x = starts[extra_starts.size() + static_cast<std::size_t>(r)];
    x.resize(static_cast<std::size_t>(n));
    for (double& xi : x) xi = u(rng);
  }

  std::vector<OptimizationResult> results(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) results[i] = nelder_mead(f, starts[i], opts);
  };
  const int workers = std::clamp(opts.threads, 1, static_cast<int>(total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  OptimizationResult best = results.front();
  best.best_start = 0;
  long evals = 0;
  for (std::size_t i = 0; i < total; ++i) {
    evals += results[i].evaluations;
    if (results[i].value > best.value) {
      best = results[i];
      best.best_start = static_cast<int>(i);
    }
  }
  best.evaluations = evals;
  return best;
}

}  // namespace cvnl
