#include "cvnl/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvnl/errors.hpp"
#include "cvnl/svetlichny.hpp"

namespace cvnl {

double renyi2_entropy(const CovarianceMatrix& cm) {
  return 0.5 * std::log(cm.matrix().determinant());
}

double pairwise_renyi2_pure(double a_i, double a_j, double a_k) {
  const double si = a_i * a_i;
  const double sj = a_j * a_j;
  const double sk = a_k * a_k;
  if (a_k >= std::sqrt(si + sj - 1.0)) return 0.0;

  const double diff = si - sj;
  const double sum = si + sj;
  const double alpha =
      std::sqrt((2.0 * sum + diff * diff + std::abs(diff) * std::sqrt(diff * diff + 8.0 * sum)) /
                (2.0 * sum));
  double g;
  if (a_k <= alpha && sk > 1.0) {
    g = diff * diff / ((sk - 1.0) * (sk - 1.0));
  } else {
    double delta = 1.0;
    for (double sj_sign : {1.0, -1.0}) {
      for (double sk_sign : {1.0, -1.0}) {
        const double t = a_i + sj_sign * a_j + sk_sign * a_k;
        delta *= t * t - 1.0;
      }
    }
    const double beta = 2.0 * (si + sj + sk) + 2.0 * (si * sj + si * sk + sj * sk) -
                        (si * si + sj * sj + sk * sk) - std::sqrt(std::max(delta, 0.0)) - 1.0;
    g = beta / (8.0 * sk);
  }
  return 0.5 * std::log(std::max(g, 1.0));
}

double tripartite_renyi2_symmetric(double a) {
  if (!(a >= 1.0)) throw DomainError("symmetric entanglement requires a >= 1");
  const double a2 = a * a;
  return std::log(8.0 * a2 * a / (4.0 * (a2 * a2 + a2) - f_of_a(a) * (a2 - 1.0)));
}

double tripartite_renyi2_pure(const PureStateParams& params) {
  if (!params.satisfies_triangle()) {
    throw TriangleViolation("pure-state invariants violate the triangle condition");
  }
  const auto a = params.as_array();
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    const double ai = a[i];
    const double aj = a[(i + 1) % 3];
    const double ak = a[(i + 2) % 3];
    const double r = std::log(ai) - pairwise_renyi2_pure(ai, aj, ak) - pairwise_renyi2_pure(ai, ak, aj);
    residual = std::min(residual, r);
  }
  return residual;
}

double symmetric_a_for_entanglement(double e) {
  if (!(e > 0.0)) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (tripartite_renyi2_symmetric(hi) < e) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw DomainError("entanglement too large to invert");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tripartite_renyi2_symmetric(mid) < e ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double symmetric_lower_bound(double e) {
  return symmetric_max_analytic(symmetric_a_for_entanglement(e));
}

RegionLabel classify_symmetric_mixed(double a, double mu, const OptimizerOptions& opts) {
  const CovarianceMatrix cm = scaled_symmetric_mixed(a, mu);
  RegionLabel label;
  const auto across = is_ppt(cm, ModeSet{0});
  label.min_nu_bipartition = across.min_nu;
  label.fully_inseparable = !across.ppt;

  // All two-mode reductions coincide for symmetric states.
  const auto pair = is_ppt(reduce(cm, ModeSet{0, 1}), ModeSet{0});
  label.min_nu_two_mode = pair.min_nu;
  label.promiscuous = label.fully_inseparable && !pair.ppt;

  label.s_max = maximize_restricted(cm, opts).value;
  label.svetlichny_nonlocal = label.s_max > kSvetlichnyBound + 1e-9;
  return label;
}

}  // namespace cvnl
