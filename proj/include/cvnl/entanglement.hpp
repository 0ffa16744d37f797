#pragma once

// Renyi-2 entanglement of three-mode Gaussian states and the inseparability
// classification of symmetric mixed states.

#include "cvnl/gaussian.hpp"
#include "cvnl/optimizer.hpp"

namespace cvnl {

// S_2 = ln det(sigma) / 2.
double renyi2_entropy(const CovarianceMatrix& cm);

// Renyi-2 Gaussian entanglement between modes i and j of a pure three-mode
// state with local invariants (a_i, a_j, a_k). The reduced two-mode state is
// a least-entangled mixed state whose entanglement is determined by the three
// invariants alone.
double pairwise_renyi2_pure(double a_i, double a_j, double a_k);

// Closed form of the residual tripartite entanglement of sigma^s(a).
double tripartite_renyi2_symmetric(double a);

// min over i of E_{i|(jk)} - E_{i|j} - E_{i|k}, with E_{i|(jk)} = ln a_i.
double tripartite_renyi2_pure(const PureStateParams& params);

// Inverse of tripartite_renyi2_symmetric on [1, inf). Returns 1 for e <= 0.
double symmetric_a_for_entanglement(double e);

// Smallest |S_max| reachable by a pure state with tripartite entanglement `e`,
// attained by the symmetric states.
double symmetric_lower_bound(double e);

struct RegionLabel {
  bool fully_inseparable = false;
  bool promiscuous = false;
  bool svetlichny_nonlocal = false;
  // Smallest symplectic eigenvalue of the transpose across 1|23.
  double min_nu_bipartition = 1.0;
  // Same, for the two-mode reduction of modes 1 and 2 transposed on mode 1.
  double min_nu_two_mode = 1.0;
  double s_max = 0.0;

  // Fully separable or bound entangled; the two are not distinguished.
  bool fully_separable_or_bound() const { return !fully_inseparable; }
};

RegionLabel classify_symmetric_mixed(double a, double mu, const OptimizerOptions& opts = {});

}  // namespace cvnl
