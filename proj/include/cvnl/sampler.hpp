#pragma once

// Seeded random pure parameter triples and mixed covariance matrices.
//
// Every sample is a function of (seed, index) alone, so streams can be
// generated in any order or in parallel and still come out identical.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvnl/gaussian.hpp"

namespace cvnl {

// How mixed states are drawn.
enum class MixedLaw {
  // sigma = S diag(nu) S^T with S = O1 Z(r) O2, O Haar-random passive.
  kWilliamsonEuler,
  // Product of thermal states, sigma = diag(nu1, nu1, nu2, nu2, nu3, nu3).
  kProductThermal,
};

std::string to_string(MixedLaw law);
MixedLaw mixed_law_from_string(const std::string& name);

struct SamplerConfig {
  std::uint64_t seed = 0;
  double a_max = 4.0;
  double nu_max = 2.0;
  double r_max = std::log(3.0);
  std::size_t count = 1;
  // Draw pure invariants from [1, 1.5] instead of [1, a_max].
  bool low_range_bias = false;
  MixedLaw law = MixedLaw::kWilliamsonEuler;

  void validate() const;
};

PureStateParams sample_pure_params(const SamplerConfig& cfg, std::size_t index);
std::vector<PureStateParams> sample_pure_params(const SamplerConfig& cfg);

struct MixedSample {
  CovarianceMatrix cm;
  std::array<double, 3> nu;
  std::array<double, 3> squeezing;
};

MixedSample sample_mixed(const SamplerConfig& cfg, std::size_t index);
CovarianceMatrix sample_mixed_cm(const SamplerConfig& cfg, std::size_t index);
std::vector<CovarianceMatrix> sample_mixed_cm(const SamplerConfig& cfg);

// Real 6x6 (qpqp ordering) passive symplectic matrix of a 3x3 unitary.
Eigen::MatrixXd passive_symplectic(const Eigen::Matrix3cd& u);

// Haar-random 3x3 unitary from a seeded generator.
Eigen::Matrix3cd haar_unitary(std::uint64_t seed);

// diag(e^-r1, e^r1, e^-r2, e^r2, e^-r3, e^r3).
Eigen::MatrixXd squeezer(const std::array<double, 3>& r);

}  // namespace cvnl
