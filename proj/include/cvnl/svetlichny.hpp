#pragma once

// Phase-space Svetlichny functional with displaced-parity measurements.
//
//   S = <P1' P2 P3> + <P1 P2' P3> + <P1 P2 P3'> - <P1' P2' P3'>
//     + <P1 P2' P3'> + <P1' P2 P3'> + <P1' P2' P3> - <P1 P2 P3>
//
// where Pj = Pj(xi_j), Pj' = Pj(xi'_j). Hidden-variable models obeying
// two-party locality satisfy |S| <= 4.

#include <array>
#include <cmath>
#include <span>

#include <Eigen/Dense>

#include "cvnl/gaussian.hpp"
#include "cvnl/optimizer.hpp"

namespace cvnl {

inline constexpr double kSvetlichnyBound = 4.0;

// 16 / 3^(9/8): the largest |S| any three-mode Gaussian state reaches.
inline double asymptotic_svetlichny_max() { return 16.0 / std::pow(3.0, 9.0 / 8.0); }

// 3^(9/8) / 4: purity below which no Gaussian state violates |S| <= 4.
inline double svetlichny_purity_cutoff() { return std::pow(3.0, 9.0 / 8.0) / 4.0; }

// sqrt(3/2): symmetric pure states violate iff a exceeds it.
inline double symmetric_violation_threshold() { return std::sqrt(1.5); }

struct MeasurementSettings {
  std::array<Eigen::Vector2d, 3> xi{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero()};
  std::array<Eigen::Vector2d, 3> xi_prime{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                                          Eigen::Vector2d::Zero()};

  static MeasurementSettings origin() { return {}; }

  // xi_j = (0, p_j), xi'_j = (0, -p_j).
  static MeasurementSettings momentum_antisymmetric(std::span<const double> p);

  // Layout (q1, p1, q2, p2, q3, p3, q1', p1', q2', p2', q3', p3').
  static MeasurementSettings from_flat(std::span<const double> x);
  std::array<double, 12> flat() const;

  // Setting of `mode` for choice 0 (unprimed) or 1 (primed).
  const Eigen::Vector2d& setting(int mode, int choice) const {
    return choice == 0 ? xi[static_cast<std::size_t>(mode)] : xi_prime[static_cast<std::size_t>(mode)];
  }

  // Every setting scaled by `factor`.
  MeasurementSettings scaled(double factor) const;
};

struct MaximizationResult {
  double value = 0.0;
  MeasurementSettings settings;
  long evaluations = 0;
  bool converged = false;
};

// Factorizes the three-mode covariance once; each evaluation is eight
// quadratic forms.
class SvetlichnyFunctional {
 public:
  explicit SvetlichnyFunctional(const CovarianceMatrix& cm);

  double operator()(const MeasurementSettings& s) const;

  // Correlator of the three-mode term with choices (c1, c2, c3), 1 = primed.
  double term(const MeasurementSettings& s, int c1, int c2, int c3) const;

 private:
  Eigen::LLT<Eigen::Matrix<double, 6, 6>> llt_;
  double inv_sqrt_det_ = 1.0;
};

double svetlichny_value(const CovarianceMatrix& cm, const MeasurementSettings& s);

// a^2 - 1 + sqrt(9a^4 - 10a^2 + 1).
double f_of_a(double a);

// Optimal momentum for symmetric pure states,
// sqrt((a / f_a) atanh[(f_a - 2a^2) / (4a^2)]), and 0 at or below sqrt(3/2).
// This is the stationary point of 6 exp(-t(3a - 2g)) - 2 exp(-t(3a + 6g)),
// t = p^2, g = f_a / (4a); it vanishes continuously at the threshold.
double symmetric_pstar(double a);

// Closed-form max |S| of symmetric pure states.
double symmetric_max_analytic(double a);

// Maximizes |S| over xi_j = (0, p_j), xi'_j = (0, -p_j).
MaximizationResult maximize_restricted(const CovarianceMatrix& cm, const OptimizerOptions& opts = {});

// Maximizes |S| over all twelve setting coordinates. The restricted optimum is
// one of the starts.
MaximizationResult maximize_full(const CovarianceMatrix& cm, const OptimizerOptions& opts = {});

}  // namespace cvnl
