#pragma once

// Gaussian Wigner function and displaced-parity correlators.
//
// For a k-mode reduction with covariance sigma_S, the expectation of the
// product of displaced parities at xi is pi^k W(xi) = exp(-xi^T sigma_S^-1 xi)
// / sqrt(det sigma_S).

#include <span>

#include <Eigen/Dense>

#include "cvnl/gaussian.hpp"

namespace cvnl {

// (q1, p1, ..., qk, pk) for a k-mode state.
class PhasePoint {
 public:
  explicit PhasePoint(Eigen::VectorXd coords);
  PhasePoint(std::initializer_list<double> coords);

  static PhasePoint origin(int modes) { return PhasePoint(Eigen::VectorXd::Zero(2 * modes)); }

  int modes() const { return static_cast<int>(coords_.size() / 2); }
  const Eigen::VectorXd& coords() const { return coords_; }

 private:
  Eigen::VectorXd coords_;
};

// Holds the Cholesky factor of a reduced covariance matrix so that many
// points can be evaluated against one factorization.
class ParityEvaluator {
 public:
  ParityEvaluator(const CovarianceMatrix& cm, const ModeSet& modes);
  explicit ParityEvaluator(const CovarianceMatrix& cm);

  int modes() const { return static_cast<int>(llt_.rows() / 2); }

  // xi^T sigma^-1 xi.
  double quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& xi) const;
  double correlator(const Eigen::Ref<const Eigen::VectorXd>& xi) const;
  double wigner(const Eigen::Ref<const Eigen::VectorXd>& xi) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double inv_sqrt_det_ = 1.0;
};

double wigner_value(const CovarianceMatrix& cm, const PhasePoint& xi);

// `point` stacks one (q, p) pair per selected mode, in ascending mode order.
double parity_correlator(const CovarianceMatrix& cm, const ModeSet& modes, const PhasePoint& point);

}  // namespace cvnl
