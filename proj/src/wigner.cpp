#include "cvnl/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvnl/errors.hpp"

namespace cvnl {

PhasePoint::PhasePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0 || coords_.size() % 2 != 0) {
    throw DimensionMismatch("phase point needs 2k coordinates, got " +
                            std::to_string(coords_.size()));
  }
}

PhasePoint::PhasePoint(std::initializer_list<double> coords)
    : PhasePoint(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                                   static_cast<Eigen::Index>(coords.size()))) {}

ParityEvaluator::ParityEvaluator(const CovarianceMatrix& cm, const ModeSet& modes)
    : ParityEvaluator(reduce(cm, modes)) {}

ParityEvaluator::ParityEvaluator(const CovarianceMatrix& cm) : llt_(cm.matrix()) {
  if (llt_.info() != Eigen::Success) {
    throw InvalidCovariance("covariance matrix is not positive definite");
  }
  // det sigma = prod(L_ii)^2
  inv_sqrt_det_ = 1.0 / llt_.matrixL().toDenseMatrix().diagonal().prod();
}

double ParityEvaluator::quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& xi) const {
  if (xi.size() != llt_.rows()) {
    throw DimensionMismatch("phase point has " + std::to_string(xi.size()) +
                            " coordinates, state needs " + std::to_string(llt_.rows()));
  }
  return llt_.matrixL().solve(xi).squaredNorm();
}

double ParityEvaluator::correlator(const Eigen::Ref<const Eigen::VectorXd>& xi) const {
  return std::exp(-quadratic_form(xi)) * inv_sqrt_det_;
}

double ParityEvaluator::wigner(const Eigen::Ref<const Eigen::VectorXd>& xi) const {
  return correlator(xi) / std::pow(std::numbers::pi, modes());
}

double wigner_value(const CovarianceMatrix& cm, const PhasePoint& xi) {
  return ParityEvaluator(cm).wigner(xi.coords());
}

double parity_correlator(const CovarianceMatrix& cm, const ModeSet& modes, const PhasePoint& point) {
  if (point.modes() != modes.size()) {
    throw DimensionMismatch("expected one (q, p) pair per selected mode");
  }
  return ParityEvaluator(cm, modes).correlator(point.coords());
}

}  // namespace cvnl
