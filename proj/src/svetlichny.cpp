#include "cvnl/svetlichny.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cvnl/errors.hpp"

namespace cvnl {

namespace {

// Sign of the three-party term by number of primed settings: the term with
// none or all three primed enters with -1, the rest with +1.
constexpr std::array<double, 4> kSignByPrimed = {-1.0, 1.0, 1.0, -1.0};

double pattern_sign(int c1, int c2, int c3) {
  return kSignByPrimed[static_cast<std::size_t>(c1 + c2 + c3)];
}

// For c * sigma^s(a), the p* seed scaled to the state; empty if `cm` does not
// have the symmetric standard-form structure.
std::optional<double> symmetric_seed(const CovarianceMatrix& cm) {
  if (cm.modes() != 3) return std::nullopt;
  const Eigen::MatrixXd& s = cm.matrix();
  const double tol = 1e-9 * std::max(1.0, s.cwiseAbs().maxCoeff());
  const Eigen::Matrix2d diag = s.block<2, 2>(0, 0);
  const Eigen::Matrix2d off = s.block<2, 2>(0, 2);
  if (std::abs(diag(0, 1)) > tol || std::abs(diag(0, 0) - diag(1, 1)) > tol) return std::nullopt;
  if (std::abs(off(0, 1)) > tol || std::abs(off(1, 0)) > tol) return std::nullopt;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Matrix2d want = j == k ? diag : off;
      if ((s.block<2, 2>(2 * j, 2 * k) - want).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    }
  }
  const double c = std::pow(s.determinant(), 1.0 / 6.0);
  const double a = diag(0, 0) / c;
  if (!(a >= 1.0)) return std::nullopt;
  return std::sqrt(c) * symmetric_pstar(a);
}

}  // namespace

MeasurementSettings MeasurementSettings::momentum_antisymmetric(std::span<const double> p) {
  if (p.size() != 3) throw DimensionMismatch("momentum ansatz needs three values");
  MeasurementSettings s;
  for (std::size_t j = 0; j < 3; ++j) {
    s.xi[j] = Eigen::Vector2d(0.0, p[j]);
    s.xi_prime[j] = Eigen::Vector2d(0.0, -p[j]);
  }
  return s;
}

MeasurementSettings MeasurementSettings::from_flat(std::span<const double> x) {
  if (x.size() != 12) throw DimensionMismatch("settings need twelve coordinates");
  MeasurementSettings s;
  for (std::size_t j = 0; j < 3; ++j) {
    s.xi[j] = Eigen::Vector2d(x[2 * j], x[2 * j + 1]);
    s.xi_prime[j] = Eigen::Vector2d(x[6 + 2 * j], x[6 + 2 * j + 1]);
  }
  return s;
}

std::array<double, 12> MeasurementSettings::flat() const {
  std::array<double, 12> x{};
  for (std::size_t j = 0; j < 3; ++j) {
    x[2 * j] = xi[j](0);
    x[2 * j + 1] = xi[j](1);
    x[6 + 2 * j] = xi_prime[j](0);
    x[6 + 2 * j + 1] = xi_prime[j](1);
  }
  return x;
}

MeasurementSettings MeasurementSettings::scaled(double factor) const {
  MeasurementSettings s = *this;
  for (std::size_t j = 0; j < 3; ++j) {
    s.xi[j] *= factor;
    s.xi_prime[j] *= factor;
  }
  return s;
}

SvetlichnyFunctional::SvetlichnyFunctional(const CovarianceMatrix& cm) {
  if (cm.modes() != 3) throw DimensionMismatch("Svetlichny functional needs a three-mode state");
  llt_.compute(cm.matrix());
  if (llt_.info() != Eigen::Success) {
    throw InvalidCovariance("covariance matrix is not positive definite");
  }
  inv_sqrt_det_ = 1.0 / llt_.matrixLLT().diagonal().prod();
}

double SvetlichnyFunctional::term(const MeasurementSettings& s, int c1, int c2, int c3) const {
  Eigen::Matrix<double, 6, 1> x;
  x << s.setting(0, c1), s.setting(1, c2), s.setting(2, c3);
  return std::exp(-llt_.matrixL().solve(x).squaredNorm()) * inv_sqrt_det_;
}

double SvetlichnyFunctional::operator()(const MeasurementSettings& s) const {
  double total = 0.0;
  for (int c1 = 0; c1 < 2; ++c1) {
    for (int c2 = 0; c2 < 2; ++c2) {
      for (int c3 = 0; c3 < 2; ++c3) total += pattern_sign(c1, c2, c3) * term(s, c1, c2, c3);
    }
  }
  return total;
}

double svetlichny_value(const CovarianceMatrix& cm, const MeasurementSettings& s) {
  return SvetlichnyFunctional(cm)(s);
}

double f_of_a(double a) {
  if (!(a >= 1.0)) throw DomainError("f_a requires a >= 1");
  const double a2 = a * a;
  return a2 - 1.0 + std::sqrt((9.0 * a2 - 1.0) * (a2 - 1.0));
}

double symmetric_pstar(double a) {
  if (!(a >= 1.0)) throw DomainError("p* requires a >= 1");
  if (a <= symmetric_violation_threshold()) return 0.0;
  const double f = f_of_a(a);
  const double arg = (f - 2.0 * a * a) / (4.0 * a * a);
  if (!(arg >= 0.0 && arg < 1.0)) throw DomainError("atanh argument outside [0, 1)");
  return std::sqrt((a / f) * std::atanh(arg));
}

double symmetric_max_analytic(double a) {
  if (!(a >= 1.0)) throw DomainError("symmetric maximum requires a >= 1");
  if (a <= symmetric_violation_threshold()) return kSvetlichnyBound;
  const double a2 = a * a;
  const double f = f_of_a(a);
  const double base = 8.0 * a2 - 2.0 * f - 5.0;
  if (!(base > 0.0)) throw DomainError("non-positive base in the symmetric maximum");
  const double exponent = 3.0 / (-8.0 * a2 + 2.0 * f + 8.0);
  return 4.0 * (4.0 * a2 + 3.0 * f - 4.0) * std::pow(base, exponent) / (4.0 * a2 + 5.0);
}

MaximizationResult maximize_restricted(const CovarianceMatrix& cm, const OptimizerOptions& opts) {
  const SvetlichnyFunctional functional(cm);
  const Objective objective = [&](std::span<const double> p) {
    return std::abs(functional(MeasurementSettings::momentum_antisymmetric(p)));
  };
  std::vector<std::vector<double>> seeds{{0.0, 0.0, 0.0}};
  if (const auto p = symmetric_seed(cm); p && *p > 0.0) seeds.push_back({*p, *p, *p});
  const auto r = maximize(objective, 3, opts, seeds);
  return {r.value, MeasurementSettings::momentum_antisymmetric(r.point), r.evaluations, r.converged};
}

MaximizationResult maximize_full(const CovarianceMatrix& cm, const OptimizerOptions& opts) {
  const auto restricted = maximize_restricted(cm, opts);
  const SvetlichnyFunctional functional(cm);
  const Objective objective = [&](std::span<const double> x) {
    return std::abs(functional(MeasurementSettings::from_flat(x)));
  };
  const auto embedded = restricted.settings.flat();
  const std::vector<std::vector<double>> seeds{std::vector<double>(12, 0.0),
                                               {embedded.begin(), embedded.end()}};
  const auto r = maximize(objective, 12, opts, seeds);
  return {r.value, MeasurementSettings::from_flat(r.point),
          r.evaluations + restricted.evaluations, r.converged};
}

}  // namespace cvnl
