#include "cvnl/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cvnl/errors.hpp"
#include "cvnl/svetlichny.hpp"

namespace cvnl {

ModeSet::ModeSet(std::initializer_list<int> modes) : ModeSet(std::vector<int>(modes)) {}

ModeSet::ModeSet(std::vector<int> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
  modes_.erase(std::unique(modes_.begin(), modes_.end()), modes_.end());
  if (modes_.empty()) throw DomainError("mode set must be nonempty");
  if (modes_.front() < 0 || modes_.back() >= kMaxModes) {
    throw DomainError("mode index out of range [0, " + std::to_string(kMaxModes) + ")");
  }
}

ModeSet ModeSet::all(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return ModeSet(std::move(m));
}

bool ModeSet::contains(int mode) const {
  return std::binary_search(modes_.begin(), modes_.end(), mode);
}

ModeSet ModeSet::complement(int n) const {
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (!contains(i)) rest.push_back(i);
  }
  return ModeSet(std::move(rest));
}

ModeSet ModeSet::intersect(const ModeSet& other) const {
  std::vector<int> both;
  std::set_intersection(modes_.begin(), modes_.end(), other.modes_.begin(), other.modes_.end(),
                        std::back_inserter(both));
  return ModeSet(std::move(both));
}

namespace {

void validate(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0 || s.rows() > 2 * kMaxModes) {
    throw DimensionMismatch("covariance matrix must be 2n x 2n with 1 <= n <= 3, got " +
                            std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  }
  if (!s.allFinite()) throw InvalidCovariance("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw InvalidCovariance("covariance matrix is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw InvalidCovariance("covariance matrix is not positive definite");
  }
  const auto nu = symplectic_eigenvalues(s);
  if (nu.back() < 1.0 - kBonaFideTol) {
    throw InvalidCovariance("uncertainty relation violated: smallest symplectic eigenvalue " +
                            std::to_string(nu.back()));
  }
}

double clamped_sqrt(double radicand) {
  if (radicand >= 0.0) return std::sqrt(radicand);
  if (radicand >= -kRadicandClamp) return 0.0;
  throw NumericalDomain("negative radicand " + std::to_string(radicand) +
                        " in standard-form correlations");
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {
  validate(sigma_);
}

CovarianceMatrix CovarianceMatrix::trusted(Eigen::MatrixXd sigma) {
  return CovarianceMatrix(std::move(sigma), TrustedTag{});
}

CovarianceMatrix CovarianceMatrix::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("scale factor must be positive");
  return CovarianceMatrix(c * sigma_);
}

bool PureStateParams::satisfies_triangle(double tol) const {
  const auto a = as_array();
  for (double x : a) {
    if (!std::isfinite(x) || x < 1.0 - tol) return false;
  }
  for (int i = 0; i < 3; ++i) {
    const double ai = a[static_cast<std::size_t>(i)];
    const double aj = a[static_cast<std::size_t>((i + 1) % 3)];
    const double ak = a[static_cast<std::size_t>((i + 2) % 3)];
    if (ai < std::abs(aj - ak) + 1.0 - tol) return false;
    if (ai > aj + ak - 1.0 + tol) return false;
  }
  return true;
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int m = 0; m < modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

CovarianceMatrix vacuum(int modes) {
  if (modes < 1 || modes > kMaxModes) throw DomainError("mode count out of range");
  return CovarianceMatrix::trusted(Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

std::array<double, 2> standard_form_correlations(double a_i, double a_j, double a_k) {
  // x^2 - y^2 as (x - y)(x + y) so that the small factor near the triangle
  // boundary is formed by one subtraction.
  const double dm = std::abs(a_j - a_k);
  const double dp = a_j + a_k;
  const double lo = a_i - 1.0;
  const double hi = a_i + 1.0;
  const double r1 = ((lo - dm) * (lo + dm)) * ((hi - dm) * (hi + dm));
  const double r2 = ((lo - dp) * (lo + dp)) * ((hi - dp) * (hi + dp));
  const double s1 = clamped_sqrt(r1);
  const double s2 = clamped_sqrt(r2);
  const double denom = 4.0 * std::sqrt(a_j * a_k);
  return {(s1 + s2) / denom, (s1 - s2) / denom};
}

CovarianceMatrix build_pure_standard_form(const PureStateParams& params) {
  if (!params.satisfies_triangle()) {
    throw TriangleViolation("(" + std::to_string(params.a1) + ", " + std::to_string(params.a2) +
                            ", " + std::to_string(params.a3) +
                            ") violates |a_j - a_k| + 1 <= a_i <= a_j + a_k - 1");
  }
  const auto a = params.as_array();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(6, 6);
  for (int j = 0; j < 3; ++j) {
    s(2 * j, 2 * j) = s(2 * j + 1, 2 * j + 1) = a[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k) {
      const int i = 3 - j - k;
      const auto [gp, gm] =
          standard_form_correlations(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)],
                                     a[static_cast<std::size_t>(k)]);
      s(2 * j, 2 * k) = s(2 * k, 2 * j) = gp;
      s(2 * j + 1, 2 * k + 1) = s(2 * k + 1, 2 * j + 1) = gm;
    }
  }
  // Pure by construction. Clamped radicands on the triangle boundary perturb
  // the symplectic spectrum by O(sqrt(eps)), beyond the bona fide tolerance.
  return CovarianceMatrix::trusted(std::move(s));
}

CovarianceMatrix symmetric_pure(double a) {
  if (!(a >= 1.0)) throw DomainError("symmetric_pure requires a >= 1");
  return build_pure_standard_form({a, a, a});
}

CovarianceMatrix scaled_symmetric_mixed(double a, double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("purity must lie in (0, 1]");
  return symmetric_pure(a).scaled(std::pow(mu, -1.0 / 3.0));
}

double purity(const CovarianceMatrix& cm) {
  return 1.0 / std::sqrt(cm.matrix().determinant());
}

CovarianceMatrix reduce(const CovarianceMatrix& cm, const ModeSet& modes) {
  const int n = cm.modes();
  if (modes[modes.size() - 1] >= n) {
    throw DimensionMismatch("mode index exceeds the state's " + std::to_string(n) + " modes");
  }
  Eigen::MatrixXd r(2 * modes.size(), 2 * modes.size());
  for (int a = 0; a < modes.size(); ++a) {
    for (int b = 0; b < modes.size(); ++b) {
      r.block<2, 2>(2 * a, 2 * b) = cm.matrix().block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
  }
  return CovarianceMatrix::trusted(std::move(r));
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows() / 2);
  Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * sigma, false);
  std::vector<double> moduli(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // Eigenvalues come in pairs +-i nu; average each pair.
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (std::size_t m = 0; m < nu.size(); ++m) nu[m] = 0.5 * (moduli[2 * m] + moduli[2 * m + 1]);
  return nu;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm) {
  return symplectic_eigenvalues(cm.matrix());
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma, const ModeSet& modes) {
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(sigma.rows());
  for (int m : modes) {
    if (2 * m + 1 >= sigma.rows()) throw DimensionMismatch("mode index exceeds matrix size");
    lambda(2 * m + 1) = -1.0;
  }
  return lambda.asDiagonal() * sigma * lambda.asDiagonal();
}

Eigen::MatrixXd partial_transpose(const CovarianceMatrix& cm, const ModeSet& modes) {
  return partial_transpose(cm.matrix(), modes);
}

PptResult is_ppt(const CovarianceMatrix& cm, const ModeSet& modes) {
  const double min_nu = symplectic_eigenvalues(partial_transpose(cm, modes)).back();
  return {min_nu >= 1.0 - kBonaFideTol, min_nu};
}

double z_parameter(double a) {
  if (!(a >= 1.0)) throw DomainError("z_parameter requires a >= 1");
  // 12a^2 - 3f_a - 8 = 16 / (9a^2 - 5 + 3 sqrt(9a^4 - 10a^2 + 1)), free of the
  // cancellation that the direct form suffers for large a.
  const double a2 = a * a;
  const double denom = 9.0 * a2 - 5.0 + 3.0 * std::sqrt((9.0 * a2 - 1.0) * (a2 - 1.0));
  if (!(denom > 0.0)) throw DomainError("z_parameter radicand is negative");
  return 0.5 * std::sqrt(16.0 / denom);
}

}  // namespace cvnl
