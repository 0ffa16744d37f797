#pragma once

// Covariance-matrix model of undisplaced Gaussian states of up to three modes.
//
// Conventions: quadratures are ordered (q1, p1, q2, p2, q3, p3) and the
// covariance matrix is normalized so that the vacuum is the identity.

#include <array>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace cvnl {

inline constexpr int kMaxModes = 3;

// Validity tolerances shared by every constructor.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kBonaFideTol = 1e-9;
inline constexpr double kTriangleTol = 1e-12;
inline constexpr double kRadicandClamp = 1e-9;

// Sorted, duplicate-free set of 0-based mode indices.
class ModeSet {
 public:
  ModeSet(std::initializer_list<int> modes);
  explicit ModeSet(std::vector<int> modes);

  static ModeSet all(int n);

  int size() const { return static_cast<int>(modes_.size()); }
  int operator[](int i) const { return modes_[static_cast<std::size_t>(i)]; }
  bool contains(int mode) const;
  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  // Complement inside {0, ..., n-1}.
  ModeSet complement(int n) const;
  ModeSet intersect(const ModeSet& other) const;

  friend bool operator==(const ModeSet&, const ModeSet&) = default;

 private:
  std::vector<int> modes_;
};

class CovarianceMatrix {
 public:
  // Validates symmetry, positive definiteness and the uncertainty relation.
  explicit CovarianceMatrix(Eigen::MatrixXd sigma);

  // Skips validation; for internal results already known to be physical.
  static CovarianceMatrix trusted(Eigen::MatrixXd sigma);

  int modes() const { return static_cast<int>(sigma_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const { return sigma_; }
  double operator()(int i, int j) const { return sigma_(i, j); }

  // c * sigma. The result is checked, since c < 1 can leave the physical set.
  CovarianceMatrix scaled(double c) const;

 private:
  struct TrustedTag {};
  CovarianceMatrix(Eigen::MatrixXd sigma, TrustedTag) : sigma_(std::move(sigma)) {}

  Eigen::MatrixXd sigma_;
};

// Local symplectic invariants (a1, a2, a3) of a pure standard-form state.
struct PureStateParams {
  double a1 = 1.0;
  double a2 = 1.0;
  double a3 = 1.0;

  std::array<double, 3> as_array() const { return {a1, a2, a3}; }
  double operator[](int i) const { return as_array()[static_cast<std::size_t>(i)]; }

  // |a_j - a_k| + 1 <= a_i <= a_j + a_k - 1 for every labelling, within tol.
  bool satisfies_triangle(double tol = kTriangleTol) const;
};

// Omega = omega (+) ... (+) omega with omega = [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

CovarianceMatrix vacuum(int modes = kMaxModes);

// Off-diagonal standard-form entries (g+, g-) for the pair (j, k); a_i is the
// invariant of the remaining mode.
std::array<double, 2> standard_form_correlations(double a_i, double a_j, double a_k);

CovarianceMatrix build_pure_standard_form(const PureStateParams& params);
CovarianceMatrix symmetric_pure(double a);
CovarianceMatrix scaled_symmetric_mixed(double a, double mu);

// (det sigma)^(-1/2).
double purity(const CovarianceMatrix& cm);

CovarianceMatrix reduce(const CovarianceMatrix& cm, const ModeSet& modes);

// Moduli of the eigenvalues of i Omega sigma, one per mode, descending.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma);
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm);

// Lambda sigma Lambda, Lambda flipping the momenta of `modes`. The result need
// not be a physical covariance matrix.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma, const ModeSet& modes);
Eigen::MatrixXd partial_transpose(const CovarianceMatrix& cm, const ModeSet& modes);

struct PptResult {
  bool ppt = true;
  double min_nu = 1.0;
};

PptResult is_ppt(const CovarianceMatrix& cm, const ModeSet& modes);

// Inverse squeezing parameter z = sqrt(12 a^2 - 3 f_a - 8) / 2 of symmetric
// states.
double z_parameter(double a);

}  // namespace cvnl
