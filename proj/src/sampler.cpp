#include "cvnl/sampler.hpp"

#include <random>

#include "cvnl/errors.hpp"
#include "cvnl/optimizer.hpp"

namespace cvnl {

namespace {

// Stream tags keep the pure and mixed sequences independent for one seed.
constexpr std::uint64_t kPureStream = 0x70757265;
constexpr std::uint64_t kMixedStream = 0x6d697865;

}  // namespace

std::string to_string(MixedLaw law) {
  switch (law) {
    case MixedLaw::kWilliamsonEuler:
      return "williamson-euler";
    case MixedLaw::kProductThermal:
      return "product-thermal";
  }
  return "unknown";
}

MixedLaw mixed_law_from_string(const std::string& name) {
  if (name == "williamson-euler") return MixedLaw::kWilliamsonEuler;
  if (name == "product-thermal") return MixedLaw::kProductThermal;
  throw DomainError("unknown mixed-state law '" + name + "'");
}

void SamplerConfig::validate() const {
  if (!(a_max > 1.0)) throw DomainError("a_max must exceed 1");
  if (!(nu_max >= 1.0)) throw DomainError("nu_max must be at least 1");
  if (!(r_max >= 0.0)) throw DomainError("r_max must be nonnegative");
  if (count < 1) throw DomainError("count must be at least 1");
}

PureStateParams sample_pure_params(const SamplerConfig& cfg, std::size_t index) {
  std::mt19937_64 rng(derive_seed(cfg.seed, kPureStream, index));
  std::uniform_real_distribution<double> u(1.0, cfg.low_range_bias ? 1.5 : cfg.a_max);
  while (true) {
    PureStateParams p;
    p.a1 = u(rng);
    p.a2 = u(rng);
    p.a3 = u(rng);
    if (p.satisfies_triangle(0.0)) return p;
  }
}

std::vector<PureStateParams> sample_pure_params(const SamplerConfig& cfg) {
  cfg.validate();
  std::vector<PureStateParams> out;
  out.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) out.push_back(sample_pure_params(cfg, i));
  return out;
}

Eigen::MatrixXd passive_symplectic(const Eigen::Matrix3cd& u) {
  const Eigen::Matrix3d x = u.real();
  const Eigen::Matrix3d y = u.imag();
  Eigen::MatrixXd s(6, 6);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      s(2 * j, 2 * k) = x(j, k);
      s(2 * j, 2 * k + 1) = -y(j, k);
      s(2 * j + 1, 2 * k) = y(j, k);
      s(2 * j + 1, 2 * k + 1) = x(j, k);
    }
  }
  return s;
}

Eigen::Matrix3cd haar_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix3cd z;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const double re = n(rng);
      const double im = n(rng);
      z(j, k) = {re, im};
    }
  }
  // Q diag(R_ii / |R_ii|) is Haar distributed.
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(z);
  const Eigen::Matrix3cd q = qr.householderQ();
  const Eigen::Matrix3cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  Eigen::Matrix3cd phases = Eigen::Matrix3cd::Zero();
  for (int j = 0; j < 3; ++j) phases(j, j) = r(j, j) / std::abs(r(j, j));
  return q * phases;
}

Eigen::MatrixXd squeezer(const std::array<double, 3>& r) {
  Eigen::VectorXd d(6);
  for (int j = 0; j < 3; ++j) {
    d(2 * j) = std::exp(-r[static_cast<std::size_t>(j)]);
    d(2 * j + 1) = std::exp(r[static_cast<std::size_t>(j)]);
  }
  return d.asDiagonal();
}

MixedSample sample_mixed(const SamplerConfig& cfg, std::size_t index) {
  std::mt19937_64 rng(derive_seed(cfg.seed, kMixedStream, index));
  std::uniform_real_distribution<double> unu(1.0, cfg.nu_max);
  std::uniform_real_distribution<double> ur(0.0, cfg.r_max);
  std::array<double, 3> nu{};
  std::array<double, 3> r{};
  for (double& v : nu) v = unu(rng);
  Eigen::VectorXd williamson(6);
  for (int j = 0; j < 3; ++j) williamson(2 * j) = williamson(2 * j + 1) = nu[static_cast<std::size_t>(j)];

  if (cfg.law == MixedLaw::kProductThermal) {
    return {CovarianceMatrix(Eigen::MatrixXd(williamson.asDiagonal())), nu, r};
  }
  for (double& v : r) v = ur(rng);
  const std::uint64_t s1 = rng();
  const std::uint64_t s2 = rng();
  const Eigen::MatrixXd s =
      passive_symplectic(haar_unitary(s1)) * squeezer(r) * passive_symplectic(haar_unitary(s2));
  Eigen::MatrixXd sigma = s * williamson.asDiagonal() * s.transpose();
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return {CovarianceMatrix(std::move(sigma)), nu, r};
}

CovarianceMatrix sample_mixed_cm(const SamplerConfig& cfg, std::size_t index) {
  return sample_mixed(cfg, index).cm;
}

std::vector<CovarianceMatrix> sample_mixed_cm(const SamplerConfig& cfg) {
  cfg.validate();
  std::vector<CovarianceMatrix> out;
  out.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) out.push_back(sample_mixed_cm(cfg, i));
  return out;
}

}  // namespace cvnl
