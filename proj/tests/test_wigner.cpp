#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvnl/errors.hpp"
#include "cvnl/wigner.hpp"
#include "oracles.hpp"

using namespace cvnl;

TEST_CASE("Wigner function at the origin") {
  const double pi3 = std::pow(std::numbers::pi, 3);
  CHECK(wigner_value(vacuum(), PhasePoint::origin(3)) == doctest::Approx(1.0 / pi3).epsilon(1e-15));
  const auto cm = symmetric_pure(2).scaled(1.4);
  CHECK(wigner_value(cm, PhasePoint::origin(3)) ==
        doctest::Approx(1.0 / (pi3 * std::sqrt(cm.matrix().determinant()))).epsilon(1e-13));
}

TEST_CASE("Wigner function matches a brute-force quadratic form") {
  const auto cm = symmetric_pure(2);
  const PhasePoint xi{0, 0.3, 0, 0.3, 0, 0.3};
  const double want = oracle::correlator_bruteforce(cm.matrix(), xi.coords()) / std::pow(std::numbers::pi, 3);
  const double got = wigner_value(cm, xi);
  CHECK(got > 0.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-12));

  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 0.8);
  const auto mixed = build_pure_standard_form({2.2, 1.7, 1.6}).scaled(1.2);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x(6);
    for (auto& v : x) v = n(rng);
    CHECK(parity_correlator(mixed, ModeSet{0, 1, 2}, PhasePoint(x)) ==
          doctest::Approx(oracle::correlator_bruteforce(mixed.matrix(), x)).epsilon(1e-12));
  }
}

TEST_CASE("parity correlators at the origin") {
  CHECK(parity_correlator(vacuum(), ModeSet{0, 1, 2}, PhasePoint::origin(3)) == doctest::Approx(1.0));
  CHECK(parity_correlator(build_pure_standard_form({2, 1.6, 1.5}), ModeSet{0, 1, 2},
                          PhasePoint::origin(3)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-mode correlator of a symmetric state") {
  CHECK(parity_correlator(symmetric_pure(2), ModeSet{0}, PhasePoint{0, 1}) ==
        doctest::Approx(std::exp(-0.5) / 2).epsilon(1e-14));
}

TEST_CASE("vacuum single-mode correlator is exp(-(q^2 + p^2))") {
  for (double q : {-1.0, 0.0, 0.4}) {
    for (double p : {-0.7, 0.0, 1.3}) {
      CHECK(parity_correlator(vacuum(), ModeSet{1}, PhasePoint{q, p}) ==
            doctest::Approx(std::exp(-(q * q + p * p))).epsilon(1e-14));
    }
  }
}

TEST_CASE("correlators are bounded by the purity of the reduction") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto cm = build_pure_standard_form({2.5, 2.0, 1.6}).scaled(1.15);
  for (const auto& modes : {ModeSet{0}, ModeSet{1, 2}, ModeSet{0, 2}, ModeSet{0, 1, 2}}) {
    const double mu = purity(reduce(cm, modes));
    CHECK(parity_correlator(cm, modes, PhasePoint::origin(modes.size())) == doctest::Approx(mu));
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd x(2 * modes.size());
      for (auto& v : x) v = n(rng);
      const double c = parity_correlator(cm, modes, PhasePoint(x));
      CHECK(c > 0.0);
      CHECK(c < mu);
    }
  }
}

TEST_CASE("scaling law for correlators") {
  const auto cm = build_pure_standard_form({1.9, 1.6, 1.4});
  const PhasePoint xi{0.2, -0.4, 0.7, 0.1};
  const ModeSet s{0, 2};
  for (double c : {1.1, 1.5, 2.0}) {
    const PhasePoint shrunk(xi.coords() / std::sqrt(c));
    CHECK(parity_correlator(cm.scaled(c), s, xi) ==
          doctest::Approx(std::pow(c, -s.size()) * parity_correlator(cm, s, shrunk)).epsilon(1e-13));
  }
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(parity_correlator(vacuum(), ModeSet{0, 1}, PhasePoint{0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(wigner_value(vacuum(), PhasePoint{0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(PhasePoint({0.0, 1.0, 2.0}), DimensionMismatch);
}
