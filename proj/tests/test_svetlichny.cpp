#include <doctest.h>

#include <cmath>
#include <random>

#include "cvnl/errors.hpp"
#include "cvnl/svetlichny.hpp"
#include "oracles.hpp"

using namespace cvnl;

// Frozen with mpmath at 40 digits from the closed forms.
namespace frozen {
constexpr double f2 = 13.246950765959598383;
constexpr double pstar15 = 0.21292597597907703174;
constexpr double pstar2 = 0.22673744909699303090;
constexpr double pstar3 = 0.20218234199064405442;
constexpr double pstar50 = 0.052397379159458547814;
constexpr double smax15 = 4.1359020349194188683;
constexpr double smax2 = 4.3439858576911968143;
constexpr double smax3 = 4.5097840156694406339;
constexpr double smax50 = 4.6484788527298319858;
constexpr double s_inf = 4.6489895619825903091;
}  // namespace frozen

namespace {

MeasurementSettings random_settings(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::array<double, 12> x{};
  for (double& v : x) v = n(rng);
  return MeasurementSettings::from_flat(x);
}

}  // namespace

TEST_CASE("constants") {
  CHECK(asymptotic_svetlichny_max() == doctest::Approx(frozen::s_inf).epsilon(1e-15));
  CHECK(svetlichny_purity_cutoff() == doctest::Approx(0.86040201782990781710).epsilon(1e-15));
  CHECK(asymptotic_svetlichny_max() * svetlichny_purity_cutoff() == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("all settings at the origin give 4 mu") {
  CHECK(svetlichny_value(vacuum(), MeasurementSettings::origin()) == doctest::Approx(4.0).epsilon(1e-15));
  for (const auto& cm : {symmetric_pure(2).scaled(1.3), build_pure_standard_form({2, 1.6, 1.5}).scaled(1.05)}) {
    CHECK(svetlichny_value(cm, MeasurementSettings::origin()) ==
          doctest::Approx(4.0 * purity(cm)).epsilon(1e-13));
  }
}

TEST_CASE("sign pattern matches a hand-written term table") {
  std::mt19937_64 rng(2);
  const auto cm = build_pure_standard_form({2.4, 1.9, 1.6}).scaled(1.1);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_settings(rng);
    CHECK(svetlichny_value(cm, s) ==
          doctest::Approx(oracle::svetlichny_bruteforce(cm.matrix(), s.xi, s.xi_prime)).epsilon(1e-12));
  }
}

TEST_CASE("|S| never exceeds 8 mu") {
  std::mt19937_64 rng(4);
  const auto cm = build_pure_standard_form({3.0, 2.5, 1.8}).scaled(1.2);
  for (int t = 0; t < 500; ++t) {
    CHECK(std::abs(svetlichny_value(cm, random_settings(rng, 0.6))) <= 8.0 * purity(cm));
  }
}

TEST_CASE("f_a") {
  CHECK(f_of_a(1.0) == 0.0);
  CHECK(f_of_a(std::sqrt(1.5)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(f_of_a(2.0) == doctest::Approx(frozen::f2).epsilon(1e-15));
  CHECK_THROWS_AS(f_of_a(0.99), DomainError);
}

TEST_CASE("p*") {
  CHECK(symmetric_pstar(1.0) == 0.0);
  CHECK(symmetric_pstar(1.2) == 0.0);
  CHECK(symmetric_pstar(std::sqrt(1.5)) == 0.0);
  // Continuous at the threshold: the optimum leaves the origin smoothly.
  CHECK(symmetric_pstar(std::sqrt(1.5) + 1e-9) < 1e-4);
  CHECK(symmetric_pstar(1.5) == doctest::Approx(frozen::pstar15).epsilon(1e-13));
  CHECK(symmetric_pstar(2.0) == doctest::Approx(frozen::pstar2).epsilon(1e-13));
  CHECK(symmetric_pstar(3.0) == doctest::Approx(frozen::pstar3).epsilon(1e-13));
  CHECK(symmetric_pstar(50.0) == doctest::Approx(frozen::pstar50).epsilon(1e-12));
}

TEST_CASE("closed-form symmetric maximum") {
  CHECK(symmetric_max_analytic(1.0) == 4.0);
  CHECK(symmetric_max_analytic(std::sqrt(1.5)) == 4.0);
  CHECK(symmetric_max_analytic(1.5) == doctest::Approx(frozen::smax15).epsilon(1e-13));
  CHECK(symmetric_max_analytic(2.0) == doctest::Approx(frozen::smax2).epsilon(1e-13));
  CHECK(symmetric_max_analytic(3.0) == doctest::Approx(frozen::smax3).epsilon(1e-13));
  CHECK(symmetric_max_analytic(50.0) == doctest::Approx(frozen::smax50).epsilon(1e-11));
  CHECK(std::abs(symmetric_max_analytic(50.0) - asymptotic_svetlichny_max()) < 0.01);
}

TEST_CASE("the two branches meet at sqrt(3/2)") {
  // Second branch evaluated explicitly at the edge: f = 3, base 1, 44 / 11.
  const double a = std::sqrt(1.5);
  const double f = f_of_a(a);
  const double second = 4 * (4 * a * a + 3 * f - 4) * std::pow(8 * a * a - 2 * f - 5, 3 / (-8 * a * a + 2 * f + 8)) /
                        (4 * a * a + 5);
  CHECK(second == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(symmetric_max_analytic(a + 1e-12) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("closed form is nondecreasing and violates exactly above sqrt(3/2)") {
  double prev = 0.0;
  for (int i = 0; i <= 4900; ++i) {
    const double a = 1.0 + 0.01 * i;
    const double s = symmetric_max_analytic(a);
    CHECK(s >= prev - 1e-12);
    CHECK((s > 4.0) == (a > std::sqrt(1.5)));
    prev = s;
  }
}

TEST_CASE("value at the p* settings equals the closed form") {
  for (double a : {1.3, 1.5, 2.0, 3.0, 10.0}) {
    const double p = symmetric_pstar(a);
    const double pp[3] = {p, p, p};
    const double v = svetlichny_value(symmetric_pure(a), MeasurementSettings::momentum_antisymmetric(pp));
    CHECK(std::abs(v - symmetric_max_analytic(a)) < 1e-9);
  }
}

TEST_CASE("p* agrees with a brute-force scan along the symmetric line") {
  const SvetlichnyFunctional s(symmetric_pure(2));
  double best = 0.0;
  double arg = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double p = i * 1e-5;
    const double pp[3] = {p, p, p};
    const double v = std::abs(s(MeasurementSettings::momentum_antisymmetric(pp)));
    if (v > best) {
      best = v;
      arg = p;
    }
  }
  CHECK(std::abs(arg - frozen::pstar2) < 2e-5);
  CHECK(best == doctest::Approx(frozen::smax2).epsilon(1e-10));
}

TEST_CASE("restricted maximization") {
  const auto v = maximize_restricted(vacuum());
  CHECK(v.value == doctest::Approx(4.0).epsilon(1e-14));
  for (double p : v.settings.flat()) CHECK(std::abs(p) < 1e-6);

  for (double a : {1.5, 2.0, 3.0}) {
    const auto r = maximize_restricted(symmetric_pure(a));
    CHECK(std::abs(r.value - symmetric_max_analytic(a)) < 1e-6);
    CHECK(std::abs(std::abs(svetlichny_value(symmetric_pure(a), r.settings)) - r.value) < 1e-10);
  }
}

TEST_CASE("restricted maximization of (2,1.6,1.5) matches a grid oracle") {
  const auto cm = build_pure_standard_form({2, 1.6, 1.5});
  const SvetlichnyFunctional s(cm);
  const double want = oracle::grid_then_compass_max(
      [&](const Eigen::Vector3d& p) {
        const double pp[3] = {p(0), p(1), p(2)};
        return std::abs(s(MeasurementSettings::momentum_antisymmetric(pp)));
      },
      -2.0, 2.0, 0.02);
  const auto r = maximize_restricted(cm);
  CHECK(std::abs(r.value - want) < 1e-6);
  CHECK(r.value >= 4.0 * purity(cm) - 1e-8);
}

TEST_CASE("full maximization") {
  CHECK(maximize_full(vacuum()).value == doctest::Approx(4.0).epsilon(1e-14));

  const auto sym = symmetric_pure(2);
  const auto full = maximize_full(sym);
  const auto restricted = maximize_restricted(sym);
  CHECK(full.value >= restricted.value - 1e-6);
  CHECK(std::abs(full.value - restricted.value) < 1e-4);

  const auto mixed = maximize_full(scaled_symmetric_mixed(2, 0.9));
  CHECK(std::abs(mixed.value - 0.9 * full.value) < 1e-5);
}

TEST_CASE("scaling covariance of the maximum") {
  const auto cm = build_pure_standard_form({2.2, 1.7, 1.6});
  const double base = maximize_restricted(cm).value;
  for (double c : {1.1, 1.5, 2.0}) {
    CHECK(std::abs(maximize_restricted(cm.scaled(c)).value - std::pow(c, -3) * base) < 1e-6);
  }
}

TEST_CASE("settings helpers") {
  std::array<double, 12> x{};
  for (int i = 0; i < 12; ++i) x[static_cast<std::size_t>(i)] = i * 0.1;
  const auto s = MeasurementSettings::from_flat(x);
  CHECK(s.flat() == x);
  CHECK(s.xi_prime[0](1) == doctest::Approx(0.7));
  CHECK(s.scaled(2.0).xi[2](0) == doctest::Approx(0.8));
  CHECK_THROWS_AS(MeasurementSettings::from_flat(std::vector<double>(11)), DimensionMismatch);
  CHECK_THROWS_AS(svetlichny_value(reduce(vacuum(), ModeSet{0, 1}), s), DimensionMismatch);
}
