#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "cvnl/entanglement.hpp"
#include "cvnl/errors.hpp"
#include "cvnl/sampler.hpp"
#include "cvnl/svetlichny.hpp"
#include "oracles.hpp"

using namespace cvnl;

// Frozen with mpmath at 40 digits.
namespace frozen {
constexpr double e15 = 0.22519160881886015160;
constexpr double e2 = 0.46354583321510116047;
constexpr double e3 = 0.83609600852029149352;
constexpr double e50 = 3.6244298277919409442;
constexpr double e100 = 4.3175103361289149222;
constexpr double threshold = 0.084949518397698736450;  // ln(32/27) / 2
}  // namespace frozen

TEST_CASE("Renyi-2 entropy") {
  CHECK(renyi2_entropy(vacuum()) == 0.0);
  CHECK(renyi2_entropy(vacuum().scaled(2.0)) == doctest::Approx(3 * std::log(2.0)).epsilon(1e-14));
  CHECK(renyi2_entropy(reduce(symmetric_pure(2), ModeSet{0})) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(renyi2_entropy(symmetric_pure(2))) < 1e-12);
}

TEST_CASE("symmetric closed form") {
  CHECK(tripartite_renyi2_symmetric(1.0) == 0.0);
  CHECK(tripartite_renyi2_symmetric(1.5) == doctest::Approx(frozen::e15).epsilon(1e-13));
  CHECK(tripartite_renyi2_symmetric(2.0) == doctest::Approx(frozen::e2).epsilon(1e-13));
  CHECK(tripartite_renyi2_symmetric(3.0) == doctest::Approx(frozen::e3).epsilon(1e-13));
  CHECK(tripartite_renyi2_symmetric(50.0) == doctest::Approx(frozen::e50).epsilon(1e-12));
  CHECK(tripartite_renyi2_symmetric(100.0) == doctest::Approx(frozen::e100).epsilon(1e-12));
  CHECK(tripartite_renyi2_symmetric(100.0) > 4.0);
  CHECK(tripartite_renyi2_symmetric(std::sqrt(1.5)) == doctest::Approx(frozen::threshold).epsilon(1e-13));
  CHECK_THROWS_AS(tripartite_renyi2_symmetric(0.9), DomainError);
}

TEST_CASE("inverse of the symmetric closed form") {
  CHECK(symmetric_a_for_entanglement(0.0) == 1.0);
  CHECK(symmetric_a_for_entanglement(-1.0) == 1.0);
  for (double a : {1.01, 1.2, std::sqrt(1.5), 2.0, 4.0, 20.0}) {
    CHECK(symmetric_a_for_entanglement(tripartite_renyi2_symmetric(a)) == doctest::Approx(a).epsilon(1e-10));
  }
  CHECK(symmetric_lower_bound(frozen::e2) == doctest::Approx(symmetric_max_analytic(2.0)).epsilon(1e-10));
  CHECK(symmetric_lower_bound(0.01) == 4.0);
}

TEST_CASE("residual entanglement specializes to the symmetric closed form") {
  CHECK(tripartite_renyi2_pure({1, 1, 1}) == 0.0);
  for (int i = 0; i <= 80; ++i) {
    const double a = 1.0 + 0.05 * i;
    CHECK(std::abs(tripartite_renyi2_pure({a, a, a}) - tripartite_renyi2_symmetric(a)) < 1e-9);
  }
}

TEST_CASE("residual entanglement is nonnegative and permutation invariant") {
  SamplerConfig cfg;
  cfg.seed = 11;
  for (std::size_t i = 0; i < 2000; ++i) {
    const auto p = sample_pure_params(cfg, i);
    const double e = tripartite_renyi2_pure(p);
    CHECK(e >= -1e-9);
    std::array<double, 3> v = p.as_array();
    std::sort(v.begin(), v.end());
    do {
      CHECK(std::abs(tripartite_renyi2_pure({v[0], v[1], v[2]}) - e) < 1e-9);
    } while (std::next_permutation(v.begin(), v.end()));
  }
  const double e = tripartite_renyi2_pure({2, 1.6, 1.5});
  CHECK(e > 0.0);
  CHECK_THROWS_AS(tripartite_renyi2_pure({2, 1.5, 1.2}), TriangleViolation);
  CHECK_THROWS_AS(tripartite_renyi2_pure({3, 1.2, 1.1}), TriangleViolation);
}

TEST_CASE("pairwise closed form agrees with a direct search over pure states") {
  // Triples chosen so that the three branches of the closed form all occur.
  const std::array<std::array<double, 3>, 8> triples{{
      {2.0, 2.0, 2.0},
      {1.2, 1.1, 1.29},
      {2.0, 1.6, 1.5},
      {1.5, 1.5, 1.5},
      {3.0, 2.5, 1.8},
      {1.3, 3.4, 3.65},
      {1.25, 3.75, 3.95},
      {1.05, 1.05, 1.05},
  }};
  const std::array<std::array<int, 3>, 3> pairs{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  for (const auto& t : triples) {
    const auto cm = build_pure_standard_form({t[0], t[1], t[2]});
    for (const auto& [i, j, k] : pairs) {
      const auto red = reduce(cm, ModeSet{i, j});
      const double want = oracle::pairwise_renyi2_bruteforce(cm.matrix(), i, j);
      const double got = pairwise_renyi2_pure(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)],
                                              t[static_cast<std::size_t>(k)]);
      INFO("triple ", t[0], ",", t[1], ",", t[2], " pair ", i, j);
      CHECK(std::abs(got - want) < 1e-6);
      // Separable pairs and NPT pairs must coincide.
      CHECK((got > 1e-12) == !is_ppt(red, ModeSet{0}).ppt);
    }
  }
}

TEST_CASE("classification of symmetric mixed states") {
  const auto vac = classify_symmetric_mixed(1.0, 1.0);
  CHECK_FALSE(vac.fully_inseparable);
  CHECK_FALSE(vac.promiscuous);
  CHECK_FALSE(vac.svetlichny_nonlocal);
  CHECK(vac.fully_separable_or_bound());
  CHECK(vac.s_max == doctest::Approx(4.0));

  const auto pure3 = classify_symmetric_mixed(3.0, 1.0);
  CHECK(pure3.fully_inseparable);
  CHECK(pure3.svetlichny_nonlocal);
  CHECK(pure3.s_max == doctest::Approx(symmetric_max_analytic(3.0)).epsilon(1e-8));

  const auto half = classify_symmetric_mixed(3.0, 0.5);
  CHECK_FALSE(half.svetlichny_nonlocal);
  CHECK(half.s_max <= 4.0);

  CHECK_THROWS_AS(classify_symmetric_mixed(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(classify_symmetric_mixed(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(classify_symmetric_mixed(2.0, 1.1), DomainError);
}

TEST_CASE("pure symmetric states are NPT with NPT reductions at low a") {
  for (double a : {1.05, 1.2, 1.5, 3.0}) {
    const auto l = classify_symmetric_mixed(a, 1.0);
    CHECK(l.fully_inseparable);
    CHECK(l.min_nu_bipartition < 1.0);
  }
  CHECK(classify_symmetric_mixed(1.2, 1.0).promiscuous);
}

TEST_CASE("flags are cumulative and nonlocality needs purity above the cutoff") {
  for (double a = 1.0; a <= 4.0; a += 0.25) {
    for (double mu = 0.1; mu <= 1.0 + 1e-12; mu += 0.1) {
      const auto l = classify_symmetric_mixed(a, std::min(mu, 1.0));
      if (l.svetlichny_nonlocal) CHECK(l.fully_inseparable);
      if (l.promiscuous) CHECK(l.fully_inseparable);
      if (std::min(mu, 1.0) <= svetlichny_purity_cutoff()) CHECK_FALSE(l.svetlichny_nonlocal);
    }
  }
}
