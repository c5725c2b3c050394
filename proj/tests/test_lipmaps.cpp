#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mms/generators.hpp"
#include "mms/lipmaps.hpp"
#include "mms/metrics.hpp"

using namespace mms;

TEST_CASE("lipschitz defect") {
  const auto [screen, X] = gen_countable_screen(10);
  CHECK(lipschitz_defect(X.space(), screen, {3, 3}) == 0.0);
  CHECK(lipschitz_defect(X.space(), X.space(), {0, 1}) == 0.0);
  // x0 -> y0, x1 -> y_i has defect d_Y(y0, y_i) - 1 = 1/i
  for (int i : {1, 2, 5, 10})
    CHECK(lipschitz_defect(X.space(), screen, {0, i}) ==
          doctest::Approx(1.0 / i).epsilon(1e-12));
}

TEST_CASE("almost lipschitz membership via exceptional sets") {
  const auto [screen, X] = gen_countable_screen(10);
  // defect below delta: whole space qualifies
  auto w = almost_lipschitz_witness(X, screen, {0, 10}, 0.1 + 1e-6);
  REQUIRE(w.has_value());
  CHECK(w->non_exceptional == PointSet{0, 1});
  // defect 1/2 > 0.4 and both atoms weigh 0.5 > 0.4: no exceptional set
  CHECK_FALSE(almost_lipschitz_witness(X, screen, {0, 2}, 0.4).has_value());
}

TEST_CASE("family enumeration matches the unpruned filter") {
  std::mt19937_64 rng(3);
  for (int seed = 0; seed < 15; ++seed) {
    const auto source = gen_random(4, 800 + seed, seed % 2 == 1);
    const auto target = gen_random(4, 850 + seed).space();
    for (double delta : {0.0, 0.1, 0.3}) {
      for (FamilyMode mode : {FamilyMode::exact, FamilyMode::relaxed}) {
        const MapFamily fast =
            enumerate_family(source, target, delta, mode);
        MapFamily slow;
        Assignment f(4, 0);
        while (true) {
          const bool member =
              mode == FamilyMode::exact
                  ? lipschitz_defect(source.space(), target, f) <=
                        delta + kTol
                  : almost_lipschitz_witness(source, target, f, delta)
                        .has_value();
          if (member) slow.push_back(f);
          int k = 3;
          while (k >= 0 && f[k] == 3) f[k--] = 0;
          if (k < 0) break;
          ++f[k];
        }
        CHECK(fast == slow);
      }
    }
  }
}

TEST_CASE("enumeration pinned instances") {
  const auto [screen, X] = gen_countable_screen(10);
  const MapFamily lip1 = enumerate_family(X, screen, 0.0, FamilyMode::exact);
  REQUIRE(lip1.size() == 11);  // exactly the constant maps
  for (const auto& f : lip1) CHECK(f[0] == f[1]);

  const auto one = gen_random(1, 5);
  const auto any = gen_random(6, 6);
  CHECK(enumerate_family(any, one.space(), 0.0, FamilyMode::exact).size() ==
        1);

  FiniteMetricSpace two({"a", "b"}, {{0, 1}, {1, 0}});
  FiniteMMSpace twomm(two, ProbabilityWeights::uniform(2));
  CHECK(enumerate_family(twomm, two, 0.0, FamilyMode::exact).size() == 4);
}

TEST_CASE("family inclusion chain") {
  for (int seed = 0; seed < 10; ++seed) {
    const auto source = gen_random(4, 860 + seed, true);
    const auto target = gen_random(4, 870 + seed).space();
    for (double delta : {0.05, 0.1, 0.2}) {
      const auto lip1 = enumerate_family(source, target, 0.0,
                                         FamilyMode::exact);
      const auto lipd = enumerate_family(source, target, delta,
                                         FamilyMode::exact);
      const auto tilded = enumerate_family(source, target, delta,
                                           FamilyMode::relaxed);
      for (const auto& f : lip1)
        CHECK(std::binary_search(lipd.begin(), lipd.end(), f));
      for (const auto& f : lipd)
        CHECK(std::binary_search(tilded.begin(), tilded.end(), f));
    }
  }
}

TEST_CASE("strict and relaxed families coincide below the min atom mass") {
  for (int seed = 0; seed < 10; ++seed) {
    const auto source = gen_random(4, 880 + seed, true);
    const auto target = gen_random(5, 890 + seed).space();
    double w = 1.0;
    for (double x : source.mu().w()) w = std::min(w, x);
    const double delta = 0.9 * w;
    CHECK(enumerate_family(source, target, delta, FamilyMode::exact) ==
          enumerate_family(source, target, delta, FamilyMode::relaxed));
  }
}

TEST_CASE("range restriction keeps maps inside the open ball") {
  const auto [screen, X] = gen_countable_screen(5);
  // d(y0, y_i) = 1 + 1/i, so radius 1.5 from y0 keeps y0 and y_i, i >= 3
  RangeRestriction range{0, 1.5};
  const auto fam =
      enumerate_family(X, screen, 2.0, FamilyMode::exact, range);
  for (const auto& f : fam)
    for (int v : f) CHECK((v == 0 || v >= 3));
  // growing the radius can only grow the family
  const auto wider =
      enumerate_family(X, screen, 2.0, FamilyMode::exact,
                       RangeRestriction{0, 10.0});
  CHECK(wider.size() >= fam.size());
}

TEST_CASE("hausdorff ky fan between families") {
  const auto [screen, X] = gen_countable_screen(10);
  const auto lip1 = enumerate_family(X, screen, 0.0, FamilyMode::exact);
  CHECK(hausdorff_kyfan_families(screen, X.mu(), lip1, lip1) == 0.0);
  const auto tilde =
      enumerate_family(X, screen, 0.2, FamilyMode::relaxed);
  CHECK(hausdorff_kyfan_families(screen, X.mu(), lip1, tilde) >= 0.5 - kTol);
  // singleton families reduce to ky_fan
  const MapFamily F{{0, 0}}, G{{0, 10}};
  const double hd = hausdorff_kyfan_families(screen, X.mu(), F, G);
  CHECK(hd == ky_fan(screen, X.mu(), {0, 0}, {0, 10}));
  CHECK_THROWS_AS(hausdorff_kyfan_families(screen, X.mu(), {}, G),
                  std::invalid_argument);
}

TEST_CASE("nearest point map") {
  FiniteMetricSpace g({"0", "0.5", "1"},
                      {{0, 0.5, 1}, {0.5, 0, 0.5}, {1, 0.5, 0}});
  CHECK(nearest_point_map(g, {0, 1, 2}) == Assignment{0, 1, 2});
  CHECK(nearest_point_map(g, {0, 2}) == Assignment{0, 0, 2});  // tie -> 0
  CHECK(nearest_point_map(g, {1}) == Assignment{1, 1, 1});
  CHECK_THROWS_AS(nearest_point_map(g, {}), std::invalid_argument);
}

TEST_CASE("doubling exponent") {
  CHECK(doubling_exponent(gen_random(1, 9)) == 0.0);
  FiniteMetricSpace two({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(doubling_exponent(FiniteMMSpace(two, ProbabilityWeights::uniform(2)))
        == doctest::Approx(1.0));
  // uniform grids stay modestly doubling
  CHECK(doubling_exponent(gen_grid_interval(8)) <= 3.0);
}

TEST_CASE("separated nets") {
  const auto grid = gen_grid_interval(5);  // spacing 0.25
  CHECK(separated_net(grid.space(), 0.2) == PointSet{0, 1, 2, 3, 4});
  CHECK(separated_net(grid.space(), 2.0) == PointSet{0});
  CHECK(separated_net(grid.space(), 0.5) == PointSet{0, 2, 4});
  // closed eta-balls around the net cover the space
  for (double eta : {0.3, 0.6, 0.9}) {
    const auto net = separated_net(grid.space(), eta);
    for (int x = 0; x < grid.size(); ++x) {
      double best = 1e9;
      for (int n : net) best = std::min(best, grid.space().d(x, n));
      CHECK(best <= eta + kTol);
    }
  }
}

TEST_CASE("nearest point gap bound") {
  const auto grid = gen_grid_interval(16);
  GapBoundResult all = nearest_gap_bound_check(grid, 0.25, full_set(16));
  CHECK(all.holds);
  CHECK(all.worst_gap == 0.0);
  // remove 4 consecutive points (mass 0.25)
  PointSet sub;
  for (int i = 0; i < 16; ++i)
    if (i < 6 || i > 9) sub.push_back(i);
  GapBoundResult res = nearest_gap_bound_check(grid, 0.25, sub);
  CHECK(res.holds);
  CHECK(res.worst_gap > 0.0);
  CHECK(res.bound ==
        doctest::Approx(3.0 * grid.space().diameter() *
                        std::pow(0.25, 1.0 / doubling_exponent(grid))));
  CHECK_THROWS_AS(nearest_gap_bound_check(grid, 0.01, sub),
                  std::invalid_argument);
}
