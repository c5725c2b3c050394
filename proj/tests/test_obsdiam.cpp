#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "mms/generators.hpp"
#include "mms/metrics.hpp"
#include "mms/obsdiam.hpp"

using namespace mms;

namespace {

FiniteMMSpace two_point_uniform() {
  return FiniteMMSpace(FiniteMetricSpace({"a", "b"}, {{0, 1}, {1, 0}}),
                       ProbabilityWeights::uniform(2));
}

}  // namespace

TEST_CASE("pinned observable diameters") {
  const auto X = two_point_uniform();
  const auto one = gen_random(1, 1).space();
  CHECK(obsdiam(X, one, 0.25, 0.0, Variant::plain).value == 0.0);
  CHECK(obsdiam(X, one, 0.4, 0.3, Variant::tilde_delta).value == 0.0);

  CHECK(obsdiam(X, X.space(), 0.25, 0.0, Variant::plain).value == 1.0);

  const auto [screen, X2] = gen_countable_screen(10);
  CHECK(obsdiam(X2, screen, 0.25, 0.0, Variant::plain).value == 0.0);
  // tilde family at delta = 0.2 admits x0 -> y0, x1 -> y_i for i >= 5
  // (defect 1/i <= 0.2); the best is i = 5 with both atoms needed at
  // kappa = 0.25, giving 1 + 1/5
  const auto tilde = obsdiam(X2, screen, 0.25, 0.2, Variant::tilde_delta);
  CHECK(tilde.value == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(tilde.value ==
        obsdiam_enumerated(X2, screen, 0.25, 0.2, Variant::tilde_delta)
            .value);
}

TEST_CASE("branch and bound equals enumeration") {
  for (int seed = 0; seed < 60; ++seed) {
    const auto X = gen_random(2 + seed % 4, 1000 + seed, seed % 2 == 1);
    const auto Y = gen_random(2 + (seed / 2) % 4, 1100 + seed).space();
    for (double kappa : {0.2, 0.5}) {
      for (double delta : {0.0, 0.1}) {
        const Variant variant =
            delta == 0.0 ? Variant::plain : Variant::delta;
        const auto fast = obsdiam(X, Y, kappa, delta, variant);
        const auto slow = obsdiam_enumerated(X, Y, kappa, delta, variant);
        CHECK(fast.value == slow.value);
      }
    }
  }
}

TEST_CASE("variant chain and kappa monotonicity") {
  for (int seed = 0; seed < 25; ++seed) {
    const auto X = gen_random(4, 1200 + seed, true);
    const auto Y = gen_random(4, 1300 + seed).space();
    for (double delta : {0.05, 0.1, 0.2}) {
      const double plain = obsdiam(X, Y, 0.3, 0.0, Variant::plain).value;
      const double d = obsdiam(X, Y, 0.3, delta, Variant::delta).value;
      const double t = obsdiam(X, Y, 0.3, delta, Variant::tilde_delta).value;
      CHECK(plain <= d + kTol);
      CHECK(d <= t + kTol);
    }
    double prev = 1e9;
    for (double kappa : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double v = obsdiam(X, Y, kappa, 0.0, Variant::plain).value;
      CHECK(v <= prev + kTol);
      prev = v;
    }
  }
}

TEST_CASE("relabeling invariance") {
  const auto X = gen_random(4, 77, true);
  const auto Y = gen_random(5, 78).space();
  const double base = obsdiam(X, Y, 0.3, 0.0, Variant::plain).value;

  // permute X and Y
  const std::vector<int> px{2, 0, 3, 1}, py{4, 2, 0, 1, 3};
  std::vector<std::vector<double>> dx(4, std::vector<double>(4));
  std::vector<double> wx(4);
  std::vector<std::string> lx(4);
  for (int i = 0; i < 4; ++i) {
    lx[i] = X.space().labels()[px[i]];
    wx[i] = X.mu()[px[i]];
    for (int j = 0; j < 4; ++j) dx[i][j] = X.space().d(px[i], px[j]);
  }
  std::vector<std::vector<double>> dy(5, std::vector<double>(5));
  std::vector<std::string> ly(5);
  for (int i = 0; i < 5; ++i) {
    ly[i] = Y.labels()[py[i]];
    for (int j = 0; j < 5; ++j) dy[i][j] = Y.d(py[i], py[j]);
  }
  const FiniteMMSpace Xp(FiniteMetricSpace(lx, dx),
                         ProbabilityWeights(wx));
  const FiniteMetricSpace Yp(ly, dy);
  CHECK(obsdiam(Xp, Yp, 0.3, 0.0, Variant::plain).value == base);
}

TEST_CASE("range restriction is monotone in the radius") {
  const auto X = gen_random(3, 55, true);
  const auto Y = gen_star_tree(3, 4, 1.0);
  double prev = 0.0;
  for (double R : {0.3, 0.6, 1.2, 2.5}) {
    const double v =
        obsdiam(X, Y, 0.3, 0.0, Variant::plain, RangeRestriction{0, R})
            .value;
    CHECK(v >= prev - kTol);
    prev = v;
  }
  CHECK(prev == obsdiam(X, Y, 0.3, 0.0, Variant::plain).value);
}

TEST_CASE("witness attains the reported value") {
  const auto X = gen_random(4, 91, true);
  const auto Y = gen_random(5, 92).space();
  const auto res = obsdiam(X, Y, 0.3, 0.0, Variant::plain);
  CHECK(lipschitz_defect(X.space(), Y, res.witness) <= kTol);
  std::map<int, double> atoms;
  for (int i = 0; i < 4; ++i) atoms[res.witness[i]] += X.mu()[i];
  std::vector<std::pair<int, double>> av(atoms.begin(), atoms.end());
  CHECK(partial_diameter_atoms(Y, av, 0.3) == res.value);
}

TEST_CASE("delta schedule limits") {
  const auto X = two_point_uniform();
  const auto one = gen_random(1, 3).space();
  const auto zero = obsdiam_plus(X, one, 0.25, {0.1, 0.01, 0.001});
  for (double v : zero.values) CHECK(v == 0.0);
  CHECK(zero.stabilized);

  const auto Y = gen_star_tree(3, 4, 1.0);
  const auto Xr = gen_random(3, 21, true);
  const auto plus =
      obsdiam_plus(Xr, Y, 0.3, {0.1, 0.01, 0.001}, Variant::delta);
  const double plain = obsdiam(Xr, Y, 0.3, 0.0, Variant::plain).value;
  for (double v : plus.values) CHECK(v >= plain - kTol);
  CHECK(plus.limit == doctest::Approx(plain).epsilon(1e-6));

  CHECK_THROWS_AS(obsdiam_plus(X, one, 0.25, {0.1, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("real line enclosure") {
  const auto X = two_point_uniform();
  const auto enc = obsdiam_realline(X, 0.25, 2.0, 0.05);
  CHECK(enc.lower <= 1.0);
  CHECK(enc.upper >= 1.0);
  CHECK(enc.upper - enc.lower == doctest::Approx(4 * 0.05));
  CHECK_FALSE(enc.range_may_bind);

  const auto single = gen_random(1, 4);
  const auto zero = obsdiam_realline(single, 0.25, 1.0, 0.25);
  CHECK(zero.lower <= 0.0);
  CHECK(zero.upper >= 0.0);

  // R below the diameter must be flagged
  const auto tight = obsdiam_realline(X, 0.25, 0.5, 0.25);
  CHECK(tight.range_may_bind);
  CHECK_THROWS_AS(obsdiam_realline(X, 0.25, 1.0, -0.1),
                  std::invalid_argument);
}
