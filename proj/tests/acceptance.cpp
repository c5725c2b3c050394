// Acceptance suite: one line per criterion. Each check is self-contained
// and uses the library's independent oracles where one exists.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "mms/couplings.hpp"
#include "mms/report.hpp"
#include "mms/generators.hpp"
#include "mms/lipmaps.hpp"
#include "mms/metrics.hpp"
#include "mms/obsdiam.hpp"

using namespace mms;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  int violations = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const auto mm = gen_random(3 + seed % 10, 10'000 + seed, seed % 3 == 0);
    for (int k = 1; k <= 9; ++k) {
      const double kappa = k / 10.0;
      if (partial_diameter(mm.space(), mm.mu(), kappa) !=
          partial_diameter_oracle(mm.space(), mm.mu(), kappa))
        ++violations;
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 60.0,
          "violations=" + std::to_string(violations) +
              ", runtime=" + std::to_string(secs) + "s (budget 60s)"};
}

Outcome criterion2() {
  int violations = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const auto mm = gen_random(3 + seed % 8, 20'000 + seed);
    const auto nu = gen_random(mm.size(), 21'000 + seed, true).mu();
    const double fast = prokhorov(mm.space(), mm.mu(), nu);
    if (std::abs(fast - prokhorov_oracle(mm.space(), mm.mu(), nu)) > 1e-9)
      ++violations;
  }
  for (int seed = 0; seed < 100; ++seed) {
    const auto mm = gen_random(6, 22'000 + seed);
    const auto nu = gen_random(6, 23'000 + seed, true).mu();
    const auto rho = gen_random(6, 24'000 + seed, true).mu();
    const double ab = prokhorov(mm.space(), mm.mu(), nu);
    const double ba = prokhorov(mm.space(), nu, mm.mu());
    const double bc = prokhorov(mm.space(), nu, rho);
    const double ac = prokhorov(mm.space(), mm.mu(), rho);
    if (std::abs(ab - ba) > 1e-9 || ac > ab + bc + 1e-9) ++violations;
  }
  return {violations == 0, "violations=" + std::to_string(violations)};
}

Outcome criterion3() {
  int violations = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto X = gen_random(2 + seed % 4, 30'000 + seed, seed % 2 == 1);
    const auto Y = gen_random(2 + (seed / 3) % 4, 31'000 + seed).space();
    for (double kappa : {0.25, 0.5}) {
      if (obsdiam(X, Y, kappa, 0.0, Variant::plain).value !=
          obsdiam_enumerated(X, Y, kappa, 0.0, Variant::plain).value)
        ++violations;
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations)};
}

Outcome criterion4() {
  std::mt19937_64 rng(44);
  int violations = 0;
  for (int t = 0; t < 500; ++t) {
    const auto mm = gen_random(6, 40'000 + t, t % 2 == 0);
    const auto target = gen_random(5, 41'000 + t).space();
    Assignment f(6), g(6);
    for (int& v : f) v = static_cast<int>(rng() % 5);
    for (int& v : g) v = static_cast<int>(rng() % 5);
    const double kf = ky_fan(target, mm.mu(), f, g);
    const double dp = prokhorov(target, pushforward(f, mm.mu(), 5),
                                pushforward(g, mm.mu(), 5));
    if (dp > kf + 1e-9) ++violations;
  }
  return {violations == 0, "violations=" + std::to_string(violations)};
}

Outcome criterion5() {
  int violations = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto X = gen_random(3 + seed % 2, 50'000 + seed, true);
    const auto Y = gen_random(4, 51'000 + seed).space();
    for (double delta : {0.05, 0.1, 0.2}) {
      const auto lip1 = enumerate_family(X, Y, 0.0, FamilyMode::exact);
      const auto lipd = enumerate_family(X, Y, delta, FamilyMode::exact);
      const auto tilded = enumerate_family(X, Y, delta, FamilyMode::relaxed);
      for (const auto& f : lip1)
        if (!std::binary_search(lipd.begin(), lipd.end(), f)) ++violations;
      for (const auto& f : lipd)
        if (!std::binary_search(tilded.begin(), tilded.end(), f))
          ++violations;
      const double plain = obsdiam(X, Y, 0.3, 0.0, Variant::plain).value;
      const double vd = obsdiam(X, Y, 0.3, delta, Variant::delta).value;
      const double vt = obsdiam(X, Y, 0.3, delta, Variant::tilde_delta).value;
      if (plain > vd + 1e-9 || vd > vt + 1e-9) ++violations;
    }
    double prev = 1e100;
    for (double kappa : {0.2, 0.4, 0.6, 0.8}) {
      const double v = obsdiam(X, Y, kappa, 0.0, Variant::plain).value;
      if (v > prev + 1e-9) ++violations;
      prev = v;
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations)};
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [screen, X] = gen_countable_screen(10);
  const auto lip1 = enumerate_family(X, screen, 0.0, FamilyMode::exact);
  bool constants = lip1.size() == 11;
  for (const auto& f : lip1) constants = constants && f[0] == f[1];
  const auto tilde = enumerate_family(X, screen, 0.2, FamilyMode::relaxed);
  const double hd = hausdorff_kyfan_families(screen, X.mu(), lip1, tilde);
  const double plain = obsdiam(X, screen, 0.25, 0.0, Variant::plain).value;
  const double tval =
      obsdiam(X, screen, 0.25, 0.2, Variant::tilde_delta).value;
  const double secs = seconds_since(t0);
  const bool ok = constants && hd >= 0.5 - 1e-9 && plain == 0.0 &&
                  std::abs(tval - 1.1) <= 1e-9 && secs < 5.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "constants=%s, hd=%.6f, plain=%.6f, tilde=%.9f (target "
                "1.1 +- 1e-9), runtime=%.2fs",
                constants ? "yes" : "no", hd, plain, tval, secs);
  return {ok, buf};
}

Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto X = gen_counterexample_X(10);
  const double kappa = 0.25;
  bool ok = partial_diameter(X.space(), X.mu(), kappa) >= 1.0;
  std::string detail;
  for (int n : {1, 2, 4, 8}) {
    const auto Yn = gen_counterexample_Yn(10, n, 4.0, 0.25);
    const double v = obsdiam(X, Yn.space, kappa, 0.0, Variant::plain).value;
    ok = ok && v >= 1.0 - 1e-9;
    detail += "n=" + std::to_string(n) + ":" + format_number(v) + " ";
  }
  const auto enc = obsdiam_realline(X, kappa, 4.0, 0.25);
  const double stated = 0.5 * (0.5 - kappa);
  const bool inside = stated >= enc.lower && stated <= enc.upper;
  detail += "realline=[" + format_number(enc.lower) + "," +
            format_number(enc.upper) + "] grid=" +
            format_number(enc.grid_value) + ", stated value " +
            format_number(stated) +
            (inside ? " inside enclosure" : " OUTSIDE enclosure");
  const double secs = seconds_since(t0);
  detail += ", runtime=" + std::to_string(secs) + "s (budget 300s)";
  return {ok && secs < 300.0, detail};
}

Outcome criterion8() {
  int violations = 0;
  for (int seed = 0; seed < 25; ++seed) {
    for (double eps : {0.01, 0.05}) {
      const auto A = gen_random(4, 60'000 + seed, true);
      const int n = A.size();
      std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) d[i][j] = A.space().d(i, j) + eps;
      const FiniteMMSpace B(FiniteMetricSpace(A.space().labels(), d),
                            A.mu());
      Assignment id(n);
      for (int i = 0; i < n; ++i) id[i] = i;
      if (!mm_iso_check(A, B, id, full_set(n), eps).pass) ++violations;
      const double box = box_distance_exact(A, B);
      if (box > 3 * eps + 1e-9) ++violations;
      if (mm_iso_search(A, B, 3 * (box + 1e-6)).outcome !=
          SearchOutcome::found)
        ++violations;
      const double gh = gh_distance(A.space(), B.space());
      if (gh > 3 * eps + 1e-9) ++violations;
      if (approx_map_search(A.space(), B.space(), 3 * (gh + 1e-6)).outcome !=
          SearchOutcome::found)
        ++violations;
      if (approx_map_search(A.space(), B.space(), eps + 1e-6).outcome ==
              SearchOutcome::found &&
          !(gh < 3 * (eps + 1e-6)))
        ++violations;
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations)};
}

Outcome criterion9() {
  std::mt19937_64 rng(99);
  int violations = 0, checked = 0;
  while (checked < 100) {
    const int m = 8 + static_cast<int>(rng() % 9);
    const double delta = 0.1 + 0.05 * static_cast<double>(rng() % 4);
    const auto grid = gen_grid_interval(m);
    const int budget = static_cast<int>(delta * m);  // removable atoms
    if (budget == 0) continue;
    const int start = static_cast<int>(rng() % m);
    PointSet subset;
    for (int i = 0; i < m; ++i)
      if (i < start || i >= start + budget) subset.push_back(i);
    if (grid.mu().mass(subset) < 1.0 - delta - 1e-12) continue;
    ++checked;
    const auto res = nearest_gap_bound_check(grid, delta, subset);
    if (!res.holds) ++violations;
  }
  return {violations == 0, "violations=" + std::to_string(violations)};
}

Outcome criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto X = gen_random(4, 777, true);
  const std::vector<double> meshes{0.25, 0.125, 0.0625};
  const std::vector<double> deltas{0.1, 0.01, 0.001};
  int violations = 0, excluded = 0;
  std::vector<std::vector<double>> plain_by_mesh;
  for (double h : meshes) {
    const auto Y =
        gen_star_tree(3, static_cast<int>(std::llround(1.0 / h)), 1.0);
    std::vector<double> plains;
    for (double kappa : {0.2, 0.4, 0.7}) {
      const double plain = obsdiam(X, Y, kappa, 0.0, Variant::plain).value;
      plains.push_back(plain);
      double prev = 1e100;
      double last = plain;
      for (double delta : deltas) {
        const double v = obsdiam(X, Y, kappa, delta, Variant::delta).value;
        if (v > prev + 1e-9) ++violations;  // non-increasing as delta drops
        prev = v;
        last = v;
      }
      bool breakpoint = false;
      for (double k2 : {kappa - 1e-6, kappa + 1e-6})
        if (std::abs(obsdiam(X, Y, k2, 0.0, Variant::plain).value - plain) >
            1e-9)
          breakpoint = true;
      if (breakpoint)
        ++excluded;
      else if (std::abs(last - plain) > 1e-6)
        ++violations;
    }
    plain_by_mesh.push_back(plains);
  }
  for (size_t i = 0; i + 1 < meshes.size(); ++i)
    for (size_t k = 0; k < plain_by_mesh[i].size(); ++k)
      if (std::abs(plain_by_mesh[i][k] - plain_by_mesh[i + 1][k]) >
          4 * meshes[i] + 1e-9)
        ++violations;
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 300.0,
          "violations=" + std::to_string(violations) +
              ", excluded-kappas=" + std::to_string(excluded) +
              ", runtime=" + std::to_string(secs) + "s (budget 300s)"};
}

}  // namespace

int main() {
  struct Entry {
    int num;
    const char* desc;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "partial diameter equals its subset oracle", criterion1},
      {2, "flow Prokhorov equals the subset oracle and is a metric",
       criterion2},
      {3, "branch-and-bound observable diameter equals enumeration",
       criterion3},
      {4, "pushforward Prokhorov bounded by Ky Fan", criterion4},
      {5, "family inclusions and monotone chains", criterion5},
      {6, "truncated-screen facts: constant maps, Hausdorff gap, values",
       criterion6},
      {7, "apex counterexample: lower bounds and real-line enclosure",
       criterion7},
      {8, "three-epsilon propositions for box and GH", criterion8},
      {9, "nearest-point gap bound", criterion9},
      {10, "finite-source convergence across deltas and meshes",
       criterion10},
  };
  int failures = 0;
  for (const auto& e : entries) {
    const Outcome o = e.fn();
    std::printf("%s criterion %d: %s [%s]\n", o.ok ? "PASS" : "FAIL", e.num,
                e.desc, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
