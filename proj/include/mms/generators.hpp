// Instance generators: interval grids, the apex-extended interval and its
// ray-glued screens, the almost-converging screen family, circles, star
// trees, and seeded random spaces.
#pragma once

#include <cstdint>

#include "mms/lipmaps.hpp"
#include "mms/space.hpp"

namespace mms {

// m equally spaced points on [0,1], uniform weights 1/m. Requires m >= 2.
FiniteMMSpace gen_grid_interval(int m);

// Interval grid of m points, each of weight 1/(2m), plus an apex point at
// distance exactly 1 from every grid point carrying weight 1/2.
FiniteMMSpace gen_counterexample_X(int m);

// Ray {0, -h, ..., -R} glued at 0 to the apex-extended interval grid of m
// points, with the ray stretched by the factor n:
//   d(x, y) = n|x - y|            x, y on the ray
//   d(x, y) = d_X(x, y)           x, y in the interval-with-apex part
//   d(x, y) = n|x| + y            x on the ray, y in the interval
//   d(x, a) = n|x| + 1            x on the ray, a the apex
// Basepoint is the ray point -1, so 1/h must be an integer and R >= 1.
PointedMetricSpace gen_counterexample_Yn(int m, int n, double R, double h);

// Screen {y_0, ..., y_k} with d(y_0, y_i) = 1 + 1/i and
// d(y_i, y_j) = 2 + 1/i + 1/j, plus the fixed companion: a two-point
// uniform space at distance 1.
struct CountableScreen {
  FiniteMetricSpace screen;
  FiniteMMSpace companion;
};
CountableScreen gen_countable_screen(int k);

// m points equally spaced on a circle of radius r, arc-length metric.
FiniteMetricSpace gen_circle(int m, double r);

// Star with `branches` rays of m points each at spacing length/m around a
// center, path metric. Two branches give an interval discretization.
FiniteMetricSpace gen_star_tree(int branches, int m, double length);

// n i.i.d. points in the unit square with the Euclidean metric;
// deterministic under the seed. Weights uniform, or seeded positive
// random weights when random_weights is set.
FiniteMMSpace gen_random(int n, std::uint64_t seed,
                         bool random_weights = false);

// Matched instance for the pointed convergence check: the line segment
// [-R, R] at mesh h with basepoint 0, the ray-scaled screen at ray mesh
// h/n, and the canonical zero-distortion map grid point t -> ray point
// -1 + t/n, certified at epsilon = h/n. Requires R <= n/2 and n/h
// integral.
struct PghInstance {
  PointedMetricSpace line;
  PointedMetricSpace approx;
  Assignment map;  // -1 outside the ball B_R(0), which is all of `line`
  double radius = 0.0;
  double epsilon = 0.0;
};
PghInstance gen_pgh_instance(int m, int n, double R, double h);

}  // namespace mms
