// 1-Lipschitz maps between finite spaces, their two error-relaxed
// variants, and the supporting machinery: exceptional-set search (a
// mass-budgeted vertex cover), family enumeration with constraint
// propagation, doubling exponents, separated nets, nearest-point maps.
#pragma once

#include <cstdint>
#include <optional>

#include "mms/space.hpp"

namespace mms {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Maps are index assignment vectors (length = |source|). A family is
// deduplicated and sorted by assignment vector.
using Assignment = std::vector<int>;
using MapFamily = std::vector<Assignment>;

struct LipschitzWitness {
  double delta = 0.0;
  PointSet non_exceptional;  // the set the defect condition holds on
};

// Max over pairs of d_Y(f(x), f(z)) - d_X(x, z), floored at 0.
// The map lies in Lip_1^delta iff the defect is <= delta.
double lipschitz_defect(const FiniteMetricSpace& source,
                        const FiniteMetricSpace& target, const Assignment& f);

// Membership in the almost-Lipschitz family: searches for a subset of
// mass >= 1-delta on which all pairwise defects are <= delta. Exact
// branch-and-bound over vertex deletions in the conflict graph; refuses
// sources larger than 25 points.
std::optional<LipschitzWitness> almost_lipschitz_witness(
    const FiniteMMSpace& source, const FiniteMetricSpace& target,
    const Assignment& f, double delta, double tol = kTol);

enum class FamilyMode {
  exact,    // Lip_1^delta: pairwise defect <= delta everywhere
  relaxed,  // tilde-Lip_1^delta: defect <= delta off a set of mass <= delta
};

struct RangeRestriction {
  int basepoint = 0;
  double radius = 0.0;  // keep maps with d_Y(o, f(x)) < radius for all x
};

struct EnumerationOptions {
  double tol = kTol;
  std::uint64_t node_budget = 20'000'000;
};

// Complete family of admissible maps from source to target. Backtracking
// assigns points in decreasing-eccentricity order and prunes partial
// assignments whose constraints are already violated.
MapFamily enumerate_family(const FiniteMMSpace& source,
                           const FiniteMetricSpace& target, double delta,
                           FamilyMode mode,
                           const std::optional<RangeRestriction>& range = {},
                           const EnumerationOptions& opts = {});

// Hausdorff distance between two map families under the Ky Fan metric.
double hausdorff_kyfan_families(const FiniteMetricSpace& target,
                                const ProbabilityWeights& mu,
                                const MapFamily& F, const MapFamily& G);

// pi with d(x, pi(x)) minimal over N and pi(x) = x on N; ties break to
// the smallest index.
Assignment nearest_point_map(const FiniteMetricSpace& space,
                             const PointSet& N);

// Least N >= 0 with mu(B_2r(x)) <= 2^N mu(B_r(x)) for all x and r
// (closed balls, critical radii only).
double doubling_exponent(const FiniteMMSpace& mm);

// Greedy maximal eta-separated set in index order; closed eta-balls
// around it cover the space.
PointSet separated_net(const FiniteMetricSpace& space, double eta);

struct GapBoundResult {
  bool holds = false;
  double worst_gap = 0.0;
  double bound = 0.0;
  int witness = -1;  // point realizing the worst gap
};

// Checks max_x d(x, pi(x)) <= 3 * Diam * delta^(1/N) for the nearest
// point map onto `subset`, with N the doubling exponent.
GapBoundResult nearest_gap_bound_check(const FiniteMMSpace& mm, double delta,
                                       const PointSet& subset,
                                       double tol = kTol);

namespace detail {

// Exact minimum-mass vertex cover over an adjacency-bitmask graph on at
// most 25 vertices; returns (mass, cover mask).
std::pair<double, std::uint32_t> min_mass_vertex_cover(
    const std::vector<std::uint32_t>& adj, const std::vector<double>& w);

}  // namespace detail

}  // namespace mms
