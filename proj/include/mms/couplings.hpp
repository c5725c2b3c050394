// Couplings, distortion, box distance, mm isomorphisms up to error,
// approximation maps, Gromov-Hausdorff and pointed-GH condition checks.
#pragma once

#include <optional>

#include "mms/lipmaps.hpp"
#include "mms/space.hpp"

namespace mms {

// Joint measure with prescribed marginals; validated at construction.
class Coupling {
 public:
  Coupling(std::vector<std::vector<double>> xi, const ProbabilityWeights& mu,
           const ProbabilityWeights& nu);

  const std::vector<std::vector<double>>& xi() const { return xi_; }
  double mass_on(const std::vector<std::pair<int, int>>& S) const;

  static Coupling product(const ProbabilityWeights& mu,
                          const ProbabilityWeights& nu);

 private:
  std::vector<std::vector<double>> xi_;
};

// Worst absolute distance discrepancy over pairs of pairs in S; empty S
// gives 0 by convention.
double distortion(const std::vector<std::pair<int, int>>& S,
                  const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

// Exact box distance: min over distortion thresholds t of
// max(1 - xi*(t), t), with xi*(t) the largest coupling mass supportable
// on a pairwise-compatible cell set (maximal-clique enumeration with a
// max-flow inner step). Requires |X| * |Y| <= 16.
double box_distance_exact(const FiniteMMSpace& X, const FiniteMMSpace& Y);

// Bounds mode: lower bound from a star relaxation of the
// pairwise-compatibility constraint (marginal-only flow), upper bound
// from a greedy (xi, S) certificate.
std::pair<double, double> box_distance_bounds(const FiniteMMSpace& X,
                                              const FiniteMMSpace& Y);

struct MmIsoReport {
  bool pass = false;
  bool mass_ok = false, distortion_ok = false, prokhorov_ok = false;
  double mass = 0.0, distortion = 0.0, prokhorov = 0.0;
};

// Evaluates the three epsilon-mm-isomorphism conditions for f with the
// given non-exceptional set.
MmIsoReport mm_iso_check(const FiniteMMSpace& X, const FiniteMMSpace& Y,
                         const Assignment& f, const PointSet& non_exceptional,
                         double epsilon, double tol = kTol);

struct MmIsoWitness {
  Assignment map;
  PointSet non_exceptional;
  double epsilon = 0.0;
};

enum class SearchOutcome { found, none, indeterminate };

struct MmIsoSearchResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<MmIsoWitness> witness;
};

// Searches for an epsilon-mm isomorphism X -> Y. Budget exhaustion is a
// third outcome, never conflated with nonexistence.
MmIsoSearchResult mm_iso_search(const FiniteMMSpace& X, const FiniteMMSpace& Y,
                                double epsilon,
                                std::uint64_t budget = 2'000'000,
                                double tol = kTol);

// Half the minimal distortion over surjective correspondences, by branch
// and bound over candidate thresholds. Requires |X| * |Y| <= 20.
double gh_distance(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

// Definition-level check: does a common embedding with Hausdorff distance
// <= eps exist? Realized by gluing X and Y along witness pairs of length
// eps and verifying the shortest-path metric does not shrink either side.
// Exhaustive over witness-map pairs; tiny instances only.
bool gh_embedding_feasible(const FiniteMetricSpace& X,
                           const FiniteMetricSpace& Y, double eps,
                           double tol = kTol);

// Both epsilon-approximation-map conditions: distortion < eps (strict)
// and the image is an eps-net of the target.
bool approx_map_check(const FiniteMetricSpace& Y, const FiniteMetricSpace& Z,
                      const Assignment& f, double epsilon);

// Searches for an epsilon-approximation map by pruned backtracking.
struct ApproxMapSearchResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<Assignment> witness;
};
ApproxMapSearchResult approx_map_search(const FiniteMetricSpace& Y,
                                        const FiniteMetricSpace& Z,
                                        double epsilon,
                                        std::uint64_t budget = 2'000'000);

// Pointed-GH condition check for a map defined exactly on the closed ball
// B_R(o) in Y: distortion < eps on the ball and the eps-neighborhood of
// the image covers B_{R-eps}(o_n). `f` uses -1 outside the ball.
struct PghReport {
  bool pass = false;
  bool distortion_ok = false, covering_ok = false;
  double distortion = 0.0;
  int uncovered_witness = -1;
};
PghReport pgh_check(const PointedMetricSpace& Y, const PointedMetricSpace& Yn,
                    const Assignment& f, double R, double epsilon);

}  // namespace mms
