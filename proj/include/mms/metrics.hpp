// Base distances on measures, maps and subsets: partial diameter,
// Prokhorov, Ky Fan, Hausdorff. Each nontrivial computation has an
// independent brute-force oracle used by the tests; the oracles stay
// definition-level and never share code with the fast path.
#pragma once

#include "mms/space.hpp"

namespace mms {

// Least diameter of a subset carrying mass >= 1-kappa.
// Decided per candidate diameter by a max-weight-clique search on the
// threshold graph; the least feasible candidate is returned.
// Accepts measures with zero-weight points (push-forwards).
double partial_diameter(const FiniteMetricSpace& space,
                        const ProbabilityWeights& mu, double kappa,
                        double tol = kTol);

// Same value plus the lexicographically smallest witnessing subset.
struct PartialDiameterResult {
  double value = 0.0;
  PointSet witness;
};
PartialDiameterResult partial_diameter_witness(const FiniteMetricSpace& space,
                                               const ProbabilityWeights& mu,
                                               double kappa, double tol = kTol);

// Partial diameter of a sparse measure given as (point, mass) atoms on
// `space`. Masses need not sum to 1 beyond validation done by callers.
double partial_diameter_atoms(const FiniteMetricSpace& space,
                              const std::vector<std::pair<int, double>>& atoms,
                              double kappa, double tol = kTol);

// Exhaustive minimum over all 2^n subsets; refuses n > 20.
double partial_diameter_oracle(const FiniteMetricSpace& space,
                               const ProbabilityWeights& mu, double kappa,
                               double tol = kTol);

// Prokhorov distance via coupling feasibility decided by maximum flow on
// the bipartite mass graph restricted to pairs with d <= eps.
double prokhorov(const FiniteMetricSpace& space, const ProbabilityWeights& mu,
                 const ProbabilityWeights& nu, double tol = kTol);

// Direct subset-enumeration infimum (the definition); refuses n > 12.
double prokhorov_oracle(const FiniteMetricSpace& space,
                        const ProbabilityWeights& mu,
                        const ProbabilityWeights& nu);

// Least eps >= 0 with mu({z : d_Y(f(z), g(z)) > eps}) <= eps.
double ky_fan(const FiniteMetricSpace& target, const ProbabilityWeights& mu,
              const std::vector<int>& f, const std::vector<int>& g);

// Hausdorff distance between nonempty subsets of one space (max-min form).
double hausdorff_subsets(const FiniteMetricSpace& space, const PointSet& A,
                         const PointSet& B);

namespace detail {

// Maximum flow between marginals mu and nu over the allowed bipartite
// edges. `allowed[i][j]` marks usable source-target pairs.
double bipartite_max_flow(const std::vector<double>& mu,
                          const std::vector<double>& nu,
                          const std::vector<std::vector<char>>& allowed);

// Decides whether the threshold graph (edges where adjacency holds) has a
// clique of total weight >= target - tol. Vertex count <= 64.
bool weight_clique_at_least(const std::vector<std::vector<char>>& adjacent,
                            const std::vector<double>& weight, double target,
                            double tol);

}  // namespace detail

}  // namespace mms
