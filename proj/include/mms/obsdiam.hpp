// Observable diameters over enumerated or branch-and-bound-searched map
// families, the delta-error variants with their limits, range
// restriction, and a certified grid enclosure for the real-line screen.
#pragma once

#include "mms/lipmaps.hpp"
#include "mms/space.hpp"

namespace mms {

enum class Variant { plain, delta, tilde_delta };

std::string variant_name(Variant v);

struct ObsDiamOptions {
  double tol = kTol;
  std::uint64_t node_budget = 400'000'000;
  std::uint64_t enum_budget = 2'000'000;
};

struct ObsDiamResult {
  double value = 0.0;
  Assignment witness;  // a maximizing map
};

// sup over the selected family of partial_diameter(pushforward(f), kappa).
// plain/delta variants run a branch and bound over partial assignments;
// the tilde variant enumerates with exceptional-mass pruning. The
// supremum is attained (finite family; constants always belong).
ObsDiamResult obsdiam(const FiniteMMSpace& X, const FiniteMetricSpace& Y,
                      double kappa, double delta, Variant variant,
                      const std::optional<RangeRestriction>& range = {},
                      const ObsDiamOptions& opts = {});

// Reference path: full family enumeration, maps scanned in sorted order,
// first maximizer kept (lexicographically smallest witness).
ObsDiamResult obsdiam_enumerated(const FiniteMMSpace& X,
                                 const FiniteMetricSpace& Y, double kappa,
                                 double delta, Variant variant,
                                 const std::optional<RangeRestriction>& range = {},
                                 const ObsDiamOptions& opts = {});

struct ObsDiamPlusResult {
  std::vector<double> values;  // along the schedule
  double limit = 0.0;          // last value
  bool stabilized = false;     // consecutive difference below tolerance
};

// Values of the delta-error observable diameter along a schedule
// decreasing to 0; checks monotonicity and reports the extrapolated
// limit with a stabilization flag.
ObsDiamPlusResult obsdiam_plus(const FiniteMMSpace& X,
                               const FiniteMetricSpace& Y, double kappa,
                               const std::vector<double>& delta_schedule,
                               Variant variant = Variant::tilde_delta,
                               const ObsDiamOptions& opts = {});

struct RealLineEnclosure {
  double grid_value = 0.0;  // observable diameter against the grid screen
  double lower = 0.0;       // grid_value - 2h
  double upper = 0.0;       // grid_value + 2h
  bool range_may_bind = false;  // R < Diam(X)
};

// Certified enclosure of the observable diameter over the segment screen
// [-R, R]: computes against the grid {-R, -R+h, ..., R} with the
// Lip_1^h family (grid rounding of a 1-Lipschitz real map has defect
// <= h) and widens by 2h on each side.
RealLineEnclosure obsdiam_realline(const FiniteMMSpace& X, double kappa,
                                   double R, double h,
                                   const ObsDiamOptions& opts = {});

}  // namespace mms
