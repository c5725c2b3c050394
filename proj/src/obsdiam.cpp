#include "mms/obsdiam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mms/metrics.hpp"

namespace mms {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::delta: return "delta";
    case Variant::tilde_delta: return "tilde_delta";
  }
  return "?";
}

namespace {

double map_objective(const FiniteMMSpace& X, const FiniteMetricSpace& Y,
                     const Assignment& f, double kappa, double tol) {
  std::vector<double> w(Y.size(), 0.0);
  for (int i = 0; i < X.size(); ++i) w[f[i]] += X.mu()[i];
  std::vector<std::pair<int, double>> atoms;
  for (int y = 0; y < Y.size(); ++y)
    if (w[y] > 0.0) atoms.emplace_back(y, w[y]);
  return partial_diameter_atoms(Y, atoms, kappa, tol);
}

// Branch and bound for the plain/delta variants. Points are assigned in a
// most-constrained static order; each unassigned point keeps a bitmask of
// targets still compatible with the partial assignment. The optimistic
// bound is the diameter of (assigned images) union (feasible targets of
// unassigned points), which dominates the partial diameter of any
// completion.
struct ObsDiamBnB {
  const FiniteMMSpace& X;
  const FiniteMetricSpace& Y;
  double kappa, delta, tol;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  std::vector<int> order;
  Assignment assign;
  std::uint64_t assigned_images = 0;
  double best = -1.0;
  Assignment best_assign;

  void run(size_t depth, const std::vector<std::uint64_t>& feas) {
    if (++nodes > budget)
      throw BudgetExceeded("obsdiam branch-and-bound budget exceeded");
    if (depth == order.size()) {
      const double v = map_objective(X, Y, assign, kappa, tol);
      if (v > best) {
        best = v;
        best_assign = assign;
      }
      return;
    }
    if (!improvable(depth, feas)) return;
    const int x = order[depth];
    for (int y = 0; y < Y.size(); ++y) {
      if (!(feas[x] >> y & 1ull)) continue;
      assign[x] = y;
      std::vector<std::uint64_t> next = feas;
      bool dead = false;
      for (size_t k = depth + 1; k < order.size() && !dead; ++k) {
        const int u = order[k];
        std::uint64_t allowed = 0;
        const double cap = X.space().d(x, u) + delta + tol;
        for (int b = 0; b < Y.size(); ++b)
          if (Y.d(y, b) <= cap) allowed |= 1ull << b;
        next[u] &= allowed;
        if (!next[u]) dead = true;
      }
      const std::uint64_t saved = assigned_images;
      assigned_images |= 1ull << y;
      if (!dead) run(depth + 1, next);
      assigned_images = saved;
      assign[x] = -1;
    }
  }

  bool improvable(size_t depth, const std::vector<std::uint64_t>& feas) {
    if (best < 0.0) return true;  // no incumbent yet
    std::uint64_t u = assigned_images;
    for (size_t k = depth; k < order.size(); ++k) u |= feas[order[k]];
    // diameter of the candidate image set, with early exit once it
    // already exceeds the incumbent
    for (std::uint64_t a = u; a; a &= a - 1) {
      const int i = std::countr_zero(a);
      for (std::uint64_t b = a & (a - 1); b; b &= b - 1)
        if (Y.d(i, std::countr_zero(b)) > best) return true;
    }
    return false;
  }
};

std::vector<int> bnb_order(const FiniteMMSpace& X) {
  const int n = X.size();
  std::vector<double> ecc(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ecc[i] = std::max(ecc[i], X.space().d(i, j));
  std::vector<int> order;
  std::vector<char> used(n, 0);
  int first = 0;
  for (int i = 1; i < n; ++i)
    if (ecc[i] > ecc[first]) first = i;
  order.push_back(first);
  used[first] = 1;
  while (static_cast<int>(order.size()) < n) {
    int pick = -1;
    double pick_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      double dmin = std::numeric_limits<double>::infinity();
      for (int j : order) dmin = std::min(dmin, X.space().d(i, j));
      if (dmin < pick_d) {
        pick_d = dmin;
        pick = i;
      }
    }
    order.push_back(pick);
    used[pick] = 1;
  }
  return order;
}

}  // namespace

ObsDiamResult obsdiam_enumerated(const FiniteMMSpace& X,
                                 const FiniteMetricSpace& Y, double kappa,
                                 double delta, Variant variant,
                                 const std::optional<RangeRestriction>& range,
                                 const ObsDiamOptions& opts) {
  const FamilyMode mode = variant == Variant::tilde_delta ? FamilyMode::relaxed
                                                          : FamilyMode::exact;
  const double d = variant == Variant::plain ? 0.0 : delta;
  EnumerationOptions eo;
  eo.tol = opts.tol;
  eo.node_budget = opts.enum_budget;
  const MapFamily family = enumerate_family(X, Y, d, mode, range, eo);
  if (family.empty())
    throw std::logic_error("empty map family (constants always belong)");
  ObsDiamResult res;
  res.value = -1.0;
  for (const Assignment& f : family) {
    const double v = map_objective(X, Y, f, kappa, opts.tol);
    if (v > res.value) {
      res.value = v;
      res.witness = f;
    }
  }
  return res;
}

ObsDiamResult obsdiam(const FiniteMMSpace& X, const FiniteMetricSpace& Y,
                      double kappa, double delta, Variant variant,
                      const std::optional<RangeRestriction>& range,
                      const ObsDiamOptions& opts) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("kappa must lie in (0,1)");
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (variant == Variant::tilde_delta || Y.size() > 64)
    return obsdiam_enumerated(X, Y, kappa, delta, variant, range, opts);

  ObsDiamBnB bnb{X, Y, kappa, variant == Variant::plain ? 0.0 : delta,
                 opts.tol, opts.node_budget};
  bnb.order = bnb_order(X);
  bnb.assign.assign(X.size(), -1);
  std::uint64_t all = Y.size() == 64 ? ~0ull : (1ull << Y.size()) - 1ull;
  if (range) {
    std::uint64_t in_range = 0;
    for (int y = 0; y < Y.size(); ++y)
      if (Y.d(range->basepoint, y) < range->radius) in_range |= 1ull << y;
    all = in_range;
    if (!all) throw std::invalid_argument("range restriction excludes every target");
  }
  bnb.run(0, std::vector<std::uint64_t>(X.size(), all));
  return {bnb.best, bnb.best_assign};
}

ObsDiamPlusResult obsdiam_plus(const FiniteMMSpace& X,
                               const FiniteMetricSpace& Y, double kappa,
                               const std::vector<double>& delta_schedule,
                               Variant variant, const ObsDiamOptions& opts) {
  if (delta_schedule.empty())
    throw std::invalid_argument("empty delta schedule");
  for (size_t i = 0; i + 1 < delta_schedule.size(); ++i)
    if (!(delta_schedule[i + 1] < delta_schedule[i]))
      throw std::invalid_argument("delta schedule must be strictly decreasing");
  if (!(delta_schedule.back() >= 0.0))
    throw std::invalid_argument("delta schedule must stay nonnegative");

  ObsDiamPlusResult res;
  for (double d : delta_schedule)
    res.values.push_back(obsdiam(X, Y, kappa, d, variant, {}, opts).value);
  for (size_t i = 0; i + 1 < res.values.size(); ++i)
    if (res.values[i + 1] > res.values[i] + opts.tol)
      throw std::logic_error("delta-error observable diameter failed to be "
                             "monotone along the schedule");
  res.limit = res.values.back();
  res.stabilized =
      res.values.size() < 2 ||
      std::abs(res.values.back() - res.values[res.values.size() - 2]) <
          opts.tol;
  return res;
}

RealLineEnclosure obsdiam_realline(const FiniteMMSpace& X, double kappa,
                                   double R, double h,
                                   const ObsDiamOptions& opts) {
  if (!(h > 0.0)) throw std::invalid_argument("grid mesh must be positive");
  const int K = static_cast<int>(std::llround(R / h));
  if (std::abs(K * h - R) > 1e-9)
    throw std::invalid_argument("h must divide R");
  std::vector<std::string> labels;
  std::vector<double> coord;
  for (int k = -K; k <= K; ++k) coord.push_back(k * h);
  std::vector<std::vector<double>> dist(coord.size(),
                                        std::vector<double>(coord.size()));
  for (size_t i = 0; i < coord.size(); ++i) {
    labels.push_back("t" + std::to_string(i));
    for (size_t j = 0; j < coord.size(); ++j)
      dist[i][j] = std::abs(coord[i] - coord[j]);
  }
  const FiniteMetricSpace grid(std::move(labels), std::move(dist));

  RealLineEnclosure enc;
  enc.range_may_bind = R < X.space().diameter() - opts.tol;
  enc.grid_value = obsdiam(X, grid, kappa, h, Variant::delta, {}, opts).value;
  enc.lower = enc.grid_value - 2.0 * h;
  enc.upper = enc.grid_value + 2.0 * h;
  return enc;
}

}  // namespace mms
