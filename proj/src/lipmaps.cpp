#include "mms/lipmaps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "mms/metrics.hpp"

namespace mms {

double lipschitz_defect(const FiniteMetricSpace& source,
                        const FiniteMetricSpace& target, const Assignment& f) {
  if (static_cast<int>(f.size()) != source.size())
    throw std::invalid_argument("assignment length mismatch");
  double worst = 0.0;
  for (int i = 0; i < source.size(); ++i)
    for (int j = i + 1; j < source.size(); ++j)
      worst = std::max(worst, target.d(f[i], f[j]) - source.d(i, j));
  return std::max(0.0, worst);
}

namespace {

// Minimum-mass vertex cover of the conflict graph, exact branch and
// bound with highest-degree-first branching. n <= 25.
struct CoverSearch {
  const std::vector<std::uint32_t>& adj;
  const std::vector<double>& w;
  double best_mass = std::numeric_limits<double>::infinity();
  std::uint32_t best_cover = 0;

  void run(std::uint32_t active, std::uint32_t cover, double mass) {
    if (mass >= best_mass) return;
    int pick = -1, pick_deg = 0;
    for (std::uint32_t a = active; a; a &= a - 1) {
      const int v = std::countr_zero(a);
      const int deg = std::popcount(adj[v] & active);
      if (deg > pick_deg) {
        pick_deg = deg;
        pick = v;
      }
    }
    if (pick < 0) {  // no edges left
      best_mass = mass;
      best_cover = cover;
      return;
    }
    // include pick
    run(active & ~(1u << pick), cover | (1u << pick), mass + w[pick]);
    // exclude pick: all of its active neighbors join the cover
    std::uint32_t nb = adj[pick] & active;
    double nb_mass = 0.0;
    for (std::uint32_t a = nb; a; a &= a - 1) nb_mass += w[std::countr_zero(a)];
    run(active & ~(1u << pick) & ~nb, cover | nb, mass + nb_mass);
  }
};

std::vector<std::uint32_t> conflict_graph(const FiniteMetricSpace& source,
                                          const FiniteMetricSpace& target,
                                          const Assignment& f, double delta,
                                          double tol) {
  const int n = source.size();
  std::vector<std::uint32_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (target.d(f[i], f[j]) - source.d(i, j) > delta + tol) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
  return adj;
}

}  // namespace

namespace detail {

std::pair<double, std::uint32_t> min_mass_vertex_cover(
    const std::vector<std::uint32_t>& adj, const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  if (n > 25)
    throw std::invalid_argument("min_mass_vertex_cover refuses n > 25");
  CoverSearch cs{adj, w};
  cs.run(n ? (1u << n) - 1u : 0u, 0u, 0.0);
  return {cs.best_mass == std::numeric_limits<double>::infinity() ? 0.0
                                                                  : cs.best_mass,
          cs.best_cover};
}

}  // namespace detail

std::optional<LipschitzWitness> almost_lipschitz_witness(
    const FiniteMMSpace& source, const FiniteMetricSpace& target,
    const Assignment& f, double delta, double tol) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  const int n = source.size();
  if (n > 25)
    throw std::invalid_argument("almost_lipschitz_witness refuses n > 25");
  const std::vector<std::uint32_t> adj =
      conflict_graph(source.space(), target, f, delta, tol);
  const auto [mass, cover] = detail::min_mass_vertex_cover(adj, source.mu().w());
  if (mass > delta + tol) return std::nullopt;
  LipschitzWitness wit;
  wit.delta = delta;
  for (int i = 0; i < n; ++i)
    if (!(cover & (1u << i))) wit.non_exceptional.push_back(i);
  return wit;
}

namespace {

struct FamilyEnum {
  const FiniteMMSpace& X;
  const FiniteMetricSpace& Y;
  double delta;
  FamilyMode mode;
  const std::optional<RangeRestriction>& range;
  double tol;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  std::vector<int> order;  // points in decreasing eccentricity
  Assignment assign;       // by original index, -1 if unassigned
  MapFamily out;

  void search(size_t depth) {
    if (++nodes > budget)
      throw BudgetExceeded("enumeration budget exceeded after " +
                           std::to_string(nodes) + " nodes");
    if (depth == order.size()) {
      if (mode == FamilyMode::relaxed &&
          !almost_lipschitz_witness(X, Y, assign, delta, tol))
        return;
      out.push_back(assign);
      return;
    }
    const int x = order[depth];
    for (int y = 0; y < Y.size(); ++y) {
      if (range && !(Y.d(range->basepoint, y) < range->radius)) continue;
      assign[x] = y;
      if (admissible(depth, x)) search(depth + 1);
      assign[x] = -1;
    }
  }

  bool admissible(size_t depth, int x) {
    if (mode == FamilyMode::exact) {
      for (size_t k = 0; k < depth; ++k) {
        const int z = order[k];
        if (Y.d(assign[x], assign[z]) - X.space().d(x, z) > delta + tol)
          return false;
      }
      return true;
    }
    // relaxed: a greedy matching over conflict pairs lower-bounds the
    // exceptional mass; prune when it already exceeds delta
    std::uint32_t used = 0;
    double lb = 0.0;
    for (size_t a = 0; a <= depth; ++a)
      for (size_t b = a + 1; b <= depth; ++b) {
        const int u = order[a], v = order[b];
        if ((used >> a & 1u) || (used >> b & 1u)) continue;
        if (Y.d(assign[u], assign[v]) - X.space().d(u, v) > delta + tol) {
          used |= (1u << a) | (1u << b);
          lb += std::min(X.mu()[u], X.mu()[v]);
        }
      }
    return lb <= delta + tol;
  }
};

}  // namespace

MapFamily enumerate_family(const FiniteMMSpace& source,
                           const FiniteMetricSpace& target, double delta,
                           FamilyMode mode,
                           const std::optional<RangeRestriction>& range,
                           const EnumerationOptions& opts) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  const int n = source.size();
  FamilyEnum fe{source, target, delta, mode, range, opts.tol,
                opts.node_budget};
  fe.order.resize(n);
  std::iota(fe.order.begin(), fe.order.end(), 0);
  std::vector<double> ecc(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ecc[i] = std::max(ecc[i], source.space().d(i, j));
  std::stable_sort(fe.order.begin(), fe.order.end(),
                   [&](int a, int b) { return ecc[a] > ecc[b]; });
  fe.assign.assign(n, -1);
  fe.search(0);
  std::sort(fe.out.begin(), fe.out.end());
  fe.out.erase(std::unique(fe.out.begin(), fe.out.end()), fe.out.end());
  return fe.out;
}

double hausdorff_kyfan_families(const FiniteMetricSpace& target,
                                const ProbabilityWeights& mu,
                                const MapFamily& F, const MapFamily& G) {
  if (F.empty() || G.empty())
    throw std::invalid_argument("families must be nonempty");
  auto directed = [&](const MapFamily& from, const MapFamily& to) {
    double worst = 0.0;
    for (const Assignment& f : from) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const Assignment& g : to)
        dmin = std::min(dmin, ky_fan(target, mu, f, g));
      worst = std::max(worst, dmin);
    }
    return worst;
  };
  return std::max(directed(F, G), directed(G, F));
}

Assignment nearest_point_map(const FiniteMetricSpace& space,
                             const PointSet& N) {
  if (N.empty()) throw std::invalid_argument("nearest_point_map: empty subset");
  Assignment pi(space.size(), -1);
  for (int x = 0; x < space.size(); ++x) {
    int best = N.front();
    for (int y : N)
      if (space.d(x, y) < space.d(x, best)) best = y;
    pi[x] = best;
  }
  for (int y : N) pi[y] = y;
  return pi;
}

double doubling_exponent(const FiniteMMSpace& mm) {
  const int n = mm.size();
  std::vector<double> radii;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      radii.push_back(mm.space().d(i, j));
      radii.push_back(mm.space().d(i, j) / 2.0);
    }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  auto ball_mass = [&](int x, double r) {
    double s = 0.0;
    for (int y = 0; y < n; ++y)
      if (mm.space().d(x, y) <= r) s += mm.mu()[y];
    return s;
  };
  double worst_ratio = 1.0;
  for (int x = 0; x < n; ++x)
    for (double r : radii)
      worst_ratio =
          std::max(worst_ratio, ball_mass(x, 2.0 * r) / ball_mass(x, r));
  return std::log2(worst_ratio);
}

PointSet separated_net(const FiniteMetricSpace& space, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  PointSet net;
  for (int x = 0; x < space.size(); ++x) {
    bool ok = true;
    for (int y : net)
      if (space.d(x, y) < eta) ok = false;
    if (ok) net.push_back(x);
  }
  return net;
}

GapBoundResult nearest_gap_bound_check(const FiniteMMSpace& mm, double delta,
                                       const PointSet& subset, double tol) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  double mass = 0.0;
  for (int i : subset) mass += mm.mu()[i];
  if (mass < 1.0 - delta - tol)
    throw std::invalid_argument("subset mass below 1 - delta");
  const Assignment pi = nearest_point_map(mm.space(), subset);
  GapBoundResult res;
  for (int x = 0; x < mm.size(); ++x) {
    const double gap = mm.space().d(x, pi[x]);
    if (gap > res.worst_gap) {
      res.worst_gap = gap;
      res.witness = x;
    }
  }
  const double N = doubling_exponent(mm);
  const double D = mm.space().diameter();
  res.bound = delta <= 0.0 || N <= 0.0
                  ? (delta <= 0.0 ? 0.0 : 3.0 * D)
                  : 3.0 * D * std::pow(delta, 1.0 / N);
  res.holds = res.worst_gap <= res.bound + tol;
  return res;
}

}  // namespace mms
