#include "mms/couplings.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>

#include "mms/metrics.hpp"

namespace mms {

Coupling::Coupling(std::vector<std::vector<double>> xi,
                   const ProbabilityWeights& mu, const ProbabilityWeights& nu)
    : xi_(std::move(xi)) {
  const int n = mu.size(), m = nu.size();
  if (static_cast<int>(xi_.size()) != n)
    throw std::invalid_argument("coupling row count mismatch");
  for (const auto& row : xi_)
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("coupling column count mismatch");
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      if (xi_[i][j] < -kValidationTol)
        throw std::invalid_argument("coupling has a negative entry");
      s += xi_[i][j];
    }
    if (std::abs(s - mu[i]) > kValidationTol)
      throw std::invalid_argument("coupling row marginal mismatch at " +
                                  std::to_string(i));
  }
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += xi_[i][j];
    if (std::abs(s - nu[j]) > kValidationTol)
      throw std::invalid_argument("coupling column marginal mismatch at " +
                                  std::to_string(j));
  }
}

double Coupling::mass_on(const std::vector<std::pair<int, int>>& S) const {
  double s = 0.0;
  for (const auto& [i, j] : S) s += xi_[i][j];
  return s;
}

Coupling Coupling::product(const ProbabilityWeights& mu,
                           const ProbabilityWeights& nu) {
  std::vector<std::vector<double>> xi(mu.size(),
                                      std::vector<double>(nu.size()));
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < nu.size(); ++j) xi[i][j] = mu[i] * nu[j];
  return Coupling(std::move(xi), mu, nu);
}

double distortion(const std::vector<std::pair<int, int>>& S,
                  const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  double worst = 0.0;
  for (size_t a = 0; a < S.size(); ++a)
    for (size_t b = a; b < S.size(); ++b)
      worst = std::max(worst, std::abs(X.d(S[a].first, S[b].first) -
                                       Y.d(S[a].second, S[b].second)));
  return worst;
}

namespace {

struct CellGrid {
  int n = 0, m = 0;
  std::vector<std::pair<int, int>> cells;  // cell index -> (x, y)
  std::vector<std::vector<double>> pd;     // pairwise cell distortion

  CellGrid(const FiniteMetricSpace& X, const FiniteMetricSpace& Y)
      : n(X.size()), m(Y.size()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) cells.emplace_back(i, j);
    const int c = n * m;
    pd.assign(c, std::vector<double>(c, 0.0));
    for (int u = 0; u < c; ++u)
      for (int v = 0; v < c; ++v)
        pd[u][v] = std::abs(X.d(cells[u].first, cells[v].first) -
                            Y.d(cells[u].second, cells[v].second));
  }

  std::vector<double> thresholds() const {
    std::vector<double> t{0.0};
    for (size_t u = 0; u < cells.size(); ++u)
      for (size_t v = u + 1; v < cells.size(); ++v) t.push_back(pd[u][v]);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  }

  std::vector<std::uint32_t> compat_masks(double t) const {
    const int c = static_cast<int>(cells.size());
    std::vector<std::uint32_t> adj(c, 0);
    for (int u = 0; u < c; ++u)
      for (int v = 0; v < c; ++v)
        if (pd[u][v] <= t + 1e-12) adj[u] |= 1u << v;
    return adj;
  }
};

double flow_on_cells(const CellGrid& g, std::uint32_t S,
                     const ProbabilityWeights& mu,
                     const ProbabilityWeights& nu) {
  std::vector<std::vector<char>> allowed(g.n, std::vector<char>(g.m, 0));
  for (std::uint32_t s = S; s; s &= s - 1) {
    const auto& [i, j] = g.cells[std::countr_zero(s)];
    allowed[i][j] = 1;
  }
  return detail::bipartite_max_flow(mu.w(), nu.w(), allowed);
}

// All maximal cliques via Bron-Kerbosch with pivoting (<= 16 vertices).
void maximal_cliques(const std::vector<std::uint32_t>& adj, std::uint32_t R,
                     std::uint32_t P, std::uint32_t Xm,
                     std::vector<std::uint32_t>& out) {
  if (!P && !Xm) {
    out.push_back(R);
    return;
  }
  std::uint32_t PX = P | Xm;
  const int pivot = std::countr_zero(PX);
  std::uint32_t ext = P & ~adj[pivot];
  for (std::uint32_t e = ext; e; e &= e - 1) {
    const int v = std::countr_zero(e);
    maximal_cliques(adj, R | (1u << v), P & adj[v] & ~(1u << v),
                    Xm & adj[v], out);
    P &= ~(1u << v);
    Xm |= 1u << v;
  }
}

double best_clique_flow(const CellGrid& g, double t,
                        const ProbabilityWeights& mu,
                        const ProbabilityWeights& nu) {
  std::vector<std::uint32_t> adj = g.compat_masks(t);
  for (size_t u = 0; u < adj.size(); ++u) adj[u] &= ~(1u << u);
  std::vector<std::uint32_t> cliques;
  const std::uint32_t all = (1u << g.cells.size()) - 1u;
  maximal_cliques(adj, 0u, all, 0u, cliques);
  double best = 0.0;
  for (std::uint32_t S : cliques) best = std::max(best, flow_on_cells(g, S, mu, nu));
  return best;
}

double minimize_over_thresholds(const std::vector<double>& cands,
                                const std::function<double(double)>& supportable) {
  // supportable mass is nondecreasing in t; binary search the crossing of
  // the deficiency 1 - phi(t) with t itself
  int lo = 0, hi = static_cast<int>(cands.size()) - 1;
  auto deficiency = [&](int k) { return 1.0 - supportable(cands[k]); };
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (deficiency(mid) <= cands[mid] + 1e-12)
      hi = mid;
    else
      lo = mid + 1;
  }
  double best = std::max(cands[lo], deficiency(lo));
  if (lo > 0) best = std::min(best, deficiency(lo - 1));
  return best;
}

}  // namespace

double box_distance_exact(const FiniteMMSpace& X, const FiniteMMSpace& Y) {
  if (X.size() * Y.size() > 16)
    throw std::invalid_argument("box_distance_exact requires |X|*|Y| <= 16");
  const CellGrid g(X.space(), Y.space());
  const std::vector<double> cands = g.thresholds();
  return minimize_over_thresholds(cands, [&](double t) {
    return best_clique_flow(g, t, X.mu(), Y.mu());
  });
}

std::pair<double, double> box_distance_bounds(const FiniteMMSpace& X,
                                              const FiniteMMSpace& Y) {
  const CellGrid g(X.space(), Y.space());
  const int c = static_cast<int>(g.cells.size());
  if (c > 25)
    throw std::invalid_argument("box_distance_bounds limited to 25 cells");
  const std::vector<double> cands = g.thresholds();

  // Lower bound: relax "pairwise compatible" to "compatible with one
  // anchor cell"; every clique lies in some member's star.
  const double lower = minimize_over_thresholds(cands, [&](double t) {
    double best = 0.0;
    for (int a = 0; a < c; ++a) {
      std::uint32_t star = 0;
      for (int u = 0; u < c; ++u)
        if (g.pd[a][u] <= t + 1e-12) star |= 1u << u;
      best = std::max(best, flow_on_cells(g, star, X.mu(), Y.mu()));
    }
    return best;
  });

  // Upper bound: greedy clique certificate per threshold.
  double upper = 1.0;
  std::vector<int> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int u, int v) {
    const double wu = std::min(X.mu()[g.cells[u].first], Y.mu()[g.cells[u].second]);
    const double wv = std::min(X.mu()[g.cells[v].first], Y.mu()[g.cells[v].second]);
    return wu > wv;
  });
  for (double t : cands) {
    std::uint32_t S = 0;
    std::vector<int> chosen;
    for (int u : order) {
      bool ok = true;
      for (int v : chosen) ok = ok && g.pd[u][v] <= t + 1e-12;
      if (ok) {
        chosen.push_back(u);
        S |= 1u << u;
      }
    }
    double dis = 0.0;
    for (size_t a = 0; a < chosen.size(); ++a)
      for (size_t b = a + 1; b < chosen.size(); ++b)
        dis = std::max(dis, g.pd[chosen[a]][chosen[b]]);
    upper = std::min(upper,
                     std::max(dis, 1.0 - flow_on_cells(g, S, X.mu(), Y.mu())));
  }
  return {lower, upper};
}

MmIsoReport mm_iso_check(const FiniteMMSpace& X, const FiniteMMSpace& Y,
                         const Assignment& f, const PointSet& non_exceptional,
                         double epsilon, double tol) {
  MmIsoReport rep;
  rep.mass = X.mu().mass(non_exceptional);
  rep.mass_ok = rep.mass >= 1.0 - epsilon - tol;
  for (size_t a = 0; a < non_exceptional.size(); ++a)
    for (size_t b = a + 1; b < non_exceptional.size(); ++b) {
      const int x1 = non_exceptional[a], x2 = non_exceptional[b];
      rep.distortion = std::max(
          rep.distortion,
          std::abs(X.space().d(x1, x2) - Y.space().d(f[x1], f[x2])));
    }
  rep.distortion_ok = rep.distortion <= epsilon + tol;
  rep.prokhorov = prokhorov(Y.space(), pushforward(f, X.mu(), Y.size()),
                            Y.mu(), tol);
  rep.prokhorov_ok = rep.prokhorov <= epsilon + tol;
  rep.pass = rep.mass_ok && rep.distortion_ok && rep.prokhorov_ok;
  return rep;
}

MmIsoSearchResult mm_iso_search(const FiniteMMSpace& X, const FiniteMMSpace& Y,
                                double epsilon, std::uint64_t budget,
                                double tol) {
  const int n = X.size(), m = Y.size();
  if (n > 25)
    return {SearchOutcome::indeterminate, std::nullopt};
  double total = 1.0;
  for (int i = 0; i < n; ++i) {
    total *= m;
    if (total > static_cast<double>(budget))
      return {SearchOutcome::indeterminate, std::nullopt};
  }
  Assignment f(n, 0);
  while (true) {
    // smallest-mass exceptional set for the distortion condition
    std::vector<std::uint32_t> adj(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(X.space().d(i, j) - Y.space().d(f[i], f[j])) >
            epsilon + tol) {
          adj[i] |= 1u << j;
          adj[j] |= 1u << i;
        }
    const auto [mass, cover] = detail::min_mass_vertex_cover(adj, X.mu().w());
    if (mass <= epsilon + tol) {
      PointSet keep;
      for (int i = 0; i < n; ++i)
        if (!(cover & (1u << i))) keep.push_back(i);
      MmIsoReport rep = mm_iso_check(X, Y, f, keep, epsilon, tol);
      if (rep.pass)
        return {SearchOutcome::found, MmIsoWitness{f, keep, epsilon}};
    }
    int k = n - 1;
    while (k >= 0 && f[k] == m - 1) f[k--] = 0;
    if (k < 0) break;
    ++f[k];
  }
  return {SearchOutcome::none, std::nullopt};
}

namespace {

// Does a pairwise-compatible cell set covering every row and column
// exist at distortion threshold t?
struct CorrespondenceSearch {
  const CellGrid& g;
  double t;
  std::vector<std::pair<int, int>> chosen;

  bool compatible(int x, int y) const {
    const int u = x * g.m + y;
    for (const auto& [cx, cy] : chosen)
      if (g.pd[u][cx * g.m + cy] > t + 1e-12) return false;
    return true;
  }

  bool cover_rows(int x) {
    if (x == g.n) return cover_cols(0);
    for (const auto& [cx, cy] : chosen)
      if (cx == x) return cover_rows(x + 1);
    for (int y = 0; y < g.m; ++y)
      if (compatible(x, y)) {
        chosen.emplace_back(x, y);
        if (cover_rows(x + 1)) return true;
        chosen.pop_back();
      }
    return false;
  }

  bool cover_cols(int y) {
    if (y == g.m) return true;
    for (const auto& [cx, cy] : chosen)
      if (cy == y) return cover_cols(y + 1);
    for (int x = 0; x < g.n; ++x)
      if (compatible(x, y)) {
        chosen.emplace_back(x, y);
        if (cover_cols(y + 1)) return true;
        chosen.pop_back();
      }
    return false;
  }
};

}  // namespace

double gh_distance(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  if (X.size() * Y.size() > 20)
    throw std::invalid_argument("gh_distance requires |X|*|Y| <= 20");
  const CellGrid g(X, Y);
  const std::vector<double> cands = g.thresholds();
  int lo = 0, hi = static_cast<int>(cands.size()) - 1;
  auto feasible = [&](double t) {
    CorrespondenceSearch cs{g, t, {}};
    return cs.cover_rows(0);
  };
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (feasible(cands[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cands[lo] / 2.0;
}

bool gh_embedding_feasible(const FiniteMetricSpace& X,
                           const FiniteMetricSpace& Y, double eps,
                           double tol) {
  const int n = X.size(), m = Y.size();
  double work = std::pow(static_cast<double>(m), n) *
                std::pow(static_cast<double>(n), m);
  if (work > 1e6)
    throw std::invalid_argument("gh_embedding_feasible: instance too large");
  const int N = n + m;
  std::vector<int> sigma(n, 0), tau(m, 0);
  std::vector<std::vector<double>> d(N, std::vector<double>(N));
  auto consistent = [&]() {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        d[i][j] = i == j ? 0.0 : std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = X.d(i, j);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) d[n + i][n + j] = Y.d(i, j);
    for (int i = 0; i < n; ++i)
      d[i][n + sigma[i]] = d[n + sigma[i]][i] = eps;
    for (int j = 0; j < m; ++j)
      d[tau[j]][n + j] = d[n + j][tau[j]] = std::min(d[tau[j]][n + j], eps);
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][j] < X.d(i, j) - tol) return false;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (d[n + i][n + j] < Y.d(i, j) - tol) return false;
    return true;
  };
  while (true) {
    if (consistent()) return true;
    int k = n - 1;
    while (k >= 0 && sigma[k] == m - 1) sigma[k--] = 0;
    if (k >= 0) {
      ++sigma[k];
      continue;
    }
    std::fill(sigma.begin(), sigma.end(), 0);
    k = m - 1;
    while (k >= 0 && tau[k] == n - 1) tau[k--] = 0;
    if (k < 0) return false;
    ++tau[k];
  }
}

bool approx_map_check(const FiniteMetricSpace& Y, const FiniteMetricSpace& Z,
                      const Assignment& f, double epsilon) {
  if (static_cast<int>(f.size()) != Y.size())
    throw std::invalid_argument("assignment length mismatch");
  for (int i = 0; i < Y.size(); ++i)
    for (int j = i + 1; j < Y.size(); ++j)
      if (!(std::abs(Y.d(i, j) - Z.d(f[i], f[j])) < epsilon)) return false;
  for (int z = 0; z < Z.size(); ++z) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < Y.size(); ++i) dmin = std::min(dmin, Z.d(f[i], z));
    if (!(dmin < epsilon)) return false;
  }
  return true;
}

ApproxMapSearchResult approx_map_search(const FiniteMetricSpace& Y,
                                        const FiniteMetricSpace& Z,
                                        double epsilon, std::uint64_t budget) {
  const int n = Y.size(), m = Z.size();
  Assignment f(n, -1);
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::optional<Assignment> witness;
  auto rec = [&](auto&& self, int depth) -> bool {
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (depth == n) {
      if (approx_map_check(Y, Z, f, epsilon)) {
        witness = f;
        return true;
      }
      return false;
    }
    for (int z = 0; z < m; ++z) {
      f[depth] = z;
      bool ok = true;
      for (int j = 0; j < depth && ok; ++j)
        ok = std::abs(Y.d(depth, j) - Z.d(z, f[j])) < epsilon;
      if (ok && self(self, depth + 1)) return true;
      f[depth] = -1;
    }
    return false;
  };
  if (rec(rec, 0)) return {SearchOutcome::found, witness};
  return {exhausted ? SearchOutcome::indeterminate : SearchOutcome::none,
          std::nullopt};
}

PghReport pgh_check(const PointedMetricSpace& Y, const PointedMetricSpace& Yn,
                    const Assignment& f, double R, double epsilon) {
  if (static_cast<int>(f.size()) != Y.space.size())
    throw std::invalid_argument("assignment length mismatch");
  PointSet ball;
  for (int i = 0; i < Y.space.size(); ++i)
    if (Y.space.d(Y.basepoint, i) <= R) ball.push_back(i);
  for (int i = 0; i < Y.space.size(); ++i) {
    const bool in_ball =
        std::find(ball.begin(), ball.end(), i) != ball.end();
    if (in_ball && f[i] < 0)
      throw std::invalid_argument("map must be total on the ball");
    if (!in_ball && f[i] >= 0)
      throw std::invalid_argument("map must be defined exactly on the ball");
  }
  PghReport rep;
  for (size_t a = 0; a < ball.size(); ++a)
    for (size_t b = a + 1; b < ball.size(); ++b)
      rep.distortion = std::max(
          rep.distortion, std::abs(Yn.space.d(f[ball[a]], f[ball[b]]) -
                                   Y.space.d(ball[a], ball[b])));
  rep.distortion_ok = rep.distortion < epsilon;
  rep.covering_ok = true;
  for (int z = 0; z < Yn.space.size(); ++z) {
    if (Yn.space.d(Yn.basepoint, z) > R - epsilon) continue;
    double dmin = std::numeric_limits<double>::infinity();
    for (int b : ball) dmin = std::min(dmin, Yn.space.d(f[b], z));
    if (!(dmin < epsilon)) {
      rep.covering_ok = false;
      rep.uncovered_witness = z;
      break;
    }
  }
  rep.pass = rep.distortion_ok && rep.covering_ok;
  return rep;
}

}  // namespace mms
