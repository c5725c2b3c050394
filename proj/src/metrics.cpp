#include "mms/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

namespace mms {

namespace detail {

double bipartite_max_flow(const std::vector<double>& mu,
                          const std::vector<double>& nu,
                          const std::vector<std::vector<char>>& allowed) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  const int N = n + m + 2;
  const int s = 0, t = N - 1;
  // cap[u][v]: residual capacities; sources are 1..n, targets n+1..n+m.
  std::vector<std::vector<double>> cap(N, std::vector<double>(N, 0.0));
  for (int i = 0; i < n; ++i) cap[s][1 + i] = mu[i];
  for (int j = 0; j < m; ++j) cap[1 + n + j][t] = nu[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (allowed[i][j]) cap[1 + i][1 + n + j] = 2.0;

  constexpr double kFlowEps = 1e-13;
  double flow = 0.0;
  while (true) {
    std::vector<int> prev(N, -1);
    prev[s] = s;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && prev[t] < 0) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < N; ++v)
        if (prev[v] < 0 && cap[u][v] > kFlowEps) {
          prev[v] = u;
          q.push(v);
        }
    }
    if (prev[t] < 0) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = t; v != s; v = prev[v]) push = std::min(push, cap[prev[v]][v]);
    for (int v = t; v != s; v = prev[v]) {
      cap[prev[v]][v] -= push;
      cap[v][prev[v]] += push;
    }
    flow += push;
  }
  return flow;
}

namespace {

struct CliqueSearch {
  const std::vector<std::uint64_t>& adj;  // over reordered vertices
  const std::vector<double>& weight;      // reordered, descending
  double target;
  bool found = false;

  void run(std::uint64_t cand, double cur, double remaining) {
    if (found || cur + remaining < target) return;
    if (cur >= target) {
      found = true;
      return;
    }
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      // weights are sorted descending, so the remaining bound shrinks
      double rem = 0.0;
      for (std::uint64_t c = cand & adj[v]; c; c &= c - 1)
        rem += weight[std::countr_zero(c)];
      run(cand & adj[v], cur + weight[v], rem);
      if (found) return;
      remaining -= weight[v];
      if (cur + weight[v] + remaining < target) return;
    }
  }
};

}  // namespace

bool weight_clique_at_least(const std::vector<std::vector<char>>& adjacent,
                            const std::vector<double>& weight, double target,
                            double tol) {
  const int n = static_cast<int>(weight.size());
  if (n > 64) throw std::invalid_argument("clique search limited to 64 points");
  const double goal = target - tol;
  if (goal <= 0.0) return true;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return weight[a] > weight[b]; });
  std::vector<double> w(n);
  std::vector<std::uint64_t> adj(n, 0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = weight[order[i]];
    total += w[i];
    for (int j = 0; j < n; ++j)
      if (i != j && adjacent[order[i]][order[j]]) adj[i] |= 1ull << j;
  }
  if (total < goal) return false;
  CliqueSearch cs{adj, w, goal};
  cs.run(n == 64 ? ~0ull : ((1ull << n) - 1), 0.0, total);
  return cs.found;
}

}  // namespace detail

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("kappa must lie in (0,1)");
}

// Candidate diameters: 0 plus the distinct pairwise distances of the atoms.
std::vector<double> diameter_candidates(const FiniteMetricSpace& space,
                                        const std::vector<int>& pts) {
  std::vector<double> c{0.0};
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b)
      c.push_back(space.d(pts[a], pts[b]));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

bool threshold_feasible(const FiniteMetricSpace& space,
                        const std::vector<int>& pts,
                        const std::vector<double>& w, double diam_bound,
                        double target, double tol) {
  const int k = static_cast<int>(pts.size());
  std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      adj[a][b] = (a != b && space.d(pts[a], pts[b]) <= diam_bound);
  return detail::weight_clique_at_least(adj, w, target, tol);
}

}  // namespace

double partial_diameter_atoms(const FiniteMetricSpace& space,
                              const std::vector<std::pair<int, double>>& atoms,
                              double kappa, double tol) {
  check_kappa(kappa);
  std::vector<int> pts;
  std::vector<double> w;
  for (const auto& [p, m] : atoms)
    if (m > 0.0) {
      pts.push_back(p);
      w.push_back(m);
    }
  const double target = 1.0 - kappa;
  if (pts.empty()) return 0.0;
  const std::vector<double> cands = diameter_candidates(space, pts);
  // Feasibility is monotone in the candidate diameter.
  int lo = 0, hi = static_cast<int>(cands.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (threshold_feasible(space, pts, w, cands[mid], target, tol))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cands[lo];
}

double partial_diameter(const FiniteMetricSpace& space,
                        const ProbabilityWeights& mu, double kappa,
                        double tol) {
  if (mu.size() != space.size())
    throw std::invalid_argument("measure size mismatch");
  std::vector<std::pair<int, double>> atoms;
  for (int i = 0; i < mu.size(); ++i)
    if (mu[i] > 0.0) atoms.emplace_back(i, mu[i]);
  return partial_diameter_atoms(space, atoms, kappa, tol);
}

PartialDiameterResult partial_diameter_witness(const FiniteMetricSpace& space,
                                               const ProbabilityWeights& mu,
                                               double kappa, double tol) {
  PartialDiameterResult res;
  res.value = partial_diameter(space, mu, kappa, tol);
  const double target = 1.0 - kappa;
  std::vector<int> pts;
  for (int i = 0; i < mu.size(); ++i)
    if (mu[i] > 0.0) pts.push_back(i);

  // Greedy lexicographic extension: an index joins the witness iff some
  // feasible subset of diameter <= value still contains everything chosen.
  PointSet chosen;
  double chosen_mass = 0.0;
  for (int i : pts) {
    if (chosen_mass >= target - tol) break;
    bool compat = true;
    for (int c : chosen)
      if (space.d(c, i) > res.value) compat = false;
    if (!compat) continue;
    std::vector<int> ext_pts;
    std::vector<double> ext_w;
    for (int p : pts) {
      if (p <= i) continue;
      bool ok = space.d(p, i) <= res.value;
      for (int c : chosen) ok = ok && space.d(c, p) <= res.value;
      if (ok) {
        ext_pts.push_back(p);
        ext_w.push_back(mu[p]);
      }
    }
    const double need = target - chosen_mass - mu[i];
    if (need <= tol ||
        threshold_feasible(space, ext_pts, ext_w, res.value, need, tol)) {
      chosen.push_back(i);
      chosen_mass += mu[i];
    }
  }
  res.witness = std::move(chosen);
  return res;
}

double partial_diameter_oracle(const FiniteMetricSpace& space,
                               const ProbabilityWeights& mu, double kappa,
                               double tol) {
  check_kappa(kappa);
  std::vector<int> pts;
  for (int i = 0; i < mu.size(); ++i)
    if (mu[i] > 0.0) pts.push_back(i);
  const int n = static_cast<int>(pts.size());
  if (n > 20)
    throw std::invalid_argument("partial_diameter_oracle refuses n > 20");
  const double target = 1.0 - kappa - tol;
  const std::uint32_t full = n ? ((n == 32 ? 0u : (1u << n)) - 1u) : 0u;
  std::vector<double> diam(full + 1, 0.0), mass(full + 1, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int low = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    double d = diam[rest];
    for (std::uint32_t r = rest; r; r &= r - 1)
      d = std::max(d, space.d(pts[low], pts[std::countr_zero(r)]));
    diam[s] = d;
    mass[s] = mass[rest] + mu[pts[low]];
    if (mass[s] >= target) best = std::min(best, d);
  }
  return std::isinf(best) ? 0.0 : best;
}

double prokhorov(const FiniteMetricSpace& space, const ProbabilityWeights& mu,
                 const ProbabilityWeights& nu, double tol) {
  (void)tol;
  if (mu.size() != space.size() || nu.size() != space.size())
    throw std::invalid_argument("measures must live on the given space");
  const int n = space.size();
  std::vector<double> cands{0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cands.push_back(space.d(i, j));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  auto deficiency = [&](double eps) {
    std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) allowed[i][j] = space.d(i, j) <= eps + 1e-12;
    // Mass that cannot be coupled within distance eps.
    return 1.0 - detail::bipartite_max_flow(mu.w(), nu.w(), allowed);
  };

  // deficiency is non-increasing, candidates increase: binary search the
  // first candidate where deficiency <= candidate.
  int lo = 0, hi = static_cast<int>(cands.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (deficiency(cands[mid]) <= cands[mid] + 1e-12)
      hi = mid;
    else
      lo = mid + 1;
  }
  double best = std::max(cands[lo], deficiency(cands[lo]));
  if (lo > 0) best = std::min(best, deficiency(cands[lo - 1]));
  return best;
}

double prokhorov_oracle(const FiniteMetricSpace& space,
                        const ProbabilityWeights& mu,
                        const ProbabilityWeights& nu) {
  const int n = space.size();
  if (n > 12) throw std::invalid_argument("prokhorov_oracle refuses n > 12");
  if (mu.size() != n || nu.size() != n)
    throw std::invalid_argument("measures must live on the given space");

  double worst = 0.0;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t A = 1; A <= full; ++A) {
    double nuA = 0.0;
    std::vector<std::pair<double, double>> by_dist;  // (d(y,A), mu(y))
    for (int y = 0; y < n; ++y) {
      double dy = std::numeric_limits<double>::infinity();
      for (std::uint32_t r = A; r; r &= r - 1)
        dy = std::min(dy, space.d(y, std::countr_zero(r)));
      by_dist.emplace_back(dy, mu[y]);
      if (A & (1u << y)) nuA += nu[y];
    }
    std::sort(by_dist.begin(), by_dist.end());
    // Thresholds t_j with cumulative masses M_j = mu({d(.,A) <= t_j}).
    std::vector<double> t{0.0}, M{0.0};
    double acc = 0.0;
    for (const auto& [dy, w] : by_dist) {
      acc += w;
      if (dy != t.back()) {
        t.push_back(dy);
        M.push_back(acc);
      } else {
        M.back() = acc;
      }
    }
    double epsA = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < t.size(); ++j) {
      const double gap = nuA - M[j];
      const double next =
          j + 1 < t.size() ? t[j + 1] : std::numeric_limits<double>::infinity();
      if (gap <= next) epsA = std::min(epsA, std::max(t[j], gap));
    }
    worst = std::max(worst, std::max(0.0, epsA));
  }
  return worst;
}

double ky_fan(const FiniteMetricSpace& target, const ProbabilityWeights& mu,
              const std::vector<int>& f, const std::vector<int>& g) {
  if (f.size() != g.size() || static_cast<int>(f.size()) != mu.size())
    throw std::invalid_argument("ky_fan: map/measure size mismatch");
  std::vector<std::pair<double, double>> e;  // (discrepancy, mass)
  for (int i = 0; i < mu.size(); ++i)
    e.emplace_back(target.d(f[i], g[i]), mu[i]);
  std::sort(e.begin(), e.end());
  std::vector<double> v{0.0}, tail;  // tail[j] = mass{disc > v[j]}
  for (const auto& [d, w] : e)
    if (d > v.back()) v.push_back(d);
  tail.assign(v.size(), 0.0);
  for (size_t j = 0; j < v.size(); ++j)
    for (const auto& [d, w] : e)
      if (d > v[j]) tail[j] += w;
  double best = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < v.size(); ++j) {
    const double cand = std::max(v[j], tail[j]);
    const double next =
        j + 1 < v.size() ? v[j + 1] : std::numeric_limits<double>::infinity();
    if (cand < next) best = std::min(best, cand);
  }
  return best;
}

double hausdorff_subsets(const FiniteMetricSpace& space, const PointSet& A,
                         const PointSet& B) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("hausdorff_subsets requires nonempty subsets");
  auto directed = [&](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (int a : from) {
      double dmin = std::numeric_limits<double>::infinity();
      for (int b : to) dmin = std::min(dmin, space.d(a, b));
      worst = std::max(worst, dmin);
    }
    return worst;
  };
  return std::max(directed(A, B), directed(B, A));
}

}  // namespace mms
