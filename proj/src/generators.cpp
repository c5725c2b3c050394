#include "mms/generators.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

namespace mms {

namespace {

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<std::vector<double>> dist_from(
    int n, const std::function<double(int, int)>& d) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = i == j ? 0.0 : d(i, j);
  return m;
}

int exact_div(double num, double den, const char* what) {
  const double q = num / den;
  const long long k = std::llround(q);
  if (k <= 0 || std::abs(q - static_cast<double>(k)) > 1e-9)
    throw std::invalid_argument(std::string(what) +
                                " must be an exact positive multiple");
  return static_cast<int>(k);
}

}  // namespace

FiniteMMSpace gen_grid_interval(int m) {
  if (m < 2) throw std::invalid_argument("gen_grid_interval requires m >= 2");
  std::vector<std::string> labels;
  std::vector<double> t(m);
  for (int i = 0; i < m; ++i) {
    t[i] = static_cast<double>(i) / (m - 1);
    labels.push_back(fmt_num(t[i]));
  }
  FiniteMetricSpace space(
      labels, dist_from(m, [&](int i, int j) { return std::abs(t[i] - t[j]); }));
  return FiniteMMSpace(std::move(space), ProbabilityWeights::uniform(m));
}

FiniteMMSpace gen_counterexample_X(int m) {
  if (m < 2)
    throw std::invalid_argument("gen_counterexample_X requires m >= 2");
  std::vector<std::string> labels;
  std::vector<double> t(m);
  for (int i = 0; i < m; ++i) {
    t[i] = static_cast<double>(i) / (m - 1);
    labels.push_back(fmt_num(t[i]));
  }
  labels.push_back("inf");
  auto d = [&](int i, int j) {
    if (i == m || j == m) return 1.0;  // apex is at distance 1 from the grid
    return std::abs(t[i] - t[j]);
  };
  std::vector<double> w(m + 1, 1.0 / (2 * m));
  w[m] = 0.5;
  return FiniteMMSpace(FiniteMetricSpace(labels, dist_from(m + 1, d)),
                       ProbabilityWeights(std::move(w)));
}

PointedMetricSpace gen_counterexample_Yn(int m, int n, double R, double h) {
  if (m < 2 || n < 1 || R <= 0.0 || h <= 0.0)
    throw std::invalid_argument("gen_counterexample_Yn: bad parameters");
  const int K = exact_div(R, h, "ray length over mesh");
  exact_div(1.0, h, "1 over mesh");  // the basepoint -1 must lie on the mesh
  if (R < 1.0)
    throw std::invalid_argument("gen_counterexample_Yn: ray must reach -1");

  // Indices: 0..K-1 ray coordinates -R + i*h (strictly negative),
  // K..K+m-1 interval grid, K+m the apex.
  std::vector<double> ray(K), t(m);
  std::vector<std::string> labels;
  for (int i = 0; i < K; ++i) {
    ray[i] = -R + i * h;
    labels.push_back(fmt_num(ray[i]));
  }
  for (int j = 0; j < m; ++j) {
    t[j] = static_cast<double>(j) / (m - 1);
    labels.push_back(fmt_num(t[j]));
  }
  labels.push_back("inf");
  const int apex = K + m;
  auto d = [&](int i, int j) -> double {
    if (i > j) std::swap(i, j);
    if (j < K) return n * std::abs(ray[i] - ray[j]);
    if (i < K) {
      if (j == apex) return n * (-ray[i]) + 1.0;
      return n * (-ray[i]) + t[j - K];
    }
    if (j == apex) return i == apex ? 0.0 : 1.0;
    return std::abs(t[i - K] - t[j - K]);
  };
  const int base = static_cast<int>(std::llround((R - 1.0) / h));
  return PointedMetricSpace(FiniteMetricSpace(labels, dist_from(apex + 1, d)),
                            base);
}

CountableScreen gen_countable_screen(int k) {
  if (k < 1) throw std::invalid_argument("gen_countable_screen requires k >= 1");
  std::vector<std::string> labels;
  for (int i = 0; i <= k; ++i) labels.push_back("y" + std::to_string(i));
  auto d = [&](int i, int j) -> double {
    if (i > j) std::swap(i, j);
    if (i == 0) return 1.0 + 1.0 / j;
    return 2.0 + 1.0 / i + 1.0 / j;
  };
  FiniteMetricSpace screen(labels, dist_from(k + 1, d));
  FiniteMetricSpace two({"x0", "x1"}, {{0.0, 1.0}, {1.0, 0.0}});
  return {std::move(screen),
          FiniteMMSpace(std::move(two), ProbabilityWeights::uniform(2))};
}

FiniteMetricSpace gen_circle(int m, double r) {
  if (m < 3 || r <= 0.0) throw std::invalid_argument("gen_circle: bad size");
  const double pi = std::acos(-1.0);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("c" + std::to_string(i));
  auto d = [&](int i, int j) {
    const int k = std::min((i - j + m) % m, (j - i + m) % m);
    return r * 2.0 * pi * k / m;
  };
  return FiniteMetricSpace(labels, dist_from(m, d));
}

FiniteMetricSpace gen_star_tree(int branches, int m, double length) {
  if (branches < 1 || m < 1 || length <= 0.0)
    throw std::invalid_argument("gen_star_tree: bad size");
  const double s = length / m;
  std::vector<std::string> labels{"o"};
  // index 0 the center, then branch b point j at 1 + b*m + j, depth j+1
  for (int b = 0; b < branches; ++b)
    for (int j = 0; j < m; ++j)
      labels.push_back("b" + std::to_string(b) + "_" + std::to_string(j + 1));
  auto depth = [&](int i) { return i == 0 ? 0 : (i - 1) % m + 1; };
  auto branch = [&](int i) { return i == 0 ? -1 : (i - 1) / m; };
  auto d = [&](int i, int j) {
    if (branch(i) == branch(j)) return s * std::abs(depth(i) - depth(j));
    return s * (depth(i) + depth(j));
  };
  return FiniteMetricSpace(labels, dist_from(1 + branches * m, d));
}

FiniteMMSpace gen_random(int n, std::uint64_t seed, bool random_weights) {
  if (n < 1) throw std::invalid_argument("gen_random requires n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pts;
  while (static_cast<int>(pts.size()) < n) {
    std::pair<double, double> p{unit(rng), unit(rng)};
    bool fresh = true;
    for (const auto& q : pts)
      fresh = fresh && (std::abs(p.first - q.first) > 1e-9 ||
                        std::abs(p.second - q.second) > 1e-9);
    if (fresh) pts.push_back(p);
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  auto d = [&](int i, int j) {
    return std::hypot(pts[i].first - pts[j].first,
                      pts[i].second - pts[j].second);
  };
  std::vector<double> w(n, 1.0 / n);
  if (random_weights) {
    double sum = 0.0;
    for (double& x : w) sum += (x = 0.5 + unit(rng));
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) acc += (w[i] /= sum);
    w[n - 1] = 1.0 - acc;
  }
  return FiniteMMSpace(FiniteMetricSpace(labels, dist_from(n, d)),
                       ProbabilityWeights(std::move(w)));
}

PghInstance gen_pgh_instance(int m, int n, double R, double h) {
  if (R > n / 2.0 + 1e-12)
    throw std::invalid_argument("gen_pgh_instance requires R <= n/2");
  const int K = exact_div(R, h, "R over mesh");
  exact_div(static_cast<double>(n), h, "n over mesh");

  std::vector<double> t(2 * K + 1);
  std::vector<std::string> labels;
  for (int i = 0; i <= 2 * K; ++i) {
    t[i] = -R + i * h;
    labels.push_back(fmt_num(t[i]));
  }
  PointedMetricSpace line(
      FiniteMetricSpace(labels, dist_from(2 * K + 1, [&](int i, int j) {
                          return std::abs(t[i] - t[j]);
                        })),
      K);

  const double hn = h / n;
  const double ray_R = 2.0;
  PointedMetricSpace approx = gen_counterexample_Yn(m, n, ray_R, hn);

  // Grid point t maps to the ray coordinate -1 + t/n; distortion is
  // exactly zero since the ray metric is n times the coordinate gap.
  Assignment f(2 * K + 1, -1);
  for (int i = 0; i <= 2 * K; ++i) {
    const double c = -1.0 + t[i] / n;
    const int idx = static_cast<int>(std::llround((c + ray_R) / hn));
    if (std::abs(-ray_R + idx * hn - c) > 1e-9)
      throw std::logic_error("gen_pgh_instance: ray mesh misaligned");
    f[i] = idx;
  }
  return {std::move(line), std::move(approx), std::move(f), R, hn};
}

}  // namespace mms
