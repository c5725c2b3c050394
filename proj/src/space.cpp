#include "mms/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mms {

ValidationReport validate(const std::vector<std::string>& labels,
                          const std::vector<std::vector<double>>& dist) {
  const int n = static_cast<int>(dist.size());
  if (static_cast<int>(labels.size()) != n)
    return {false, "label count does not match matrix size"};
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(dist[i].size()) != n)
      return {false, "matrix is not square at row " + std::to_string(i)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = dist[i][j];
      if (std::isnan(v))
        return {false, "NaN entry at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")"};
      if (v < 0.0)
        return {false, "negative entry at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")"};
    }
  for (int i = 0; i < n; ++i)
    if (dist[i][i] != 0.0)
      return {false, "nonzero diagonal at " + std::to_string(i)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > kValidationTol)
        return {false, "asymmetry at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")"};
      if (dist[i][j] <= 0.0)
        return {false, "zero distance between distinct points (" +
                           std::to_string(i) + "," + std::to_string(j) + ")"};
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (dist[i][k] > dist[i][j] + dist[j][k] + kValidationTol)
          return {false, "triangle inequality violated for (" +
                             std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ")"};
  return {true, "pass"};
}

ValidationReport validate(const FiniteMetricSpace& space) {
  return validate(space.labels(), space.dist());
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  ValidationReport r = validate(labels_, dist_);
  if (!r.ok) throw std::invalid_argument("invalid metric space: " + r.message);
}

double FiniteMetricSpace::diameter() const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) m = std::max(m, dist_[i][j]);
  return m;
}

ProbabilityWeights::ProbabilityWeights(std::vector<double> w)
    : w_(std::move(w)) {
  double s = 0.0;
  for (double x : w_) {
    if (std::isnan(x) || x < 0.0)
      throw std::invalid_argument("weights must be nonnegative");
    s += x;
  }
  if (std::abs(s - 1.0) > kValidationTol)
    throw std::invalid_argument("weights must sum to 1");
}

double ProbabilityWeights::mass(const PointSet& A) const {
  double s = 0.0;
  for (int i : A) s += w_[i];
  return s;
}

ProbabilityWeights ProbabilityWeights::uniform(int n) {
  return ProbabilityWeights(std::vector<double>(n, 1.0 / n));
}

FiniteMMSpace::FiniteMMSpace(FiniteMetricSpace space, ProbabilityWeights mu)
    : space_(std::move(space)), mu_(std::move(mu)) {
  if (mu_.size() != space_.size())
    throw std::invalid_argument("measure size does not match space size");
  for (int i = 0; i < mu_.size(); ++i)
    if (mu_[i] <= 0.0)
      throw std::invalid_argument("measure must have full support (point " +
                                  std::to_string(i) + " has zero mass)");
}

PointedMetricSpace::PointedMetricSpace(FiniteMetricSpace s, int o)
    : space(std::move(s)), basepoint(o) {
  if (o < 0 || o >= space.size())
    throw std::invalid_argument("basepoint out of range");
}

PointSet neighborhood(const FiniteMetricSpace& space, const PointSet& A,
                      double eps) {
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
  PointSet out;
  if (A.empty()) return out;
  for (int y = 0; y < space.size(); ++y) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int z : A) dmin = std::min(dmin, space.d(y, z));
    if (dmin < eps) out.push_back(y);
  }
  return out;
}

double subset_diameter(const FiniteMetricSpace& space, const PointSet& A) {
  double m = 0.0;
  for (size_t a = 0; a < A.size(); ++a)
    for (size_t b = a + 1; b < A.size(); ++b)
      m = std::max(m, space.d(A[a], A[b]));
  return m;
}

ProbabilityWeights pushforward(const std::vector<int>& assignment,
                               const ProbabilityWeights& mu, int target_size) {
  if (static_cast<int>(assignment.size()) != mu.size())
    throw std::invalid_argument("assignment length does not match source size");
  std::vector<double> w(target_size, 0.0);
  for (int i = 0; i < mu.size(); ++i) {
    const int y = assignment[i];
    if (y < 0 || y >= target_size)
      throw std::invalid_argument("assignment entry out of range");
    w[y] += mu[i];
  }
  return ProbabilityWeights(std::move(w));
}

PointSet complement(int n, const PointSet& A) {
  std::vector<char> in(n, 0);
  for (int i : A) in[i] = 1;
  PointSet out;
  for (int i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

PointSet full_set(int n) {
  PointSet out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  return out;
}

SpaceFile parse_space_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SpaceFile f;
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  std::vector<std::vector<double>> dist =
      j.at("dist").get<std::vector<std::vector<double>>>();
  f.space = FiniteMetricSpace(std::move(labels), std::move(dist));
  if (j.contains("mu"))
    f.mu = ProbabilityWeights(j.at("mu").get<std::vector<double>>());
  if (j.contains("basepoint")) {
    int o = j.at("basepoint").get<int>();
    if (o < 0 || o >= f.space.size())
      throw std::invalid_argument("basepoint out of range");
    f.basepoint = o;
  }
  return f;
}

SpaceFile load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_space_json(ss.str());
}

std::string space_to_json(const FiniteMetricSpace& space,
                          const ProbabilityWeights* mu, const int* basepoint) {
  nlohmann::json j;
  j["labels"] = space.labels();
  j["dist"] = space.dist();
  if (mu) j["mu"] = mu->w();
  if (basepoint) j["basepoint"] = *basepoint;
  return j.dump(2);
}

}  // namespace mms
