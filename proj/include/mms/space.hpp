// Finite metric spaces, probability weights, and elementary set operations.
//
// All types are immutable after construction and validated on construction.
// Distances are 64-bit floats; axiom checks use kValidationTol, threshold
// comparisons elsewhere use the run tolerance (default kTol).
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mms {

// Tolerance for construction-time axiom checks (sums, symmetry, triangle).
inline constexpr double kValidationTol = 1e-12;
// Default tolerance for threshold comparisons in the algorithms.
inline constexpr double kTol = 1e-9;

using PointSet = std::vector<int>;  // sorted, unique indices

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violated axiom with witnessing indices
};

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Validates axioms; throws std::invalid_argument on violation.
  FiniteMetricSpace(std::vector<std::string> labels,
                    std::vector<std::vector<double>> dist);

  int size() const { return static_cast<int>(dist_.size()); }
  double d(int i, int j) const { return dist_[i][j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& dist() const { return dist_; }
  double diameter() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> dist_;
};

// Non-throwing axiom check; returns pass or the first violated axiom.
ValidationReport validate(const std::vector<std::string>& labels,
                          const std::vector<std::vector<double>>& dist);
ValidationReport validate(const FiniteMetricSpace& space);

class ProbabilityWeights {
 public:
  ProbabilityWeights() = default;
  // Requires nonnegative entries summing to 1 within kValidationTol.
  explicit ProbabilityWeights(std::vector<double> w);

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[i]; }
  const std::vector<double>& w() const { return w_; }
  double mass(const PointSet& A) const;

  static ProbabilityWeights uniform(int n);

 private:
  std::vector<double> w_;
};

// An mm space: metric space plus a full-support probability measure.
// Zero-weight points are rejected at construction, never dropped.
class FiniteMMSpace {
 public:
  FiniteMMSpace() = default;
  FiniteMMSpace(FiniteMetricSpace space, ProbabilityWeights mu);

  const FiniteMetricSpace& space() const { return space_; }
  const ProbabilityWeights& mu() const { return mu_; }
  int size() const { return space_.size(); }

 private:
  FiniteMetricSpace space_;
  ProbabilityWeights mu_;
};

struct PointedMetricSpace {
  FiniteMetricSpace space;
  int basepoint = 0;

  PointedMetricSpace() = default;
  PointedMetricSpace(FiniteMetricSpace s, int o);
};

// Open neighborhood {y : d(y, A) < eps}. Empty A yields the empty set
// (distance to the empty set is +infinity).
PointSet neighborhood(const FiniteMetricSpace& space, const PointSet& A,
                      double eps);

// Max pairwise distance within A; empty and singleton sets give 0.
double subset_diameter(const FiniteMetricSpace& space, const PointSet& A);

// Push-forward of mu under the index assignment (length = source size).
// Summation runs in source index order.
ProbabilityWeights pushforward(const std::vector<int>& assignment,
                               const ProbabilityWeights& mu, int target_size);

PointSet complement(int n, const PointSet& A);
PointSet full_set(int n);

// JSON space format:
//   { "labels": [...], "dist": [[...]], "mu": [...], "basepoint": idx }
// "mu" and "basepoint" are optional; the loader validates on read.
struct SpaceFile {
  FiniteMetricSpace space;
  std::optional<ProbabilityWeights> mu;
  std::optional<int> basepoint;
};

SpaceFile load_space_file(const std::string& path);
SpaceFile parse_space_json(const std::string& text);
std::string space_to_json(const FiniteMetricSpace& space,
                          const ProbabilityWeights* mu = nullptr,
                          const int* basepoint = nullptr);

}  // namespace mms
