#pragma once

#include <vector>

#include "fad/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

/// Local outlier factor with exact k-nearest neighbors (full pairwise
/// Euclidean distances). Neighborhoods include all points at the k-distance,
/// so ties may enlarge them. A zero mean reachability (duplicate points) is
/// regularized so identical points score exactly 1.
class LofModel {
 public:
  static LofModel fit(const Matrix& data, Index k);

  /// LOF of each training point.
  const Vector& trainingScores() const { return trainingScores_; }

  /// LOF of an out-of-sample point against the training neighborhood.
  double score(const VectorView& point) const;
  Vector scores(const Matrix& data, int threads = 1) const;

  Index k() const { return k_; }
  Index dimension() const { return data_.cols(); }

  nlohmann::json toJson() const;
  static LofModel fromJson(const nlohmann::json& doc);

 private:
  Matrix data_;
  Index k_ = 0;
  std::vector<std::vector<Index>> neighbors_;
  Vector kDistance_;
  Vector lrd_;
  Vector trainingScores_;
};

/// One-shot LOF of every row of `data`.
Vector lofScores(const Matrix& data, Index k);

}  // namespace fad
