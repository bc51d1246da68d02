#pragma once

#include <vector>

#include "fad/types.hpp"

namespace fad {

/// Shared sampling design: strictly increasing time stamps in [0, 1].
class Grid {
 public:
  /// Validates length >= 2, finiteness, strict monotonicity and the [0, 1]
  /// bounds; throws std::invalid_argument otherwise.
  explicit Grid(Vector points);

  /// Equally spaced grid t_j = j / (p - 1), j = 0..p-1.
  static Grid uniform(Index p);

  Index size() const { return points_.size(); }
  double operator[](Index j) const { return points_[j]; }
  const Vector& points() const { return points_; }
  double front() const { return points_[0]; }
  double back() const { return points_[points_.size() - 1]; }
  double span() const { return back() - front(); }

  bool isUniform(double tol = 1e-12) const;

  /// Trapezoid quadrature weights; they sum to span().
  Vector quadratureWeights() const;

  bool operator==(const Grid& other) const;

 private:
  Vector points_;
};

/// A sample of n curves observed on a common grid; row i holds curve i.
class FunctionalDataset {
 public:
  FunctionalDataset(Grid grid, Matrix values);

  Index numCurves() const { return values_.rows(); }
  Index numPoints() const { return values_.cols(); }
  const Grid& grid() const { return grid_; }
  const Matrix& values() const { return values_; }

  /// Curve i as a strided column view (no copy).
  VectorView curve(Index i) const { return values_.row(i).transpose(); }

 private:
  Grid grid_;
  Matrix values_;
};

/// Per-curve labels over {normal = -1, anomaly = +1}.
class LabelVector {
 public:
  static constexpr int kNormal = -1;
  static constexpr int kAnomaly = +1;

  explicit LabelVector(std::vector<int> labels);

  Index size() const { return static_cast<Index>(labels_.size()); }
  int operator[](Index i) const { return labels_[static_cast<size_t>(i)]; }
  const std::vector<int>& labels() const { return labels_; }
  Index countAnomalies() const;

  bool operator==(const LabelVector& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<int> labels_;
};

/// Per-curve anomaly scores, oriented so larger means more anomalous.
class ScoreVector {
 public:
  explicit ScoreVector(Vector scores);

  Index size() const { return scores_.size(); }
  double operator[](Index i) const { return scores_[i]; }
  const Vector& values() const { return scores_; }

 private:
  Vector scores_;
};

/// Piecewise-linear interpolation of every curve onto `target`. Every target
/// point must lie within the source grid span; otherwise throws.
FunctionalDataset resampleLinear(const FunctionalDataset& data,
                                 const Grid& target);

/// Single-curve piecewise-linear interpolation used by resampleLinear.
Vector interpolateCurve(const Grid& source, const VectorView& values,
                        const Grid& target);

/// Forward-difference derivative (x_{j+1} - x_j) / (t_{j+1} - t_j); the last
/// column is replicated so the output stays on the same grid.
FunctionalDataset derivative(const FunctionalDataset& data);

/// Forward-difference derivative of one curve (same replication rule).
Vector derivativeCurve(const Grid& grid, const VectorView& values);

}  // namespace fad
