#pragma once

#include <vector>

#include "fad/dataset.hpp"
#include "fad/iforest.hpp"
#include "fad/integrated.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

enum class FeatureMap { kMs, kFom };

FeatureMap featureMapFromString(const std::string& s);
std::string toString(FeatureMap map);

/// Cap applied where the pointwise depth vanishes; keeps the outlyingness
/// finite while preserving ranks.
inline constexpr double kOutlyingnessCap = 1e6;

/// Pointwise outlyingness O = 1/D - 1 of curves against the reference
/// columns, plus the derived per-curve map coordinates.
class OutlyingnessModel {
 public:
  OutlyingnessModel(const FunctionalDataset& reference, BaseDepth base);

  /// O(x(t_j) | C_n(t_j)) for each grid point, capped at kOutlyingnessCap.
  Vector series(const VectorView& curve) const;

  /// (MO, VO): mean and population variance of the outlyingness series.
  Eigen::RowVector2d msPoint(const VectorView& curve) const;

  /// (MO, sqrt(VO) / (1 + MO)).
  Eigen::RowVector2d fomPoint(const VectorView& curve) const;

  Matrix msFeatures(const FunctionalDataset& data, int threads = 1) const;
  Matrix fomFeatures(const FunctionalDataset& data, int threads = 1) const;
  Matrix features(FeatureMap map, const FunctionalDataset& data,
                  int threads = 1) const;

  const Grid& grid() const;
  BaseDepth base() const { return base_; }

 private:
  BaseDepth base_;
  IntegratedDepth pointwise_;  // carries the per-column samples
};

/// MS-plot coordinates of each curve of `data` against itself.
Matrix msFeatures(const FunctionalDataset& data, BaseDepth base);
/// Functional outlier map coordinates of each curve of `data` against itself.
Matrix fomFeatures(const FunctionalDataset& data, BaseDepth base);

/// Feature-map detector: 2-D embedding of the training curves followed by an
/// isolation forest on the embedded points. Queries always embed against the
/// training columns, so a training member reproduces its training features.
class FeatureMapDetector {
 public:
  static FeatureMapDetector fit(const FunctionalDataset& train, FeatureMap map,
                                BaseDepth base, IForestConfig forestConfig,
                                int threads = 1);

  Vector scores(const FunctionalDataset& data, int threads = 1) const;
  const Matrix& trainingFeatures() const { return trainingFeatures_; }
  FeatureMap map() const { return map_; }

  nlohmann::json toJson() const;

 private:
  FeatureMapDetector(OutlyingnessModel embedding, FeatureMap map,
                     Matrix trainingFeatures, IsolationForest forest);

  OutlyingnessModel embedding_;
  FeatureMap map_;
  Matrix trainingFeatures_;
  IsolationForest forest_;
};

}  // namespace fad
