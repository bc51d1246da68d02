#pragma once

#include <vector>

#include "fad/dataset.hpp"
#include "fad/univariate.hpp"

namespace fad {

enum class BaseDepth { kTukey, kProjection, kAsymProjection };

BaseDepth baseDepthFromString(const std::string& s);
std::string toString(BaseDepth base);

enum class DepthWeights { kUniformMean, kTrapezoid };

struct IntegratedDepthConfig {
  BaseDepth base = BaseDepth::kTukey;
  DepthWeights weights = DepthWeights::kUniformMean;
};

/// Functional depth obtained by weighting the pointwise depth of each grid
/// column. The per-column samples of the reference dataset are prepared once
/// at construction; queries are never added to them.
class IntegratedDepth {
 public:
  IntegratedDepth(const FunctionalDataset& reference,
                  IntegratedDepthConfig config);

  /// Depth of a curve sampled on the reference grid.
  double depth(const VectorView& curve) const;

  /// Pointwise depth of curve[j] against column j, for each grid point.
  Vector pointwiseDepths(const VectorView& curve) const;

  /// Depths of every curve in `queries` (grid must match), optionally in
  /// parallel; results are identical for any thread count.
  Vector depths(const FunctionalDataset& queries, int threads = 1) const;

  /// Normalized column weights (they sum to 1).
  const Vector& weights() const { return weights_; }
  const Grid& grid() const { return grid_; }
  const IntegratedDepthConfig& config() const { return config_; }

 private:
  IntegratedDepthConfig config_;
  Grid grid_;
  std::vector<UnivariateSample> columns_;
  std::vector<RobustSummary> summaries_;  // empty for the Tukey base
  Vector weights_;
};

/// One-shot convenience wrapper around IntegratedDepth.
double integratedDepth(const VectorView& curve, const FunctionalDataset& data,
                       IntegratedDepthConfig config = {});

/// Depth-to-anomaly-score transform s = 1 - d; inputs must lie in [0, 1].
ScoreVector depthToScore(const Vector& depths);

}  // namespace fad
