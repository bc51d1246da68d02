#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fad/dataset.hpp"
#include "fad/hull.hpp"

namespace fad {

struct AchConfig {
  Index subsetSize = 2;     // J
  Index numSubsets = 0;     // Monte Carlo draws; 0 means 32 * n
  std::uint64_t seed = 0;
  /// All C(n, J) subsets are enumerated instead of sampled when their count
  /// does not exceed this limit.
  Index enumerationLimit = 10000;
};

/// Area-of-convex-hull depth: the average over J-subsets of dataset curves of
/// the ratio hull-area(subset) / hull-area(subset + query). Subsets are fully
/// enumerated when feasible and sampled otherwise; sampling streams are keyed
/// by query index, so batch results do not depend on the parallelism degree.
class AchDepth {
 public:
  AchDepth(const FunctionalDataset& reference, AchConfig config);

  /// Depth of an external query curve (substream 0).
  double depth(const VectorView& curve) const;

  /// Depth of a curve drawn against the reference rows minus `excludeRow`
  /// (scoring a training member against its peers), substream keyed by the
  /// excluded row.
  double depthExcluding(const VectorView& curve, Index excludeRow) const;

  /// Depths of external query curves; query i uses substream i.
  Vector depths(const FunctionalDataset& queries, int threads = 1) const;

  /// Depths of every reference row against the other rows.
  Vector trainingDepths(int threads = 1) const;

  const AchConfig& config() const { return config_; }
  const Grid& grid() const { return grid_; }
  Index numCurves() const { return static_cast<Index>(rowHulls_.size()); }

 private:
  double depthImpl(const VectorView& curve, std::optional<Index> excludeRow,
                   std::uint64_t stream) const;

  AchConfig config_;
  Grid grid_;
  Matrix values_;
  std::vector<PlanarPointSet> rowHulls_;
};

/// One-shot convenience wrapper (external-query convention).
double achDepth(const VectorView& curve, const FunctionalDataset& data,
                AchConfig config);

}  // namespace fad
