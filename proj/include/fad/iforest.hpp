#pragma once

#include <cstdint>
#include <vector>

#include "fad/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

struct IForestConfig {
  Index numTrees = 100;
  Index subsampleSize = 0;  // psi; 0 means min(256, n)
  Index heightLimit = 0;    // 0 means ceil(log2(psi))
  std::uint64_t seed = 0;
};

/// One tree node; `feature < 0` marks a leaf holding only its size.
struct IfNode {
  int feature = -1;
  double threshold = 0;
  Index left = -1;
  Index right = -1;
  Index size = 0;
};

struct IfTree {
  std::vector<IfNode> nodes;  // preorder; root at 0
};

/// Axis-aligned isolation forest on points in R^d: random coordinate,
/// uniform threshold inside the node's range on it.
class IsolationForest {
 public:
  static IsolationForest fit(const Matrix& data, IForestConfig config);

  double averagePathLength(const VectorView& point) const;
  double score(const VectorView& point) const;
  Vector scores(const Matrix& data, int threads = 1) const;

  const std::vector<IfTree>& trees() const { return trees_; }
  const IForestConfig& config() const { return config_; }
  Index dimension() const { return dimension_; }

  nlohmann::json toJson() const;
  static IsolationForest fromJson(const nlohmann::json& doc);

 private:
  IForestConfig config_;
  Index dimension_ = 0;
  std::vector<IfTree> trees_;
};

}  // namespace fad
