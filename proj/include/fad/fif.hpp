#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fad/dataset.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

enum class DictionaryKind { kBrownian, kCosine, kSelf, kCustom };

DictionaryKind dictionaryKindFromString(const std::string& s);
std::string toString(DictionaryKind kind);

/// Projection dictionary. Fixed kinds carry their atoms by value; the
/// Brownian kind generates fresh paths while fitting.
struct Dictionary {
  DictionaryKind kind = DictionaryKind::kBrownian;
  Matrix atoms;  // one atom per row; empty for the Brownian kind

  static Dictionary brownian();
  /// cos(pi k t), k = 1..count.
  static Dictionary cosine(const Grid& grid, Index count = 16);
  /// Training curves as atoms; rows with zero norm or zero derivative norm
  /// are dropped.
  static Dictionary self(const FunctionalDataset& train);
  /// User-supplied atoms, kept verbatim (degenerate atoms fall back to the
  /// inner product's epsilon rule).
  static Dictionary custom(Matrix atoms);
};

struct FifConfig {
  Index numTrees = 100;
  Index subsampleSize = 0;  // psi; 0 means min(256, n)
  double alpha = 0.5;
  Index heightLimit = 0;  // 0 means ceil(log2(psi))
  std::uint64_t seed = 0;
  /// For stochastic dictionaries: draw a fresh atom at every node (default)
  /// or a per-tree batch the nodes pick from.
  enum class AtomDraw { kPerNode, kPerTree } atomDraw = AtomDraw::kPerNode;
  Index atomsPerTree = 32;  // batch size for the per-tree mode
};

/// Location/shape inner product: alpha * cos(x, d) + (1 - alpha) *
/// cos(x', d'), cosines under the trapezoid L2 product on the grid. Zero
/// norms contribute a zero term instead of dividing by zero.
double sobolevInner(const Grid& grid, const VectorView& x, const VectorView& d,
                    double alpha);

/// One tree node; `atom < 0` marks a leaf holding only its size.
struct FifNode {
  Index atom = -1;
  double threshold = 0;
  Index left = -1;
  Index right = -1;
  Index size = 0;
};

struct FifTree {
  std::vector<FifNode> nodes;  // preorder; root at 0
};

/// Functional isolation forest over dictionary projections.
class FifForest {
 public:
  static FifForest fit(const FunctionalDataset& train, const Dictionary& dict,
                       FifConfig config);

  double averagePathLength(const VectorView& curve) const;
  double score(const VectorView& curve) const;
  Vector scores(const FunctionalDataset& data, int threads = 1) const;

  const std::vector<FifTree>& trees() const { return trees_; }
  const Matrix& atoms() const { return atoms_; }
  const Grid& grid() const { return grid_; }
  const FifConfig& config() const { return config_; }

  nlohmann::json toJson() const;
  static FifForest fromJson(const nlohmann::json& doc);

 private:
  FifForest(Grid grid, FifConfig config);

  double project(const VectorView& curve, const VectorView& curveDeriv,
                 Index atom) const;

  FifConfig config_;
  Grid grid_;
  Vector quadWeights_;
  Matrix atoms_;       // every atom referenced by some node, by value
  Matrix atomDerivs_;  // cached forward-difference derivatives
  std::vector<FifTree> trees_;
};

}  // namespace fad
