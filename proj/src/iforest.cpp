#include "fad/iforest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fad/isolation.hpp"
#include "fad/parallel.hpp"
#include "fad/rng.hpp"

namespace fad {

namespace {

using nlohmann::json;

constexpr int kSplitRetries = 16;

}  // namespace

IsolationForest IsolationForest::fit(const Matrix& data, IForestConfig config) {
  const Index n = data.rows();
  const Index d = data.cols();
  if (n < 1 || d < 1) throw std::invalid_argument("empty dataset");
  if (!data.allFinite()) {
    throw std::invalid_argument("dataset contains a non-finite value");
  }
  if (config.subsampleSize == 0) config.subsampleSize = std::min<Index>(256, n);
  if (config.subsampleSize > n) {
    throw std::invalid_argument("subsample size exceeds the sample size");
  }
  if (config.numTrees < 1) throw std::invalid_argument("need at least one tree");
  if (config.heightLimit == 0) {
    config.heightLimit = std::max<Index>(
        1, static_cast<Index>(std::ceil(
               std::log2(std::max<double>(2.0, static_cast<double>(
                                                   config.subsampleSize))))));
  }

  IsolationForest forest;
  forest.config_ = config;
  forest.dimension_ = d;
  forest.trees_.resize(static_cast<size_t>(config.numTrees));

  auto fitTree = [&](Index t) {
    Rng rng(splitSeed(config.seed, static_cast<std::uint64_t>(t)));
    std::vector<Index> pool(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    std::vector<Index> members(static_cast<size_t>(config.subsampleSize));
    for (Index i = 0; i < config.subsampleSize; ++i) {
      const Index r =
          i + static_cast<Index>(rng.integer(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(r)]);
      members[static_cast<size_t>(i)] = pool[static_cast<size_t>(i)];
    }

    std::vector<IfNode>& nodes = forest.trees_[static_cast<size_t>(t)].nodes;
    auto buildNode = [&](auto&& self, std::vector<Index>& rows,
                         Index depth) -> Index {
      const Index id = static_cast<Index>(nodes.size());
      nodes.push_back(IfNode{});
      nodes[static_cast<size_t>(id)].size = static_cast<Index>(rows.size());
      if (rows.size() <= 1 || depth >= config.heightLimit) return id;

      // A constant column yields no split; resample the coordinate a bounded
      // number of times, then give up and leave a leaf.
      int feature = -1;
      double lo = 0.0, hi = 0.0;
      for (int attempt = 0; attempt < kSplitRetries; ++attempt) {
        const int f =
            static_cast<int>(rng.integer(static_cast<std::uint64_t>(d)));
        lo = hi = data(rows[0], f);
        for (size_t i = 1; i < rows.size(); ++i) {
          lo = std::min(lo, data(rows[i], f));
          hi = std::max(hi, data(rows[i], f));
        }
        if (lo < hi) {
          feature = f;
          break;
        }
      }
      if (feature < 0) return id;

      double threshold = rng.uniform(lo, hi);
      for (int attempt = 0; attempt < 64 && !(threshold > lo); ++attempt) {
        threshold = rng.uniform(lo, hi);
      }
      if (!(threshold > lo && threshold < hi)) return id;

      std::vector<Index> leftRows, rightRows;
      for (Index r : rows) {
        (data(r, feature) < threshold ? leftRows : rightRows).push_back(r);
      }
      nodes[static_cast<size_t>(id)].feature = feature;
      nodes[static_cast<size_t>(id)].threshold = threshold;
      const Index leftId = self(self, leftRows, depth + 1);
      nodes[static_cast<size_t>(id)].left = leftId;
      const Index rightId = self(self, rightRows, depth + 1);
      nodes[static_cast<size_t>(id)].right = rightId;
      return id;
    };
    buildNode(buildNode, members, 0);
  };

  parallelFor(config.numTrees, 0, fitTree);
  return forest;
}

double IsolationForest::averagePathLength(const VectorView& point) const {
  if (point.size() != dimension_) {
    throw std::invalid_argument("point dimension does not match the forest");
  }
  double total = 0.0;
  for (const auto& tree : trees_) {
    Index node = 0;
    double depth = 0.0;
    while (tree.nodes[static_cast<size_t>(node)].feature >= 0) {
      const auto& nd = tree.nodes[static_cast<size_t>(node)];
      node = point[nd.feature] < nd.threshold ? nd.left : nd.right;
      depth += 1.0;
    }
    total +=
        depth + pathLengthAdjustment(tree.nodes[static_cast<size_t>(node)].size);
  }
  return total / static_cast<double>(trees_.size());
}

double IsolationForest::score(const VectorView& point) const {
  return isolationScore(averagePathLength(point), config_.subsampleSize);
}

Vector IsolationForest::scores(const Matrix& data, int threads) const {
  if (data.cols() != dimension_) {
    throw std::invalid_argument("point dimension does not match the forest");
  }
  Vector out(data.rows());
  parallelFor(data.rows(), threads,
              [&](Index i) { out[i] = score(data.row(i).transpose()); });
  return out;
}

nlohmann::json IsolationForest::toJson() const {
  json doc;
  doc["format"] = "fad-iforest";
  doc["psi"] = config_.subsampleSize;
  doc["num_trees"] = config_.numTrees;
  doc["height_limit"] = config_.heightLimit;
  doc["seed"] = config_.seed;
  doc["dimension"] = dimension_;
  json trees = json::array();
  for (const auto& tree : trees_) {
    json nodes = json::array();
    for (const auto& nd : tree.nodes) {
      if (nd.feature >= 0) {
        nodes.push_back(json{{"f", nd.feature},
                             {"t", nd.threshold},
                             {"l", nd.left},
                             {"r", nd.right},
                             {"s", nd.size}});
      } else {
        nodes.push_back(json{{"s", nd.size}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  doc["trees"] = std::move(trees);
  return doc;
}

IsolationForest IsolationForest::fromJson(const nlohmann::json& doc) {
  if (doc.value("format", "") != "fad-iforest") {
    throw std::runtime_error("not an isolation forest document");
  }
  IsolationForest forest;
  forest.config_.subsampleSize = doc.at("psi").get<Index>();
  forest.config_.numTrees = doc.at("num_trees").get<Index>();
  forest.config_.heightLimit = doc.at("height_limit").get<Index>();
  forest.config_.seed = doc.at("seed").get<std::uint64_t>();
  forest.dimension_ = doc.at("dimension").get<Index>();
  for (const auto& treeDoc : doc.at("trees")) {
    IfTree tree;
    for (const auto& nodeDoc : treeDoc) {
      IfNode nd;
      nd.size = nodeDoc.at("s").get<Index>();
      if (nodeDoc.contains("f")) {
        nd.feature = nodeDoc.at("f").get<int>();
        nd.threshold = nodeDoc.at("t").get<double>();
        nd.left = nodeDoc.at("l").get<Index>();
        nd.right = nodeDoc.at("r").get<Index>();
      }
      tree.nodes.push_back(nd);
    }
    forest.trees_.push_back(std::move(tree));
  }
  return forest;
}

}  // namespace fad
