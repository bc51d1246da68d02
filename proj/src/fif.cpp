#include "fad/fif.hpp"

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

double weightedDot(const Vector& w, const VectorView& a, const VectorView& b) {
  double acc = 0.0;
  for (Index j = 0; j < w.size(); ++j) acc += w[j] * a[j] * b[j];
  return acc;
}

double cosineTerm(double dot, double normA, double normB) {
  const double denom = normA * normB;
  if (denom <= 0.0) return 0.0;
  return dot / denom;
}

Vector brownianPath(const Grid& grid, Rng& rng) {
  const Index p = grid.size();
  Vector path(p);
  double prev = std::sqrt(std::max(grid[0], 0.0)) * rng.normal();
  path[0] = prev;
  for (Index j = 1; j < p; ++j) {
    prev += std::sqrt(grid[j] - grid[j - 1]) * rng.normal();
    path[j] = prev;
  }
  return path;
}

}  // namespace

DictionaryKind dictionaryKindFromString(const std::string& s) {
  if (s == "brownian") return DictionaryKind::kBrownian;
  if (s == "cosine") return DictionaryKind::kCosine;
  if (s == "self") return DictionaryKind::kSelf;
  if (s == "custom") return DictionaryKind::kCustom;
  throw std::invalid_argument("unknown dictionary kind: " + s);
}

std::string toString(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::kBrownian: return "brownian";
    case DictionaryKind::kCosine: return "cosine";
    case DictionaryKind::kSelf: return "self";
    case DictionaryKind::kCustom: return "custom";
  }
  return "brownian";
}

Dictionary Dictionary::brownian() { return Dictionary{}; }

Dictionary Dictionary::cosine(const Grid& grid, Index count) {
  if (count < 1) throw std::invalid_argument("cosine dictionary needs atoms");
  Matrix atoms(count, grid.size());
  for (Index k = 0; k < count; ++k) {
    for (Index j = 0; j < grid.size(); ++j) {
      atoms(k, j) = std::cos(M_PI * static_cast<double>(k + 1) * grid[j]);
    }
  }
  return Dictionary{DictionaryKind::kCosine, std::move(atoms)};
}

Dictionary Dictionary::self(const FunctionalDataset& train) {
  const Vector w = train.grid().quadratureWeights();
  std::vector<Index> keep;
  for (Index i = 0; i < train.numCurves(); ++i) {
    const Vector d = derivativeCurve(train.grid(), train.curve(i));
    const double norm = weightedDot(w, train.curve(i), train.curve(i));
    const double dnorm = weightedDot(w, d, d);
    if (norm > 0.0 && dnorm > 0.0) keep.push_back(i);
  }
  if (keep.empty()) {
    throw std::invalid_argument(
        "self dictionary: every training curve is degenerate");
  }
  Matrix atoms(static_cast<Index>(keep.size()), train.numPoints());
  for (size_t r = 0; r < keep.size(); ++r) {
    atoms.row(static_cast<Index>(r)) = train.values().row(keep[r]);
  }
  return Dictionary{DictionaryKind::kSelf, std::move(atoms)};
}

Dictionary Dictionary::custom(Matrix atoms) {
  if (atoms.rows() < 1) throw std::invalid_argument("custom dictionary is empty");
  return Dictionary{DictionaryKind::kCustom, std::move(atoms)};
}

double sobolevInner(const Grid& grid, const VectorView& x, const VectorView& d,
                    double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (x.size() != grid.size() || d.size() != grid.size()) {
    throw std::invalid_argument("curve length does not match grid");
  }
  const Vector w = grid.quadratureWeights();
  const Vector xd = derivativeCurve(grid, x);
  const Vector dd = derivativeCurve(grid, d);
  const double locTerm =
      cosineTerm(weightedDot(w, x, d), std::sqrt(weightedDot(w, x, x)),
                 std::sqrt(weightedDot(w, d, d)));
  const double shapeTerm =
      cosineTerm(weightedDot(w, xd, dd), std::sqrt(weightedDot(w, xd, xd)),
                 std::sqrt(weightedDot(w, dd, dd)));
  const double v = alpha * locTerm + (1.0 - alpha) * shapeTerm;
  return std::clamp(v, -1.0, 1.0);
}

FifForest::FifForest(Grid grid, FifConfig config)
    : config_(config), grid_(std::move(grid)) {
  quadWeights_ = grid_.quadratureWeights();
}

double FifForest::project(const VectorView& curve,
                          const VectorView& curveDeriv, Index atom) const {
  const auto a = atoms_.row(atom).transpose();
  const auto ad = atomDerivs_.row(atom).transpose();
  const double loc =
      cosineTerm(weightedDot(quadWeights_, curve, a),
                 std::sqrt(weightedDot(quadWeights_, curve, curve)),
                 std::sqrt(weightedDot(quadWeights_, a, a)));
  const double shape =
      cosineTerm(weightedDot(quadWeights_, curveDeriv, ad),
                 std::sqrt(weightedDot(quadWeights_, curveDeriv, curveDeriv)),
                 std::sqrt(weightedDot(quadWeights_, ad, ad)));
  const double v = config_.alpha * loc + (1.0 - config_.alpha) * shape;
  return std::clamp(v, -1.0, 1.0);
}

FifForest FifForest::fit(const FunctionalDataset& train,
                         const Dictionary& dict, FifConfig config) {
  const Index n = train.numCurves();
  const Index p = train.numPoints();
  if (config.subsampleSize == 0) config.subsampleSize = std::min<Index>(256, n);
  if (config.subsampleSize < 2) {
    throw std::invalid_argument("subsample size must be at least 2");
  }
  if (config.subsampleSize > n) {
    throw std::invalid_argument("subsample size exceeds the sample size");
  }
  if (config.numTrees < 1) throw std::invalid_argument("need at least one tree");
  if (config.alpha < 0.0 || config.alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (config.heightLimit == 0) {
    config.heightLimit = static_cast<Index>(
        std::ceil(std::log2(static_cast<double>(config.subsampleSize))));
  }
  config.heightLimit = std::max<Index>(1, config.heightLimit);

  const bool stochastic = dict.kind == DictionaryKind::kBrownian;
  if (!stochastic) {
    if (dict.atoms.rows() < 1) {
      throw std::invalid_argument("dictionary has no atoms");
    }
    if (dict.atoms.cols() != p) {
      throw std::invalid_argument("dictionary atoms do not match the grid");
    }
  }

  FifForest forest(train.grid(), config);

  // Per-curve values, derivatives and norms shared by every tree.
  const Matrix& values = train.values();
  Matrix derivs(n, p);
  for (Index i = 0; i < n; ++i) {
    derivs.row(i) = derivativeCurve(forest.grid_, train.curve(i));
  }
  Vector normLoc(n), normShape(n);
  for (Index i = 0; i < n; ++i) {
    normLoc[i] = std::sqrt(
        weightedDot(forest.quadWeights_, train.curve(i), train.curve(i)));
    normShape[i] = std::sqrt(weightedDot(
        forest.quadWeights_, derivs.row(i).transpose(), derivs.row(i).transpose()));
  }

  struct TreeBuild {
    FifTree tree;
    std::vector<Vector> localAtoms;  // stochastic mode only
  };
  std::vector<TreeBuild> builds(static_cast<size_t>(config.numTrees));

  auto fitTree = [&](Index t) {
    Rng rng(splitSeed(config.seed, static_cast<std::uint64_t>(t)));
    TreeBuild& build = builds[static_cast<size_t>(t)];

    // Subsample without replacement.
    std::vector<Index> pool(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    std::vector<Index> nodeCurves(static_cast<size_t>(config.subsampleSize));
    for (Index i = 0; i < config.subsampleSize; ++i) {
      const Index r =
          i + static_cast<Index>(rng.integer(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(r)]);
      nodeCurves[static_cast<size_t>(i)] = pool[static_cast<size_t>(i)];
    }

    // Atom supply for this tree. Indices are local in stochastic mode and
    // remapped after all trees are built.
    std::vector<Vector> perTreeBatch;
    if (stochastic && config.atomDraw == FifConfig::AtomDraw::kPerTree) {
      for (Index a = 0; a < config.atomsPerTree; ++a) {
        perTreeBatch.push_back(brownianPath(forest.grid_, rng));
      }
    }
    auto drawAtom = [&](Rng& r2) -> Index {
      if (!stochastic) {
        return static_cast<Index>(
            r2.integer(static_cast<std::uint64_t>(dict.atoms.rows())));
      }
      if (config.atomDraw == FifConfig::AtomDraw::kPerTree) {
        const Index pick = static_cast<Index>(
            r2.integer(static_cast<std::uint64_t>(perTreeBatch.size())));
        build.localAtoms.push_back(perTreeBatch[static_cast<size_t>(pick)]);
      } else {
        Vector path = brownianPath(forest.grid_, r2);
        for (int attempt = 0; attempt < 100 && path.isZero(0.0); ++attempt) {
          path = brownianPath(forest.grid_, r2);
        }
        build.localAtoms.push_back(std::move(path));
      }
      return static_cast<Index>(build.localAtoms.size()) - 1;
    };

    auto atomRowView = [&](Index localOrGlobal) {
      return stochastic
                 ? build.localAtoms[static_cast<size_t>(localOrGlobal)]
                 : Vector(dict.atoms.row(localOrGlobal).transpose());
    };

    std::vector<FifNode>& nodes = build.tree.nodes;
    // Recursive split; returns the node index.
    auto buildNode = [&](auto&& self, std::vector<Index>& members,
                         Index depth) -> Index {
      const Index id = static_cast<Index>(nodes.size());
      nodes.push_back(FifNode{});
      nodes[static_cast<size_t>(id)].size = static_cast<Index>(members.size());
      if (members.size() <= 1 || depth >= config.heightLimit) return id;

      const Index atomId = drawAtom(rng);
      const Vector atom = atomRowView(atomId);
      const Vector atomDeriv = derivativeCurve(forest.grid_, atom);
      const double atomNormLoc =
          std::sqrt(weightedDot(forest.quadWeights_, atom, atom));
      const double atomNormShape =
          std::sqrt(weightedDot(forest.quadWeights_, atomDeriv, atomDeriv));

      std::vector<double> z(members.size());
      for (size_t i = 0; i < members.size(); ++i) {
        const Index c = members[i];
        const double loc = cosineTerm(
            weightedDot(forest.quadWeights_, values.row(c).transpose(), atom),
            normLoc[c], atomNormLoc);
        const double shape = cosineTerm(
            weightedDot(forest.quadWeights_, derivs.row(c).transpose(),
                        atomDeriv),
            normShape[c], atomNormShape);
        z[i] = std::clamp(
            config.alpha * loc + (1.0 - config.alpha) * shape, -1.0, 1.0);
      }
      const auto [zminIt, zmaxIt] = std::minmax_element(z.begin(), z.end());
      const double zmin = *zminIt;
      const double zmax = *zmaxIt;
      if (!(zmin < zmax)) return id;  // no separating threshold exists

      double threshold = rng.uniform(zmin, zmax);
      for (int attempt = 0; attempt < 64 && !(threshold > zmin); ++attempt) {
        threshold = rng.uniform(zmin, zmax);
      }
      if (!(threshold > zmin && threshold < zmax)) return id;

      std::vector<Index> leftMembers, rightMembers;
      for (size_t i = 0; i < members.size(); ++i) {
        (z[i] < threshold ? leftMembers : rightMembers).push_back(members[i]);
      }
      nodes[static_cast<size_t>(id)].atom = atomId;
      nodes[static_cast<size_t>(id)].threshold = threshold;
      const Index leftId = self(self, leftMembers, depth + 1);
      nodes[static_cast<size_t>(id)].left = leftId;
      const Index rightId = self(self, rightMembers, depth + 1);
      nodes[static_cast<size_t>(id)].right = rightId;
      return id;
    };
    buildNode(buildNode, nodeCurves, 0);
  };

  parallelFor(config.numTrees, 0, fitTree);

  // Assemble the forest-level atom table. Fixed dictionaries are copied once;
  // stochastic local indices shift by the running offset, in tree order.
  if (!stochastic) {
    forest.atoms_ = dict.atoms;
  } else {
    Index total = 0;
    for (const auto& b : builds) total += static_cast<Index>(b.localAtoms.size());
    forest.atoms_.resize(total, p);
    Index offset = 0;
    for (auto& b : builds) {
      for (auto& node : b.tree.nodes) {
        if (node.atom >= 0) node.atom += offset;
      }
      for (const auto& a : b.localAtoms) {
        forest.atoms_.row(offset++) = a;
      }
    }
  }
  forest.trees_.reserve(builds.size());
  for (auto& b : builds) forest.trees_.push_back(std::move(b.tree));

  forest.atomDerivs_.resize(forest.atoms_.rows(), p);
  for (Index a = 0; a < forest.atoms_.rows(); ++a) {
    forest.atomDerivs_.row(a) =
        derivativeCurve(forest.grid_, forest.atoms_.row(a).transpose());
  }
  return forest;
}

double FifForest::averagePathLength(const VectorView& curve) const {
  if (curve.size() != grid_.size()) {
    throw std::invalid_argument("curve length does not match forest grid");
  }
  const Vector deriv = derivativeCurve(grid_, curve);
  double total = 0.0;
  for (const auto& tree : trees_) {
    Index node = 0;
    double depth = 0.0;
    while (tree.nodes[static_cast<size_t>(node)].atom >= 0) {
      const auto& nd = tree.nodes[static_cast<size_t>(node)];
      const double z = project(curve, deriv, nd.atom);
      node = z < nd.threshold ? nd.left : nd.right;
      depth += 1.0;
    }
    total +=
        depth + pathLengthAdjustment(tree.nodes[static_cast<size_t>(node)].size);
  }
  return total / static_cast<double>(trees_.size());
}

double FifForest::score(const VectorView& curve) const {
  return isolationScore(averagePathLength(curve), config_.subsampleSize);
}

Vector FifForest::scores(const FunctionalDataset& data, int threads) const {
  if (!(data.grid() == grid_)) {
    throw std::invalid_argument("dataset grid does not match forest grid");
  }
  Vector out(data.numCurves());
  parallelFor(data.numCurves(), threads,
              [&](Index i) { out[i] = score(data.curve(i)); });
  return out;
}

nlohmann::json FifForest::toJson() const {
  json doc;
  doc["format"] = "fad-fif";
  doc["alpha"] = config_.alpha;
  doc["psi"] = config_.subsampleSize;
  doc["num_trees"] = config_.numTrees;
  doc["height_limit"] = config_.heightLimit;
  doc["seed"] = config_.seed;
  doc["grid"] = std::vector<double>(grid_.points().begin(),
                                    grid_.points().end());
  json atoms = json::array();
  for (Index a = 0; a < atoms_.rows(); ++a) {
    atoms.push_back(std::vector<double>(atoms_.row(a).begin(),
                                        atoms_.row(a).end()));
  }
  doc["atoms"] = std::move(atoms);
  json trees = json::array();
  for (const auto& tree : trees_) {
    json nodes = json::array();
    for (const auto& nd : tree.nodes) {
      if (nd.atom >= 0) {
        nodes.push_back(json{{"a", nd.atom},
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

FifForest FifForest::fromJson(const nlohmann::json& doc) {
  if (doc.value("format", "") != "fad-fif") {
    throw std::runtime_error("not a FIF forest document");
  }
  FifConfig config;
  config.alpha = doc.at("alpha").get<double>();
  config.subsampleSize = doc.at("psi").get<Index>();
  config.numTrees = doc.at("num_trees").get<Index>();
  config.heightLimit = doc.at("height_limit").get<Index>();
  config.seed = doc.at("seed").get<std::uint64_t>();
  const auto gridValues = doc.at("grid").get<std::vector<double>>();
  Grid grid(Eigen::Map<const Vector>(gridValues.data(),
                                     static_cast<Index>(gridValues.size())));
  FifForest forest(std::move(grid), config);

  const auto& atomsDoc = doc.at("atoms");
  forest.atoms_.resize(static_cast<Index>(atomsDoc.size()),
                       forest.grid_.size());
  for (size_t a = 0; a < atomsDoc.size(); ++a) {
    const auto row = atomsDoc[a].get<std::vector<double>>();
    if (static_cast<Index>(row.size()) != forest.grid_.size()) {
      throw std::runtime_error("atom length does not match grid");
    }
    forest.atoms_.row(static_cast<Index>(a)) =
        Eigen::Map<const Vector>(row.data(), static_cast<Index>(row.size()));
  }
  for (const auto& treeDoc : doc.at("trees")) {
    FifTree tree;
    for (const auto& nodeDoc : treeDoc) {
      FifNode nd;
      nd.size = nodeDoc.at("s").get<Index>();
      if (nodeDoc.contains("a")) {
        nd.atom = nodeDoc.at("a").get<Index>();
        nd.threshold = nodeDoc.at("t").get<double>();
        nd.left = nodeDoc.at("l").get<Index>();
        nd.right = nodeDoc.at("r").get<Index>();
      }
      tree.nodes.push_back(nd);
    }
    forest.trees_.push_back(std::move(tree));
  }
  forest.atomDerivs_.resize(forest.atoms_.rows(), forest.grid_.size());
  for (Index a = 0; a < forest.atoms_.rows(); ++a) {
    forest.atomDerivs_.row(a) =
        derivativeCurve(forest.grid_, forest.atoms_.row(a).transpose());
  }
  return forest;
}

}  // namespace fad
