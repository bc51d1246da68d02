#include "fad/detectors.hpp"

#include <optional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fad/ach.hpp"
#include "fad/feature_maps.hpp"
#include "fad/fif.hpp"
#include "fad/fpca.hpp"
#include "fad/haar.hpp"
#include "fad/integrated.hpp"
#include "fad/iforest.hpp"
#include "fad/lof.hpp"
#include "fad/version.hpp"

namespace fad {

namespace {

using nlohmann::json;

json datasetToJson(const FunctionalDataset& data) {
  json doc;
  doc["grid"] = std::vector<double>(data.grid().points().begin(),
                                    data.grid().points().end());
  json rows = json::array();
  for (Index i = 0; i < data.numCurves(); ++i) {
    rows.push_back(std::vector<double>(data.curve(i).begin(),
                                       data.curve(i).end()));
  }
  doc["values"] = std::move(rows);
  return doc;
}

FunctionalDataset datasetFromJson(const json& doc) {
  const auto gridValues = doc.at("grid").get<std::vector<double>>();
  Grid grid(Eigen::Map<const Vector>(gridValues.data(),
                                     static_cast<Index>(gridValues.size())));
  const auto& rows = doc.at("values");
  Matrix values(static_cast<Index>(rows.size()), grid.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto row = rows[i].get<std::vector<double>>();
    if (static_cast<Index>(row.size()) != grid.size()) {
      throw std::runtime_error("model curve length does not match its grid");
    }
    values.row(static_cast<Index>(i)) =
        Eigen::Map<const Vector>(row.data(), static_cast<Index>(row.size()));
  }
  return FunctionalDataset(std::move(grid), std::move(values));
}

json modelEnvelope(const std::string& detector, std::uint64_t seed,
                   json params) {
  json doc;
  doc["format"] = "fad-model";
  doc["version"] = kVersion;
  doc["detector"] = detector;
  doc["seed"] = seed;
  doc["params"] = std::move(params);
  return doc;
}

void requireSameGrid(const Grid& expected, const FunctionalDataset& data) {
  if (!(data.grid() == expected)) {
    throw std::invalid_argument(
        "grid mismatch: scored curves are not sampled like the model's");
  }
}

// ---------------------------------------------------------------------------

class IntegratedDetector final : public Detector {
 public:
  IntegratedDetector(std::string name, BaseDepth base,
                     const FunctionalDataset& train, std::uint64_t seed,
                     const json& params)
      : Detector(std::move(name)),
        base_(base),
        seed_(seed),
        train_(train),
        evaluator_(train, makeConfig(base, train, params)) {}

  ScoreVector scoreTraining(int threads) const override {
    return depthToScore(evaluator_.depths(train_, threads));
  }

  ScoreVector score(const FunctionalDataset& data, int threads) const override {
    requireSameGrid(evaluator_.grid(), data);
    return depthToScore(evaluator_.depths(data, threads));
  }

  json paramsEcho() const override {
    return json{{"base", toString(base_)},
                {"weights", evaluator_.config().weights ==
                                    DepthWeights::kUniformMean
                                ? "uniform-mean"
                                : "trapezoid"}};
  }

  json toJson() const override {
    json doc = modelEnvelope(name_, seed_, paramsEcho());
    doc["train"] = datasetToJson(train_);
    return doc;
  }

 private:
  static IntegratedDepthConfig makeConfig(BaseDepth base,
                                          const FunctionalDataset& train,
                                          const json& params) {
    IntegratedDepthConfig config;
    config.base = base;
    config.weights = train.grid().isUniform() ? DepthWeights::kUniformMean
                                              : DepthWeights::kTrapezoid;
    if (params.contains("weights")) {
      const std::string w = params.at("weights").get<std::string>();
      if (w == "uniform-mean") {
        config.weights = DepthWeights::kUniformMean;
      } else if (w == "trapezoid") {
        config.weights = DepthWeights::kTrapezoid;
      } else {
        throw std::invalid_argument("unknown weight scheme: " + w);
      }
    }
    return config;
  }

  BaseDepth base_;
  std::uint64_t seed_;
  FunctionalDataset train_;
  IntegratedDepth evaluator_;
};

// ---------------------------------------------------------------------------

class AchDetector final : public Detector {
 public:
  AchDetector(const FunctionalDataset& train, std::uint64_t seed,
              const json& params)
      : Detector("ACH"), train_(train), depth_(train, makeConfig(seed, params)) {}

  ScoreVector scoreTraining(int threads) const override {
    Vector depths = depth_.trainingDepths(threads);
    return depthToScore(depths);
  }

  ScoreVector score(const FunctionalDataset& data, int threads) const override {
    requireSameGrid(depth_.grid(), data);
    return depthToScore(depth_.depths(data, threads));
  }

  json paramsEcho() const override {
    const auto& c = depth_.config();
    return json{{"j", c.subsetSize},
                {"num_subsets", c.numSubsets},
                {"enumeration_limit", c.enumerationLimit}};
  }

  json toJson() const override {
    json doc = modelEnvelope(name_, depth_.config().seed, paramsEcho());
    doc["train"] = datasetToJson(train_);
    return doc;
  }

 private:
  static AchConfig makeConfig(std::uint64_t seed, const json& params) {
    AchConfig config;
    config.seed = seed;
    config.subsetSize = params.value("j", Index{2});
    config.numSubsets = params.value("num_subsets", Index{0});
    config.enumerationLimit =
        params.value("enumeration_limit", config.enumerationLimit);
    return config;
  }

  FunctionalDataset train_;
  AchDepth depth_;
};

// ---------------------------------------------------------------------------

class FifDetector final : public Detector {
 public:
  FifDetector(const FunctionalDataset& train, std::uint64_t seed,
              const json& params)
      : Detector("FIF"),
        train_(train),
        dictionaryKind_(params.value("dictionary", std::string("brownian"))),
        forest_(fitForest(train, seed, params, dictionaryKind_)) {}

  FifDetector(FifForest forest, std::string dictionaryKind)
      : Detector("FIF"),
        dictionaryKind_(std::move(dictionaryKind)),
        forest_(std::move(forest)) {}

  ScoreVector scoreTraining(int threads) const override {
    if (!train_) {
      throw std::logic_error("loaded FIF model carries no training curves");
    }
    return ScoreVector(forest_.scores(*train_, threads));
  }

  ScoreVector score(const FunctionalDataset& data, int threads) const override {
    requireSameGrid(forest_.grid(), data);
    return ScoreVector(forest_.scores(data, threads));
  }

  json paramsEcho() const override {
    const auto& c = forest_.config();
    return json{{"dictionary", dictionaryKind_},
                {"num_trees", c.numTrees},
                {"psi", c.subsampleSize},
                {"alpha", c.alpha},
                {"height_limit", c.heightLimit},
                {"atom_draw", c.atomDraw == FifConfig::AtomDraw::kPerNode
                                  ? "per-node"
                                  : "per-tree"}};
  }

  json toJson() const override {
    json doc = modelEnvelope(name_, forest_.config().seed, paramsEcho());
    doc["forest"] = forest_.toJson();
    return doc;
  }

 private:
  static FifForest fitForest(const FunctionalDataset& train,
                             std::uint64_t seed, const json& params,
                             const std::string& dictionaryKind) {
    FifConfig config;
    config.seed = seed;
    config.numTrees = params.value("num_trees", Index{100});
    config.subsampleSize = params.value("psi", Index{0});
    config.alpha = params.value("alpha", 0.5);
    config.heightLimit = params.value("height_limit", Index{0});
    config.atomsPerTree = params.value("atoms_per_tree", Index{32});
    if (params.value("atom_draw", std::string("per-node")) == "per-tree") {
      config.atomDraw = FifConfig::AtomDraw::kPerTree;
    }
    const DictionaryKind kind = dictionaryKindFromString(dictionaryKind);
    Dictionary dict;
    switch (kind) {
      case DictionaryKind::kBrownian:
        dict = Dictionary::brownian();
        break;
      case DictionaryKind::kCosine:
        dict = Dictionary::cosine(train.grid(),
                                  params.value("dict_atoms", Index{16}));
        break;
      case DictionaryKind::kSelf:
        dict = Dictionary::self(train);
        break;
      case DictionaryKind::kCustom:
        throw std::invalid_argument(
            "custom dictionaries are only available through the library API");
    }
    return FifForest::fit(train, dict, config);
  }

  std::optional<FunctionalDataset> train_;
  std::string dictionaryKind_;
  FifForest forest_;
};

// ---------------------------------------------------------------------------

class FeatureMapIfDetector final : public Detector {
 public:
  FeatureMapIfDetector(std::string name, FeatureMap map, BaseDepth base,
                       const FunctionalDataset& train, std::uint64_t seed,
                       const json& params, int threads)
      : Detector(std::move(name)),
        map_(map),
        base_(base),
        seed_(seed),
        train_(train),
        forestConfig_(makeForestConfig(train, seed, params)),
        detector_(FeatureMapDetector::fit(train, map, base, forestConfig_,
                                          threads)) {}

  ScoreVector scoreTraining(int threads) const override {
    return ScoreVector(detector_.scores(train_, threads));
  }

  ScoreVector score(const FunctionalDataset& data, int threads) const override {
    requireSameGrid(train_.grid(), data);
    return ScoreVector(detector_.scores(data, threads));
  }

  json paramsEcho() const override {
    return json{{"map", toString(map_)},
                {"base", toString(base_)},
                {"num_trees", forestConfig_.numTrees},
                {"psi", forestConfig_.subsampleSize}};
  }

  json toJson() const override {
    json doc = modelEnvelope(name_, seed_, paramsEcho());
    doc["train"] = datasetToJson(train_);
    return doc;
  }

 private:
  static IForestConfig makeForestConfig(const FunctionalDataset& train,
                                        std::uint64_t seed, const json& params) {
    IForestConfig config;
    config.seed = seed;
    config.numTrees = params.value("num_trees", Index{100});
    config.subsampleSize = params.value(
        "psi", std::min<Index>(256, train.numCurves()));
    return config;
  }

  FeatureMap map_;
  BaseDepth base_;
  std::uint64_t seed_;
  FunctionalDataset train_;
  IForestConfig forestConfig_;
  FeatureMapDetector detector_;
};

// ---------------------------------------------------------------------------

enum class FilterKind { kFpca, kHaar };
enum class TailKind { kIForest, kLof };

class FilterDetector final : public Detector {
 public:
  FilterDetector(std::string name, FilterKind filter, TailKind tail,
                 const FunctionalDataset& train, std::uint64_t seed,
                 const json& params)
      : Detector(std::move(name)),
        filter_(filter),
        tail_(tail),
        seed_(seed),
        train_(train) {
    if (filter_ == FilterKind::kFpca) {
      const Index maxK = std::min(train.numCurves(), train.numPoints());
      k_ = std::min<Index>(params.value("k", Index{10}), maxK);
      fpca_ = fpcaFit(train, k_);
      trainFeatures_ = fpcaTransform(*fpca_, train);
    } else {
      level_ = params.value("level", 6);
      while ((Index{1} << level_) > train.numPoints() && level_ > 0) --level_;
      trainFeatures_ = haarProjection(train, level_);
    }
    if (tail_ == TailKind::kIForest) {
      IForestConfig config;
      config.seed = seed;
      config.numTrees = params.value("num_trees", Index{100});
      config.subsampleSize =
          params.value("psi", std::min<Index>(256, train.numCurves()));
      forest_ = IsolationForest::fit(trainFeatures_, config);
    } else {
      lofK_ = std::min<Index>(params.value("lof_k", Index{20}),
                              train.numCurves() - 1);
      if (lofK_ < 1) throw std::invalid_argument("LOF needs at least 2 curves");
      lof_ = LofModel::fit(trainFeatures_, lofK_);
    }
  }

  ScoreVector scoreTraining(int threads) const override {
    if (tail_ == TailKind::kIForest) {
      return ScoreVector(forest_->scores(trainFeatures_, threads));
    }
    return ScoreVector(lof_->trainingScores());
  }

  ScoreVector score(const FunctionalDataset& data, int threads) const override {
    requireSameGrid(train_.grid(), data);
    const Matrix features = filter_ == FilterKind::kFpca
                                ? fpcaTransform(*fpca_, data)
                                : haarProjection(data, level_);
    if (tail_ == TailKind::kIForest) {
      return ScoreVector(forest_->scores(features, threads));
    }
    return ScoreVector(lof_->scores(features, threads));
  }

  json paramsEcho() const override {
    json p;
    if (filter_ == FilterKind::kFpca) {
      p["k"] = k_;
    } else {
      p["level"] = level_;
    }
    if (tail_ == TailKind::kIForest) {
      p["num_trees"] = forest_->config().numTrees;
      p["psi"] = forest_->config().subsampleSize;
    } else {
      p["lof_k"] = lofK_;
    }
    return p;
  }

  json toJson() const override {
    json doc = modelEnvelope(name_, seed_, paramsEcho());
    doc["train"] = datasetToJson(train_);
    if (fpca_) doc["fpca"] = fpcaModelToJson(*fpca_);
    return doc;
  }

 private:
  FilterKind filter_;
  TailKind tail_;
  std::uint64_t seed_;
  FunctionalDataset train_;
  Matrix trainFeatures_;
  Index k_ = 0;
  int level_ = 0;
  Index lofK_ = 0;
  std::optional<FpcaModel> fpca_;
  std::optional<IsolationForest> forest_;
  std::optional<LofModel> lof_;
};

}  // namespace

const std::vector<std::string>& detectorNames() {
  static const std::vector<std::string> names = {
      "fT",          "fSDO",         "fAO",     "ACH",
      "FIF",         "MS+IF",        "FOM(fSDO)+IF", "FOM(fAO)+IF",
      "FPCA+IF",     "FPCA+LOF",     "HAAR+IF", "HAAR+LOF"};
  return names;
}

std::unique_ptr<Detector> fitDetector(const std::string& name,
                                      const nlohmann::json& params,
                                      const FunctionalDataset& train,
                                      std::uint64_t seed, int threads) {
  const json& p = params.is_null() ? json::object() : params;
  if (name == "fT") {
    return std::make_unique<IntegratedDetector>(name, BaseDepth::kTukey, train,
                                                seed, p);
  }
  if (name == "fSDO") {
    return std::make_unique<IntegratedDetector>(name, BaseDepth::kProjection,
                                                train, seed, p);
  }
  if (name == "fAO") {
    return std::make_unique<IntegratedDetector>(
        name, BaseDepth::kAsymProjection, train, seed, p);
  }
  if (name == "ACH") return std::make_unique<AchDetector>(train, seed, p);
  if (name == "FIF") return std::make_unique<FifDetector>(train, seed, p);
  if (name == "MS+IF") {
    return std::make_unique<FeatureMapIfDetector>(
        name, FeatureMap::kMs, BaseDepth::kProjection, train, seed, p, threads);
  }
  if (name == "FOM(fSDO)+IF") {
    return std::make_unique<FeatureMapIfDetector>(
        name, FeatureMap::kFom, BaseDepth::kProjection, train, seed, p,
        threads);
  }
  if (name == "FOM(fAO)+IF") {
    return std::make_unique<FeatureMapIfDetector>(
        name, FeatureMap::kFom, BaseDepth::kAsymProjection, train, seed, p,
        threads);
  }
  if (name == "FPCA+IF") {
    return std::make_unique<FilterDetector>(name, FilterKind::kFpca,
                                            TailKind::kIForest, train, seed, p);
  }
  if (name == "FPCA+LOF") {
    return std::make_unique<FilterDetector>(name, FilterKind::kFpca,
                                            TailKind::kLof, train, seed, p);
  }
  if (name == "HAAR+IF") {
    return std::make_unique<FilterDetector>(name, FilterKind::kHaar,
                                            TailKind::kIForest, train, seed, p);
  }
  if (name == "HAAR+LOF") {
    return std::make_unique<FilterDetector>(name, FilterKind::kHaar,
                                            TailKind::kLof, train, seed, p);
  }
  throw std::invalid_argument("unknown detector: " + name);
}

std::unique_ptr<Detector> detectorFromJson(const nlohmann::json& doc,
                                           int threads) {
  if (doc.value("format", "") != "fad-model") {
    throw std::runtime_error("not a detector model document");
  }
  const std::string name = doc.at("detector").get<std::string>();
  const std::uint64_t seed = doc.at("seed").get<std::uint64_t>();
  const json params = doc.value("params", json::object());
  if (name == "FIF") {
    FifForest forest = FifForest::fromJson(doc.at("forest"));
    return std::make_unique<FifDetector>(
        std::move(forest), params.value("dictionary", std::string("brownian")));
  }
  const FunctionalDataset train = datasetFromJson(doc.at("train"));
  return fitDetector(name, params, train, seed, threads);
}

}  // namespace fad
