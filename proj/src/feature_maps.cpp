#include "fad/feature_maps.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fad/parallel.hpp"

namespace fad {

namespace {

using nlohmann::json;

}  // namespace

FeatureMap featureMapFromString(const std::string& s) {
  if (s == "ms") return FeatureMap::kMs;
  if (s == "fom") return FeatureMap::kFom;
  throw std::invalid_argument("unknown feature map: " + s);
}

std::string toString(FeatureMap map) {
  return map == FeatureMap::kMs ? "ms" : "fom";
}

OutlyingnessModel::OutlyingnessModel(const FunctionalDataset& reference,
                                     BaseDepth base)
    : base_(base),
      pointwise_(reference, IntegratedDepthConfig{base,
                                                  DepthWeights::kUniformMean}) {}

const Grid& OutlyingnessModel::grid() const { return pointwise_.grid(); }

Vector OutlyingnessModel::series(const VectorView& curve) const {
  Vector depths = pointwise_.pointwiseDepths(curve);
  for (Index j = 0; j < depths.size(); ++j) {
    const double d = depths[j];
    depths[j] = d > 0.0 ? std::min(1.0 / d - 1.0, kOutlyingnessCap)
                        : kOutlyingnessCap;
  }
  return depths;
}

Eigen::RowVector2d OutlyingnessModel::msPoint(const VectorView& curve) const {
  const Vector o = series(curve);
  const double mo = o.mean();
  const double vo = (o.array() - mo).square().mean();
  return {mo, vo};
}

Eigen::RowVector2d OutlyingnessModel::fomPoint(const VectorView& curve) const {
  const Eigen::RowVector2d ms = msPoint(curve);
  return {ms[0], std::sqrt(ms[1]) / (1.0 + ms[0])};
}

Matrix OutlyingnessModel::msFeatures(const FunctionalDataset& data,
                                     int threads) const {
  Matrix out(data.numCurves(), 2);
  parallelFor(data.numCurves(), threads,
              [&](Index i) { out.row(i) = msPoint(data.curve(i)); });
  return out;
}

Matrix OutlyingnessModel::fomFeatures(const FunctionalDataset& data,
                                      int threads) const {
  Matrix out(data.numCurves(), 2);
  parallelFor(data.numCurves(), threads,
              [&](Index i) { out.row(i) = fomPoint(data.curve(i)); });
  return out;
}

Matrix OutlyingnessModel::features(FeatureMap map, const FunctionalDataset& data,
                                   int threads) const {
  return map == FeatureMap::kMs ? msFeatures(data, threads)
                                : fomFeatures(data, threads);
}

Matrix msFeatures(const FunctionalDataset& data, BaseDepth base) {
  if (data.numCurves() < 2) {
    throw std::invalid_argument("feature maps need at least 2 curves");
  }
  return OutlyingnessModel(data, base).msFeatures(data);
}

Matrix fomFeatures(const FunctionalDataset& data, BaseDepth base) {
  if (data.numCurves() < 2) {
    throw std::invalid_argument("feature maps need at least 2 curves");
  }
  return OutlyingnessModel(data, base).fomFeatures(data);
}

FeatureMapDetector::FeatureMapDetector(OutlyingnessModel embedding,
                                       FeatureMap map, Matrix trainingFeatures,
                                       IsolationForest forest)
    : embedding_(std::move(embedding)),
      map_(map),
      trainingFeatures_(std::move(trainingFeatures)),
      forest_(std::move(forest)) {}

FeatureMapDetector FeatureMapDetector::fit(const FunctionalDataset& train,
                                           FeatureMap map, BaseDepth base,
                                           IForestConfig forestConfig,
                                           int threads) {
  if (train.numCurves() < 2) {
    throw std::invalid_argument("feature maps need at least 2 curves");
  }
  OutlyingnessModel embedding(train, base);
  Matrix features = embedding.features(map, train, threads);
  IsolationForest forest = IsolationForest::fit(features, forestConfig);
  return FeatureMapDetector(std::move(embedding), map, std::move(features),
                            std::move(forest));
}

Vector FeatureMapDetector::scores(const FunctionalDataset& data,
                                  int threads) const {
  const Matrix features = embedding_.features(map_, data, threads);
  return forest_.scores(features, threads);
}

nlohmann::json FeatureMapDetector::toJson() const {
  json doc;
  doc["format"] = "fad-featuremap";
  doc["map"] = toString(map_);
  doc["base"] = toString(embedding_.base());
  doc["forest"] = forest_.toJson();
  return doc;
}

}  // namespace fad
