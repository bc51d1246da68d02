#include "fad/integrated.hpp"

#include <stdexcept>

#include "fad/parallel.hpp"

namespace fad {

BaseDepth baseDepthFromString(const std::string& s) {
  if (s == "tukey") return BaseDepth::kTukey;
  if (s == "projection") return BaseDepth::kProjection;
  if (s == "asym_projection" || s == "asym-projection") {
    return BaseDepth::kAsymProjection;
  }
  throw std::invalid_argument("unknown base depth: " + s);
}

std::string toString(BaseDepth base) {
  switch (base) {
    case BaseDepth::kTukey: return "tukey";
    case BaseDepth::kProjection: return "projection";
    case BaseDepth::kAsymProjection: return "asym_projection";
  }
  return "tukey";
}

IntegratedDepth::IntegratedDepth(const FunctionalDataset& reference,
                                 IntegratedDepthConfig config)
    : config_(config), grid_(reference.grid()) {
  const Index p = reference.numPoints();
  const Index n = reference.numCurves();
  columns_.reserve(static_cast<size_t>(p));
  for (Index j = 0; j < p; ++j) {
    std::vector<double> column(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) column[static_cast<size_t>(i)] = reference.values()(i, j);
    columns_.emplace_back(std::move(column));
  }
  if (config_.base != BaseDepth::kTukey) {
    summaries_.resize(static_cast<size_t>(p));
    // Medcouple is quadratic in n; summaries are shared by all queries.
    parallelFor(p, 0, [this](Index j) {
      summaries_[static_cast<size_t>(j)] =
          robustSummary(columns_[static_cast<size_t>(j)]);
    });
  }
  if (config_.weights == DepthWeights::kUniformMean) {
    weights_ = Vector::Constant(p, 1.0 / static_cast<double>(p));
  } else {
    weights_ = grid_.quadratureWeights();
    weights_ /= weights_.sum();
  }
}

Vector IntegratedDepth::pointwiseDepths(const VectorView& curve) const {
  const Index p = grid_.size();
  if (curve.size() != p) {
    throw std::invalid_argument("query curve length does not match grid");
  }
  Vector out(p);
  switch (config_.base) {
    case BaseDepth::kTukey:
      for (Index j = 0; j < p; ++j) {
        out[j] = tukeyDepth1d(curve[j], columns_[static_cast<size_t>(j)]);
      }
      break;
    case BaseDepth::kProjection:
      for (Index j = 0; j < p; ++j) {
        const auto& s = summaries_[static_cast<size_t>(j)];
        out[j] = projectionDepth1d(curve[j], s.median, s.mad);
      }
      break;
    case BaseDepth::kAsymProjection:
      for (Index j = 0; j < p; ++j) {
        out[j] =
            asymProjectionDepth1d(curve[j], summaries_[static_cast<size_t>(j)]);
      }
      break;
  }
  return out;
}

double IntegratedDepth::depth(const VectorView& curve) const {
  return weights_.dot(pointwiseDepths(curve));
}

Vector IntegratedDepth::depths(const FunctionalDataset& queries,
                               int threads) const {
  if (!(queries.grid() == grid_)) {
    throw std::invalid_argument("query grid does not match reference grid");
  }
  Vector out(queries.numCurves());
  parallelFor(queries.numCurves(), threads,
              [&](Index i) { out[i] = depth(queries.curve(i)); });
  return out;
}

double integratedDepth(const VectorView& curve, const FunctionalDataset& data,
                       IntegratedDepthConfig config) {
  return IntegratedDepth(data, config).depth(curve);
}

ScoreVector depthToScore(const Vector& depths) {
  for (Index i = 0; i < depths.size(); ++i) {
    if (!(depths[i] >= 0.0 && depths[i] <= 1.0)) {
      throw std::invalid_argument("depth outside [0, 1]");
    }
  }
  return ScoreVector(Vector::Ones(depths.size()) - depths);
}

}  // namespace fad
