#include "fad/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fad {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

AnomalyModel anomalyModelFromString(const std::string& s) {
  if (s == "isolated") return AnomalyModel::kIsolated;
  if (s == "magnitude1") return AnomalyModel::kMagnitude1;
  if (s == "magnitude2") return AnomalyModel::kMagnitude2;
  if (s == "shape") return AnomalyModel::kShape;
  throw std::invalid_argument("unknown anomaly model: " + s);
}

std::string toString(AnomalyModel model) {
  switch (model) {
    case AnomalyModel::kIsolated: return "isolated";
    case AnomalyModel::kMagnitude1: return "magnitude1";
    case AnomalyModel::kMagnitude2: return "magnitude2";
    case AnomalyModel::kShape: return "shape";
  }
  return "isolated";
}

NormalKind normalKindFromString(const std::string& s) {
  if (s == "smooth-random") return NormalKind::kSmoothRandom;
  if (s == "ar-noise") return NormalKind::kArNoise;
  throw std::invalid_argument("unknown normal-base kind: " + s);
}

std::string toString(NormalKind kind) {
  return kind == NormalKind::kSmoothRandom ? "smooth-random" : "ar-noise";
}

FunctionalDataset genNormalBase(Index n, const Grid& grid,
                                const NormalBaseConfig& config,
                                std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one curve");
  const Index p = grid.size();
  Matrix values(n, p);
  Rng rng(seed);
  if (config.kind == NormalKind::kSmoothRandom) {
    const Index m = config.cosineAtoms;
    if (m < 1) throw std::invalid_argument("need at least one cosine atom");
    Matrix atoms(m, p);
    for (Index j = 0; j < m; ++j) {
      for (Index t = 0; t < p; ++t) {
        atoms(j, t) = std::cos(M_PI * static_cast<double>(j + 1) * grid[t]);
      }
    }
    Vector coeff(m);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < m; ++j) {
        coeff[j] =
            config.amplitude / static_cast<double>(2 + j) * rng.normal();
      }
      values.row(i) = coeff.transpose() * atoms;
    }
  } else {
    const double rho = config.arRho;
    const double innovationSd = config.amplitude * config.arSigma;
    const double stationarySd =
        innovationSd / std::sqrt(std::max(1.0 - rho * rho, 1e-12));
    for (Index i = 0; i < n; ++i) {
      double x = stationarySd * rng.normal();
      values(i, 0) = x;
      for (Index t = 1; t < p; ++t) {
        x = rho * x + innovationSd * rng.normal();
        values(i, t) = x;
      }
    }
  }
  return FunctionalDataset(grid, std::move(values));
}

Vector drawAnomaly(AnomalyModel model, const Grid& grid, Rng& rng,
                   AnomalyRecord* record) {
  AnomalyRecord rec;
  rec.model = model;
  const Index p = grid.size();
  Vector y = Vector::Zero(p);
  switch (model) {
    case AnomalyModel::kIsolated: {
      rec.magnitude = rng.uniform(3.0, 4.0);
      rec.sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      rec.tauIndex =
          static_cast<Index>(rng.integer(static_cast<std::uint64_t>(p)));
      y[rec.tauIndex] = rec.sign * rec.magnitude;
      break;
    }
    case AnomalyModel::kMagnitude1: {
      rec.magnitude = rng.uniform(-15.0, -12.0);
      y.setConstant(rec.magnitude);
      break;
    }
    case AnomalyModel::kMagnitude2: {
      rec.magnitude = rng.uniform(0.0, 15.0);
      rec.windowStart = rng.uniform(0.0, 0.9);
      for (Index j = 0; j < p; ++j) {
        if (grid[j] >= rec.windowStart && grid[j] < rec.windowStart + 0.1) {
          y[j] = rec.magnitude;
        }
      }
      break;
    }
    case AnomalyModel::kShape: {
      rec.magnitude = rng.uniform(0.2, 2.0);
      for (Index j = 0; j < p; ++j) {
        y[j] = std::sin(kTwoPi * rec.magnitude * grid[j]);
      }
      break;
    }
  }
  if (record) *record = rec;
  return y;
}

Vector anomalyFromRecord(const AnomalyRecord& rec, const Grid& grid) {
  const Index p = grid.size();
  Vector y = Vector::Zero(p);
  switch (rec.model) {
    case AnomalyModel::kIsolated:
      y[rec.tauIndex] = rec.sign * rec.magnitude;
      break;
    case AnomalyModel::kMagnitude1:
      y.setConstant(rec.magnitude);
      break;
    case AnomalyModel::kMagnitude2:
      for (Index j = 0; j < p; ++j) {
        if (grid[j] >= rec.windowStart && grid[j] < rec.windowStart + 0.1) {
          y[j] = rec.magnitude;
        }
      }
      break;
    case AnomalyModel::kShape:
      for (Index j = 0; j < p; ++j) {
        y[j] = std::sin(kTwoPi * rec.magnitude * grid[j]);
      }
      break;
  }
  return y;
}

LabeledDataset contaminate(const FunctionalDataset& base,
                           const ContaminationSpec& spec) {
  if (!(spec.fraction > 0.0 && spec.fraction < 1.0)) {
    throw std::invalid_argument("contamination fraction must lie in (0, 1)");
  }
  const Index n = base.numCurves();
  const Index m = static_cast<Index>(
      std::llround(spec.fraction * static_cast<double>(n)));
  if (m < 1) {
    throw std::invalid_argument(
        "contamination fraction selects no row after rounding");
  }

  Rng rng(spec.seed);
  std::vector<Index> pool(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
  for (Index i = 0; i < m; ++i) {
    const Index r =
        i + static_cast<Index>(rng.integer(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(r)]);
  }
  std::vector<Index> selected(pool.begin(), pool.begin() + m);
  std::sort(selected.begin(), selected.end());

  Matrix values = base.values();
  std::vector<int> labels(static_cast<size_t>(n), LabelVector::kNormal);
  std::vector<AnomalyRecord> provenance;
  provenance.reserve(static_cast<size_t>(m));
  for (Index row : selected) {
    AnomalyRecord rec;
    const Vector y = drawAnomaly(spec.model, base.grid(), rng, &rec);
    rec.row = row;
    values.row(row) += y.transpose();
    labels[static_cast<size_t>(row)] = LabelVector::kAnomaly;
    provenance.push_back(rec);
  }
  return LabeledDataset{FunctionalDataset(base.grid(), std::move(values)),
                        LabelVector(std::move(labels)), std::move(provenance)};
}

nlohmann::json provenanceToJson(const LabeledDataset& labeled,
                                const ContaminationSpec& spec) {
  json doc;
  doc["format"] = "fad-provenance";
  doc["model"] = toString(spec.model);
  doc["fraction"] = spec.fraction;
  doc["seed"] = spec.seed;
  doc["num_curves"] = labeled.data.numCurves();
  doc["num_anomalies"] = labeled.labels.countAnomalies();
  json anomalies = json::array();
  for (const auto& rec : labeled.provenance) {
    json r;
    r["row"] = rec.row;
    r["model"] = toString(rec.model);
    r["magnitude"] = rec.magnitude;
    switch (rec.model) {
      case AnomalyModel::kIsolated:
        r["sign"] = rec.sign;
        r["tau_index"] = rec.tauIndex;
        break;
      case AnomalyModel::kMagnitude2:
        r["window_start"] = rec.windowStart;
        break;
      default:
        break;
    }
    anomalies.push_back(std::move(r));
  }
  doc["anomalies"] = std::move(anomalies);
  return doc;
}

std::vector<AnomalyRecord> provenanceFromJson(const nlohmann::json& doc) {
  std::vector<AnomalyRecord> out;
  for (const auto& r : doc.at("anomalies")) {
    AnomalyRecord rec;
    rec.row = r.at("row").get<Index>();
    rec.model = anomalyModelFromString(r.at("model").get<std::string>());
    rec.magnitude = r.at("magnitude").get<double>();
    rec.sign = r.value("sign", 1.0);
    rec.tauIndex = r.value("tau_index", Index{-1});
    rec.windowStart = r.value("window_start", 0.0);
    out.push_back(rec);
  }
  return out;
}

}  // namespace fad
