#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fad/dataset.hpp"
#include "fad/rng.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

enum class AnomalyModel { kIsolated, kMagnitude1, kMagnitude2, kShape };

AnomalyModel anomalyModelFromString(const std::string& s);
std::string toString(AnomalyModel model);

enum class NormalKind { kSmoothRandom, kArNoise };

NormalKind normalKindFromString(const std::string& s);
std::string toString(NormalKind kind);

struct NormalBaseConfig {
  NormalKind kind = NormalKind::kSmoothRandom;
  Index cosineAtoms = 12;   // smooth-random: number of cosine atoms
  double amplitude = 1.0;   // per-atom sd = amplitude / (1 + j)
  double arRho = 0.9;       // ar-noise: lag-1 coefficient
  double arSigma = 0.2;     // ar-noise: innovation sd
};

/// Synthetic normal curves: a random cosine series with decaying amplitudes,
/// or a stationary AR(1) path per curve. Bit-reproducible for a given seed.
FunctionalDataset genNormalBase(Index n, const Grid& grid,
                                const NormalBaseConfig& config,
                                std::uint64_t seed);

struct ContaminationSpec {
  AnomalyModel model = AnomalyModel::kMagnitude1;
  double fraction = 0.05;  // in (0, 1); round(fraction * n) rows are hit
  std::uint64_t seed = 0;
};

/// Drawn parameters of one injected anomaly, enough to rebuild it exactly.
struct AnomalyRecord {
  Index row = -1;
  AnomalyModel model = AnomalyModel::kIsolated;
  double magnitude = 0;    // u1 / u2 / u3 / u4 depending on the model
  double sign = 1;         // isolated only
  Index tauIndex = -1;     // isolated only: grid index of the spike
  double windowStart = 0;  // magnitude2 only: left end of the 1/10 window
};

struct LabeledDataset {
  FunctionalDataset data;
  LabelVector labels;
  std::vector<AnomalyRecord> provenance;
};

/// Draws one anomaly curve on the grid. Models:
///   isolated    +-u1 at one uniformly chosen grid point, u1 ~ U[3, 4]
///   magnitude1  constant u2 ~ U[-15, -12]
///   magnitude2  u3 ~ U[0, 15] on a uniformly placed window [s, s + 1/10)
///   shape       sin(2 pi u4 t), u4 ~ U[0.2, 2]
Vector drawAnomaly(AnomalyModel model, const Grid& grid, Rng& rng,
                   AnomalyRecord* record = nullptr);

/// Rebuilds the anomaly curve from recorded parameters (exact replay).
Vector anomalyFromRecord(const AnomalyRecord& record, const Grid& grid);

/// Adds an independent anomaly to round(fraction * n) distinct rows chosen
/// uniformly at random; the other rows are untouched.
LabeledDataset contaminate(const FunctionalDataset& base,
                           const ContaminationSpec& spec);

nlohmann::json provenanceToJson(const LabeledDataset& labeled,
                                const ContaminationSpec& spec);
std::vector<AnomalyRecord> provenanceFromJson(const nlohmann::json& doc);

}  // namespace fad
