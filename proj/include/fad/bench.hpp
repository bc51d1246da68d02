#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fad/csv.hpp"
#include "fad/dataset.hpp"
#include "fad/metrics.hpp"
#include "fad/simulate.hpp"

#include <nlohmann/json.hpp>

namespace fad {

/// One benchmark dataset: either CSV files on disk or a simulation recipe.
struct DatasetSpec {
  std::string name;

  // File-backed input.
  std::string curvesPath;
  std::string labelsPath;
  GridMode gridMode = GridMode::kHeaderRow;
  std::string gridPath;  // sidecar mode only

  // Simulation recipe (used when `simulate` is set).
  bool simulate = false;
  AnomalyModel model = AnomalyModel::kMagnitude1;
  double fraction = 0.05;
  Index n = 200;
  Index p = 128;
  std::optional<std::uint64_t> seed;  // default: split from the config seed
  NormalBaseConfig base;
};

struct DetectorSpec {
  std::string name;      // registry name
  std::string id;        // report key; defaults to `name`
  nlohmann::json params = nlohmann::json::object();
};

struct BenchConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<DetectorSpec> detectors;
  double alpha = 0;  // top-fraction rule; 0 means the labeled anomaly fraction
  std::uint64_t seed = 0;
  std::string outDir;
  int threads = 0;  // 0: FAD_THREADS env var, then hardware concurrency
};

BenchConfig benchConfigFromJson(const nlohmann::json& doc);
nlohmann::json benchConfigToJson(const BenchConfig& config);

struct BenchCell {
  std::string detector;
  std::string dataset;
  bool ok = false;
  std::string error;
  EvalReport report;
  std::vector<RocPoint> roc;
  std::vector<PrPoint> pr;
  nlohmann::json detectorParams;
  double wallMs = 0;
};

struct BenchReport {
  nlohmann::json configEcho;
  std::string version;
  std::vector<std::string> notes;
  std::vector<BenchCell> cells;
};

/// Runs every (detector, dataset) cell; failures are recorded in the cell and
/// do not stop the run. (config, seed) fully determines every number.
BenchReport runBench(const BenchConfig& config);

nlohmann::json benchReportToJson(const BenchReport& report);
std::string benchReportCsv(const BenchReport& report);

/// Writes report.json, report.csv and per-dataset roc_*.svg / pr_*.svg files.
void writeBenchOutputs(const BenchReport& report, const std::string& outDir);

}  // namespace fad
