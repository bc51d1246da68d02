#include "fad/bench.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fad/detectors.hpp"
#include "fad/parallel.hpp"
#include "fad/rng.hpp"
#include "fad/svg.hpp"
#include "fad/version.hpp"

namespace fad {

namespace {

using nlohmann::json;

FunctionalDataset materializeCurves(const DatasetSpec& spec,
                                    std::uint64_t fallbackSeed,
                                    LabelVector* labels) {
  if (spec.simulate) {
    const std::uint64_t seed = spec.seed ? *spec.seed : fallbackSeed;
    const FunctionalDataset base = genNormalBase(
        spec.n, Grid::uniform(spec.p), spec.base, splitSeed(seed, 0));
    ContaminationSpec contamination{spec.model, spec.fraction,
                                    splitSeed(seed, 1)};
    LabeledDataset labeled = contaminate(base, contamination);
    if (labels) *labels = labeled.labels;
    return labeled.data;
  }
  FunctionalDataset data = loadCsv(spec.curvesPath, spec.gridMode, spec.gridPath);
  if (labels) *labels = loadLabelsCsv(spec.labelsPath);
  return data;
}

std::string sanitizeFileName(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  }
  return out;
}

}  // namespace

BenchConfig benchConfigFromJson(const json& doc) {
  BenchConfig config;
  config.seed = doc.value("seed", std::uint64_t{0});
  config.alpha = doc.value("alpha", 0.0);
  config.outDir = doc.value("out_dir", std::string{});
  config.threads = doc.value("threads", 0);

  if (!doc.contains("datasets") || doc.at("datasets").empty()) {
    throw std::invalid_argument("config needs at least one dataset");
  }
  if (!doc.contains("detectors") || doc.at("detectors").empty()) {
    throw std::invalid_argument("config needs at least one detector");
  }

  for (const auto& d : doc.at("datasets")) {
    DatasetSpec spec;
    spec.name = d.at("name").get<std::string>();
    if (d.contains("simulate")) {
      spec.simulate = true;
      const auto& s = d.at("simulate");
      spec.model = anomalyModelFromString(s.at("model").get<std::string>());
      spec.fraction = s.at("fraction").get<double>();
      spec.n = s.at("n").get<Index>();
      spec.p = s.at("p").get<Index>();
      if (s.contains("seed")) spec.seed = s.at("seed").get<std::uint64_t>();
      if (s.contains("kind")) {
        spec.base.kind = normalKindFromString(s.at("kind").get<std::string>());
      }
      if (s.contains("amplitude")) {
        spec.base.amplitude = s.at("amplitude").get<double>();
      }
      if (s.contains("ar_rho")) spec.base.arRho = s.at("ar_rho").get<double>();
      if (s.contains("ar_sigma")) {
        spec.base.arSigma = s.at("ar_sigma").get<double>();
      }
      if (s.contains("cosine_atoms")) {
        spec.base.cosineAtoms = s.at("cosine_atoms").get<Index>();
      }
    } else {
      spec.curvesPath = d.at("curves").get<std::string>();
      spec.labelsPath = d.at("labels").get<std::string>();
      spec.gridMode = gridModeFromString(d.value("grid", "header-row"));
      spec.gridPath = d.value("grid_file", std::string{});
    }
    config.datasets.push_back(std::move(spec));
  }

  std::map<std::string, int> seen;
  for (const auto& d : doc.at("detectors")) {
    DetectorSpec spec;
    spec.name = d.at("name").get<std::string>();
    spec.id = d.value("id", spec.name);
    spec.params = d.value("params", json::object());
    if (++seen[spec.id] > 1) {
      throw std::invalid_argument("duplicate detector id: " + spec.id);
    }
    config.detectors.push_back(std::move(spec));
  }
  std::map<std::string, int> seenData;
  for (const auto& d : config.datasets) {
    if (++seenData[d.name] > 1) {
      throw std::invalid_argument("duplicate dataset name: " + d.name);
    }
  }
  return config;
}

json benchConfigToJson(const BenchConfig& config) {
  json doc;
  doc["seed"] = config.seed;
  doc["alpha"] = config.alpha;
  doc["out_dir"] = config.outDir;
  doc["threads"] = config.threads;
  json datasets = json::array();
  for (const auto& d : config.datasets) {
    json e;
    e["name"] = d.name;
    if (d.simulate) {
      json s;
      s["model"] = toString(d.model);
      s["fraction"] = d.fraction;
      s["n"] = d.n;
      s["p"] = d.p;
      if (d.seed) s["seed"] = *d.seed;
      s["kind"] = toString(d.base.kind);
      s["amplitude"] = d.base.amplitude;
      s["ar_rho"] = d.base.arRho;
      s["ar_sigma"] = d.base.arSigma;
      s["cosine_atoms"] = d.base.cosineAtoms;
      e["simulate"] = std::move(s);
    } else {
      e["curves"] = d.curvesPath;
      e["labels"] = d.labelsPath;
      e["grid"] = toString(d.gridMode);
      if (!d.gridPath.empty()) e["grid_file"] = d.gridPath;
    }
    datasets.push_back(std::move(e));
  }
  doc["datasets"] = std::move(datasets);
  json detectors = json::array();
  for (const auto& d : config.detectors) {
    detectors.push_back(
        json{{"name", d.name}, {"id", d.id}, {"params", d.params}});
  }
  doc["detectors"] = std::move(detectors);
  return doc;
}

BenchReport runBench(const BenchConfig& config) {
  BenchReport report;
  report.configEcho = benchConfigToJson(config);
  report.version = kVersion;
  report.notes.push_back(
      "decision rule: top-fraction by the evaluation set's labeled anomaly "
      "fraction unless alpha is set explicitly");
  report.notes.push_back(
      "OCSVM rows are omitted: no in-scope implementation is provided");

  const Index numDatasets = static_cast<Index>(config.datasets.size());
  const Index numDetectors = static_cast<Index>(config.detectors.size());

  // Datasets are materialized once, each from its own substream.
  std::vector<FunctionalDataset> datasets;
  std::vector<LabelVector> labels;
  std::vector<std::string> datasetErrors(static_cast<size_t>(numDatasets));
  std::vector<bool> datasetOk(static_cast<size_t>(numDatasets), false);
  for (Index d = 0; d < numDatasets; ++d) {
    try {
      LabelVector lv(std::vector<int>{LabelVector::kNormal});
      FunctionalDataset data = materializeCurves(
          config.datasets[static_cast<size_t>(d)],
          splitSeed(config.seed, 1000 + static_cast<std::uint64_t>(d)), &lv);
      if (lv.size() != data.numCurves()) {
        throw std::invalid_argument("label count does not match curve count");
      }
      datasets.push_back(std::move(data));
      labels.push_back(std::move(lv));
      datasetOk[static_cast<size_t>(d)] = true;
    } catch (const std::exception& e) {
      datasetErrors[static_cast<size_t>(d)] = e.what();
      // Keep positions aligned with a placeholder.
      datasets.push_back(FunctionalDataset(Grid::uniform(2), Matrix::Zero(1, 2)));
      labels.push_back(LabelVector(std::vector<int>{LabelVector::kNormal}));
    }
  }

  const Index cellCount = numDatasets * numDetectors;
  report.cells.resize(static_cast<size_t>(cellCount));
  const int threads = resolveThreads(config.threads);

  parallelFor(cellCount, threads, [&](Index cell) {
    const Index d = cell / numDetectors;
    const Index k = cell % numDetectors;
    const auto& datasetSpec = config.datasets[static_cast<size_t>(d)];
    const auto& detectorSpec = config.detectors[static_cast<size_t>(k)];
    BenchCell& out = report.cells[static_cast<size_t>(cell)];
    out.detector = detectorSpec.id;
    out.dataset = datasetSpec.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      if (!datasetOk[static_cast<size_t>(d)]) {
        throw std::runtime_error("dataset failed to load: " +
                                 datasetErrors[static_cast<size_t>(d)]);
      }
      const FunctionalDataset& data = datasets[static_cast<size_t>(d)];
      const LabelVector& truth = labels[static_cast<size_t>(d)];
      auto detector =
          fitDetector(detectorSpec.name, detectorSpec.params, data,
                      splitSeed(config.seed, static_cast<std::uint64_t>(cell)),
                      1);
      out.detectorParams = detector->paramsEcho();
      const ScoreVector scores = detector->scoreTraining(1);
      double alpha = config.alpha;
      if (alpha <= 0.0) {
        alpha = static_cast<double>(truth.countAnomalies()) /
                static_cast<double>(truth.size());
      }
      out.report = evaluateScores(scores, truth, alpha);
      out.roc = rocCurve(scores, truth);
      out.pr = prCurve(scores, truth);
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
    out.wallMs = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  });
  return report;
}

json benchReportToJson(const BenchReport& report) {
  json doc;
  doc["format"] = "fad-report";
  doc["version"] = report.version;
  doc["config"] = report.configEcho;
  doc["notes"] = report.notes;
  json cells = json::array();
  for (const auto& cell : report.cells) {
    json c;
    c["detector"] = cell.detector;
    c["dataset"] = cell.dataset;
    c["ok"] = cell.ok;
    c["wall_ms"] = cell.wallMs;
    if (cell.ok) {
      c["f1"] = cell.report.f1;
      c["ap"] = cell.report.ap;
      c["auc"] = cell.report.auc;
      c["p_c"] = cell.report.p_c;
      c["threshold_rule"] = cell.report.thresholdRule;
      c["params"] = cell.detectorParams;
      json roc = json::array();
      for (const auto& pt : cell.roc) roc.push_back(json::array({pt.fpr, pt.tpr}));
      c["roc"] = std::move(roc);
      json pr = json::array();
      for (const auto& pt : cell.pr) {
        pr.push_back(json::array({pt.recall, pt.precision}));
      }
      c["pr"] = std::move(pr);
    } else {
      c["error"] = cell.error;
    }
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  return doc;
}

std::string benchReportCsv(const BenchReport& report) {
  std::ostringstream os;
  os << "detector,dataset,status,f1,ap,auc,p_c,wall_ms\n";
  os.precision(6);
  for (const auto& cell : report.cells) {
    os << cell.detector << ',' << cell.dataset << ','
       << (cell.ok ? "ok" : "failed") << ',';
    if (cell.ok) {
      os << cell.report.f1 << ',' << cell.report.ap << ',' << cell.report.auc
         << ',' << cell.report.p_c << ',';
    } else {
      os << ",,,,";
    }
    os << cell.wallMs << '\n';
  }
  return os.str();
}

void writeBenchOutputs(const BenchReport& report, const std::string& outDir) {
  namespace fs = std::filesystem;
  fs::create_directories(outDir);
  writeTextFile((fs::path(outDir) / "report.json").string(),
                benchReportToJson(report).dump(2) + "\n");
  writeTextFile((fs::path(outDir) / "report.csv").string(),
                benchReportCsv(report));

  // One ROC and one PR overlay per dataset, all detectors on the same axes.
  std::map<std::string, std::vector<const BenchCell*>> byDataset;
  for (const auto& cell : report.cells) {
    byDataset[cell.dataset].push_back(&cell);
  }
  for (const auto& [dataset, cells] : byDataset) {
    std::vector<std::pair<std::string, std::vector<RocPoint>>> rocs;
    std::vector<std::pair<std::string, std::vector<PrPoint>>> prs;
    for (const BenchCell* cell : cells) {
      if (!cell->ok) continue;
      rocs.emplace_back(cell->detector, cell->roc);
      prs.emplace_back(cell->detector, cell->pr);
    }
    const std::string stem = sanitizeFileName(dataset);
    writeTextFile((fs::path(outDir) / ("roc_" + stem + ".svg")).string(),
                  svgRocOverlay(rocs, "ROC - " + dataset));
    writeTextFile((fs::path(outDir) / ("pr_" + stem + ".svg")).string(),
                  svgPrOverlay(prs, "PR - " + dataset));
  }
}

}  // namespace fad
