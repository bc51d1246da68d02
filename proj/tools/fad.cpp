// Command-line front end: simulate benchmark datasets, fit/persist detector
// models, score curve files, run detector x dataset benchmark matrices, and
// render SVG plots.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fad/bench.hpp"
#include "fad/csv.hpp"
#include "fad/detectors.hpp"
#include "fad/feature_maps.hpp"
#include "fad/metrics.hpp"
#include "fad/parallel.hpp"
#include "fad/simulate.hpp"
#include "fad/svg.hpp"
#include "fad/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json doc;
  in >> doc;
  return doc;
}

void writeJsonFile(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << doc.dump(2) << '\n';
}

struct SimulateArgs {
  std::string model = "magnitude1";
  double fraction = 0.05;
  fad::Index n = 200;
  fad::Index p = 128;
  std::uint64_t seed = 0;
  std::string kind = "smooth-random";
  double amplitude = 1.0;
  std::string out = "dataset";
};

int runSimulate(const SimulateArgs& args) {
  const fad::Grid grid = fad::Grid::uniform(args.p);
  fad::NormalBaseConfig baseConfig;
  baseConfig.kind = fad::normalKindFromString(args.kind);
  baseConfig.amplitude = args.amplitude;
  const fad::FunctionalDataset base =
      fad::genNormalBase(args.n, grid, baseConfig, fad::splitSeed(args.seed, 0));
  fad::ContaminationSpec spec{fad::anomalyModelFromString(args.model),
                              args.fraction, fad::splitSeed(args.seed, 1)};
  const fad::LabeledDataset labeled = fad::contaminate(base, spec);

  fad::saveCsv(labeled.data, args.out + "_curves.csv", /*headerRow=*/true);
  fad::saveLabelsCsv(labeled.labels, args.out + "_labels.csv");
  writeJsonFile(args.out + "_provenance.json",
                fad::provenanceToJson(labeled, spec));
  std::cout << "wrote " << args.out << "_curves.csv (" << labeled.data.numCurves()
            << " curves, " << labeled.labels.countAnomalies() << " anomalies)\n";
  return 0;
}

struct FitArgs {
  std::string detector = "FIF";
  std::string data;
  std::string gridMode = "header-row";
  std::string gridFile;
  std::string params;  // inline JSON
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out = "model.json";
};

int runFit(const FitArgs& args) {
  const fad::FunctionalDataset train = fad::loadCsv(
      args.data, fad::gridModeFromString(args.gridMode), args.gridFile);
  const json params =
      args.params.empty() ? json::object() : json::parse(args.params);
  auto detector = fad::fitDetector(args.detector, params, train, args.seed,
                                   fad::resolveThreads(args.threads));
  writeJsonFile(args.out, detector->toJson());
  std::cout << "wrote " << args.out << " (" << args.detector << ")\n";
  return 0;
}

struct ScoreArgs {
  std::string model;
  std::string data;
  std::string gridMode = "header-row";
  std::string gridFile;
  int threads = 0;
  std::string out = "scores.csv";
};

int runScore(const ScoreArgs& args) {
  auto detector = fad::detectorFromJson(loadJsonFile(args.model),
                                        fad::resolveThreads(args.threads));
  const fad::FunctionalDataset data = fad::loadCsv(
      args.data, fad::gridModeFromString(args.gridMode), args.gridFile);
  const fad::ScoreVector scores =
      detector->score(data, fad::resolveThreads(args.threads));
  fad::saveScoresCsv(scores, args.out);
  std::cout << "wrote " << args.out << " (" << scores.size() << " scores)\n";
  return 0;
}

struct BenchArgs {
  std::string config;
  std::string outDir;
  std::uint64_t seed = 0;
  bool seedSet = false;
  int threads = 0;
};

int runBenchCmd(const BenchArgs& args) {
  fad::BenchConfig config = fad::benchConfigFromJson(loadJsonFile(args.config));
  if (args.seedSet) config.seed = args.seed;
  if (!args.outDir.empty()) config.outDir = args.outDir;
  if (args.threads > 0) config.threads = args.threads;
  if (config.outDir.empty()) config.outDir = "bench_out";

  const fad::BenchReport report = fad::runBench(config);
  fad::writeBenchOutputs(report, config.outDir);

  int failed = 0;
  for (const auto& cell : report.cells) {
    if (cell.ok) {
      std::cout << cell.dataset << " / " << cell.detector << ": AUC "
                << cell.report.auc << ", AP " << cell.report.ap << ", F1 "
                << cell.report.f1 << ", p_c " << cell.report.p_c << '\n';
    } else {
      ++failed;
      std::cout << cell.dataset << " / " << cell.detector
                << ": FAILED: " << cell.error << '\n';
    }
  }
  std::cout << "report written to " << config.outDir << '\n';
  return failed > 0 ? 2 : 0;
}

struct PlotArgs {
  std::string kind = "scatter";  // scatter | roc | pr
  std::string data;
  std::string labels;
  std::string gridMode = "header-row";
  std::string gridFile;
  std::string map = "ms";
  std::string depth = "projection";
  std::vector<std::string> scoreFiles;
  std::string title;
  std::string out = "plot";
};

int runPlot(const PlotArgs& args) {
  const fad::LabelVector labels = fad::loadLabelsCsv(args.labels);
  if (args.kind == "scatter") {
    const fad::FunctionalDataset data = fad::loadCsv(
        args.data, fad::gridModeFromString(args.gridMode), args.gridFile);
    const fad::FeatureMap map = fad::featureMapFromString(args.map);
    const fad::OutlyingnessModel model(data,
                                       fad::baseDepthFromString(args.depth));
    const fad::Matrix features = model.features(map, data);
    if (labels.size() != features.rows()) {
      throw std::invalid_argument("label count does not match curve count");
    }
    // Scatter CSV: curve id, x, y, label.
    std::ofstream csv(args.out + "_scatter.csv");
    if (!csv) throw std::runtime_error("cannot write scatter csv");
    csv << "id,x,y,label\n";
    std::vector<fad::ScatterPoint> points;
    for (fad::Index i = 0; i < features.rows(); ++i) {
      csv << i << ',' << features(i, 0) << ',' << features(i, 1) << ','
          << labels[i] << '\n';
      points.push_back({features(i, 0), features(i, 1), labels[i]});
    }
    const std::string xLabel = "MO";
    const std::string yLabel =
        map == fad::FeatureMap::kMs ? "VO" : "sqrt(VO)/(1+MO)";
    const std::string title =
        args.title.empty() ? (args.map + " map (" + args.depth + ")") : args.title;
    fad::writeTextFile(args.out + "_scatter.svg",
                       fad::svgScatter(points, xLabel, yLabel, title));
    std::cout << "wrote " << args.out << "_scatter.csv and " << args.out
              << "_scatter.svg\n";
    return 0;
  }
  if (args.kind == "roc" || args.kind == "pr") {
    if (args.scoreFiles.empty()) {
      throw std::invalid_argument("roc/pr plots need at least one --scores file");
    }
    std::vector<std::pair<std::string, std::vector<fad::RocPoint>>> rocs;
    std::vector<std::pair<std::string, std::vector<fad::PrPoint>>> prs;
    for (const auto& file : args.scoreFiles) {
      const fad::ScoreVector scores = fad::loadScoresCsv(file);
      const std::string name = fs::path(file).stem().string();
      if (args.kind == "roc") {
        rocs.emplace_back(name, fad::rocCurve(scores, labels));
      } else {
        prs.emplace_back(name, fad::prCurve(scores, labels));
      }
    }
    const std::string title =
        args.title.empty() ? (args.kind + " overlay") : args.title;
    const std::string path = args.out + "_" + args.kind + ".svg";
    fad::writeTextFile(path, args.kind == "roc" ? fad::svgRocOverlay(rocs, title)
                                                : fad::svgPrOverlay(prs, title));
    std::cout << "wrote " << path << '\n';
    return 0;
  }
  throw std::invalid_argument("unknown plot kind: " + args.kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"functional anomaly detection toolkit"};
  app.set_version_flag("--version", fad::kVersion);
  app.require_subcommand(1);

  SimulateArgs simArgs;
  auto* sim = app.add_subcommand(
      "simulate", "generate a labeled synthetic benchmark dataset");
  sim->add_option("--model", simArgs.model, "anomaly model")
      ->check(CLI::IsMember({"isolated", "magnitude1", "magnitude2", "shape"}));
  sim->add_option("--fraction", simArgs.fraction, "anomaly fraction in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  sim->add_option("--n", simArgs.n, "number of curves")->check(CLI::PositiveNumber);
  sim->add_option("--p", simArgs.p, "grid length")->check(CLI::Range(2, 1 << 24));
  sim->add_option("--seed", simArgs.seed, "random seed");
  sim->add_option("--kind", simArgs.kind, "normal-curve generator")
      ->check(CLI::IsMember({"smooth-random", "ar-noise"}));
  sim->add_option("--amplitude", simArgs.amplitude, "normal-curve amplitude");
  sim->add_option("--out", simArgs.out, "output file prefix");

  FitArgs fitArgs;
  auto* fit = app.add_subcommand("fit", "fit a detector and persist its model");
  fit->add_option("--detector", fitArgs.detector, "registry detector name")
      ->check(CLI::IsMember(fad::detectorNames()));
  fit->add_option("--data", fitArgs.data, "training curves CSV")->required();
  fit->add_option("--grid-mode", fitArgs.gridMode, "grid recovery mode")
      ->check(CLI::IsMember({"uniform", "header-row", "sidecar-file"}));
  fit->add_option("--grid-file", fitArgs.gridFile, "sidecar grid file");
  fit->add_option("--params", fitArgs.params, "detector parameters as JSON");
  fit->add_option("--seed", fitArgs.seed, "random seed");
  fit->add_option("--threads", fitArgs.threads, "worker threads");
  fit->add_option("--out", fitArgs.out, "model output path");

  ScoreArgs scoreArgs;
  auto* score = app.add_subcommand("score", "score curves with a saved model");
  score->add_option("--model", scoreArgs.model, "model JSON path")->required();
  score->add_option("--data", scoreArgs.data, "curves CSV")->required();
  score->add_option("--grid-mode", scoreArgs.gridMode, "grid recovery mode")
      ->check(CLI::IsMember({"uniform", "header-row", "sidecar-file"}));
  score->add_option("--grid-file", scoreArgs.gridFile, "sidecar grid file");
  score->add_option("--threads", scoreArgs.threads, "worker threads");
  score->add_option("--out", scoreArgs.out, "score CSV output path");

  BenchArgs benchArgs;
  auto* bench = app.add_subcommand(
      "bench", "run a detector x dataset benchmark matrix");
  bench->add_option("--config", benchArgs.config, "benchmark config JSON")
      ->required();
  bench->add_option("--out", benchArgs.outDir, "output directory");
  auto* seedOpt = bench->add_option("--seed", benchArgs.seed, "master seed");
  bench->add_option("--threads", benchArgs.threads, "cell parallelism bound");
  bench->parse_complete_callback(
      [&benchArgs, seedOpt]() { benchArgs.seedSet = seedOpt->count() > 0; });

  PlotArgs plotArgs;
  auto* plot = app.add_subcommand("plot", "render SVG plots");
  plot->add_option("--kind", plotArgs.kind, "scatter | roc | pr")
      ->check(CLI::IsMember({"scatter", "roc", "pr"}));
  plot->add_option("--data", plotArgs.data, "curves CSV (scatter)");
  plot->add_option("--labels", plotArgs.labels, "labels CSV")->required();
  plot->add_option("--grid-mode", plotArgs.gridMode, "grid recovery mode");
  plot->add_option("--grid-file", plotArgs.gridFile, "sidecar grid file");
  plot->add_option("--map", plotArgs.map, "feature map (scatter)")
      ->check(CLI::IsMember({"ms", "fom"}));
  plot->add_option("--depth", plotArgs.depth, "base depth (scatter)")
      ->check(CLI::IsMember({"tukey", "projection", "asym_projection"}));
  plot->add_option("--scores", plotArgs.scoreFiles, "score CSV files (roc/pr)");
  plot->add_option("--title", plotArgs.title, "plot title");
  plot->add_option("--out", plotArgs.out, "output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1
  }

  try {
    if (sim->parsed()) return runSimulate(simArgs);
    if (fit->parsed()) return runFit(fitArgs);
    if (score->parsed()) return runScore(scoreArgs);
    if (bench->parsed()) return runBenchCmd(benchArgs);
    if (plot->parsed()) return runPlot(plotArgs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
