#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fad/bench.hpp"
#include "test_support.hpp"

using namespace fad;
using nlohmann::json;

namespace {

json tinyConfig(std::uint64_t seed) {
  return json{
      {"seed", seed},
      {"datasets",
       json::array({json{{"name", "toy"},
                         {"simulate", json{{"model", "magnitude1"},
                                           {"fraction", 0.1},
                                           {"n", 24},
                                           {"p", 12}}}}})},
      {"detectors",
       json::array({json{{"name", "fT"}},
                    json{{"name", "FIF"},
                         {"params", json{{"num_trees", 8}, {"psi", 12}}}}})}};
}

}  // namespace

TEST_CASE("bench config validation") {
  CHECK_THROWS_AS(benchConfigFromJson(json{{"datasets", json::array()}}),
                  std::invalid_argument);
  json dup = tinyConfig(1);
  dup["detectors"].push_back(json{{"name", "fT"}});
  CHECK_THROWS_WITH_AS(benchConfigFromJson(dup), doctest::Contains("duplicate"),
                       std::invalid_argument);
}

TEST_CASE("a bench run produces one cell per detector-dataset pair") {
  const BenchConfig config = benchConfigFromJson(tinyConfig(5));
  const BenchReport report = runBench(config);
  REQUIRE(report.cells.size() == 2);
  for (const auto& cell : report.cells) {
    CHECK(cell.ok);
    CHECK(cell.report.auc >= 0.0);
    CHECK(cell.report.auc <= 1.0);
    CHECK(!cell.report.thresholdRule.empty());
    CHECK(!cell.detectorParams.empty());
  }
  // Report JSON echoes the config, the rule and detector parameters.
  const json doc = benchReportToJson(report);
  CHECK(doc.at("config").at("seed") == 5);
  CHECK(doc.at("cells")[0].contains("threshold_rule"));
  CHECK(doc.at("cells")[0].contains("params"));
  bool foundNote = false;
  for (const auto& note : report.notes) {
    foundNote = foundNote || note.find("OCSVM") != std::string::npos;
  }
  CHECK(foundNote);
}

TEST_CASE("bench runs are deterministic in (config, seed), any thread count") {
  Rng rng(301);
  for (int iter = 0; iter < 200; ++iter) {
    BenchConfig config = benchConfigFromJson(tinyConfig(rng.raw()));
    config.threads = 1;
    const BenchReport a = runBench(config);
    config.threads = 4;
    const BenchReport b = runBench(config);
    REQUIRE(a.cells.size() == b.cells.size());
    for (size_t c = 0; c < a.cells.size(); ++c) {
      CHECK(a.cells[c].ok == b.cells[c].ok);
      CHECK(a.cells[c].report.auc == b.cells[c].report.auc);
      CHECK(a.cells[c].report.ap == b.cells[c].report.ap);
      CHECK(a.cells[c].report.f1 == b.cells[c].report.f1);
      CHECK(a.cells[c].report.p_c == b.cells[c].report.p_c);
    }
  }
}

TEST_CASE("different seeds change the numbers") {
  const BenchReport a = runBench(benchConfigFromJson(tinyConfig(1)));
  const BenchReport b = runBench(benchConfigFromJson(tinyConfig(2)));
  bool anyDifferent = false;
  for (size_t c = 0; c < a.cells.size(); ++c) {
    anyDifferent = anyDifferent ||
                   a.cells[c].report.auc != b.cells[c].report.auc ||
                   a.cells[c].report.ap != b.cells[c].report.ap;
  }
  CHECK(anyDifferent);
}

TEST_CASE("a failing detector marks its cell and the run continues") {
  json config = tinyConfig(9);
  config["detectors"].push_back(
      json{{"name", "NoSuchDetector"}, {"id", "bad"}});
  const BenchReport report = runBench(benchConfigFromJson(config));
  REQUIRE(report.cells.size() == 3);
  int failed = 0;
  for (const auto& cell : report.cells) {
    if (!cell.ok) {
      ++failed;
      CHECK(cell.detector == "bad");
      CHECK(!cell.error.empty());
    } else {
      CHECK(cell.report.auc >= 0.0);
    }
  }
  CHECK(failed == 1);
}

TEST_CASE("bench outputs include valid SVG plots and a CSV table") {
  namespace fs = std::filesystem;
  const std::string dir = test::tempDir("bench");
  const BenchReport report = runBench(benchConfigFromJson(tinyConfig(3)));
  writeBenchOutputs(report, dir);
  CHECK(fs::exists(fs::path(dir) / "report.json"));
  CHECK(fs::exists(fs::path(dir) / "report.csv"));
  for (const auto* name : {"roc_toy.svg", "pr_toy.svg"}) {
    const fs::path path = fs::path(dir) / name;
    REQUIRE(fs::exists(path));
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::string error;
    CHECK_MESSAGE(test::xmlWellFormed(text, &error), error);
    CHECK(text.find("<svg") != std::string::npos);
  }
  const std::string csv = benchReportCsv(report);
  CHECK(csv.find("detector,dataset,status") == 0);
  CHECK(csv.find("fT,toy,ok") != std::string::npos);
}

TEST_CASE("file-backed datasets load through the config") {
  const std::string dir = test::tempDir("benchfiles");
  {
    std::ofstream curves(dir + "/c.csv");
    curves << "0,0.5,1\n1,2,3\n2,3,4\n0,0,0\n9,9,9\n";
    std::ofstream labels(dir + "/l.csv");
    labels << "-1\n-1\n-1\n1\n";
  }
  const json config = {
      {"seed", 4},
      {"datasets", json::array({json{{"name", "file"},
                                     {"curves", dir + "/c.csv"},
                                     {"labels", dir + "/l.csv"},
                                     {"grid", "header-row"}}})},
      {"detectors", json::array({json{{"name", "fT"}}})}};
  const BenchReport report = runBench(benchConfigFromJson(config));
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].ok);
}
