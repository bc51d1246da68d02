#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fad/detectors.hpp"
#include "fad/simulate.hpp"
#include "test_support.hpp"

using namespace fad;
using nlohmann::json;

namespace {

FunctionalDataset smallLabeledSet(LabelVector* labels) {
  const Grid grid = Grid::uniform(24);
  NormalBaseConfig base;
  const FunctionalDataset normals = genNormalBase(40, grid, base, 700);
  const LabeledDataset labeled =
      contaminate(normals, {AnomalyModel::kMagnitude1, 0.1, 701});
  if (labels) *labels = labeled.labels;
  return labeled.data;
}

}  // namespace

TEST_CASE("registry exposes the 12 built-in detectors and fits all of them") {
  const auto& names = detectorNames();
  REQUIRE(names.size() == 12);
  LabelVector labels({-1});
  const FunctionalDataset data = smallLabeledSet(&labels);
  for (const auto& name : names) {
    auto detector = fitDetector(name, json::object(), data, 99);
    const ScoreVector scores = detector->scoreTraining(2);
    REQUIRE(scores.size() == data.numCurves());
    for (Index i = 0; i < scores.size(); ++i) {
      CHECK(std::isfinite(scores[i]));
    }
    CHECK(!detector->paramsEcho().empty());
  }
  CHECK_THROWS_AS(fitDetector("nope", json::object(), data, 1),
                  std::invalid_argument);
}

TEST_CASE("model documents round-trip through json with identical scores") {
  LabelVector labels({-1});
  const FunctionalDataset data = smallLabeledSet(&labels);
  for (const auto& name : detectorNames()) {
    auto fitted = fitDetector(name, json::object(), data, 42);
    const json doc = fitted->toJson();
    CHECK(doc.at("format") == "fad-model");
    CHECK(doc.at("detector") == name);
    auto loaded = detectorFromJson(doc);
    const ScoreVector a = fitted->score(data, 1);
    const ScoreVector b = loaded->score(data, 1);
    REQUIRE(a.size() == b.size());
    CHECK(a.values() == b.values());
  }
}

TEST_CASE("fitting twice with one seed gives identical model documents") {
  LabelVector labels({-1});
  const FunctionalDataset data = smallLabeledSet(&labels);
  for (const auto& name : detectorNames()) {
    auto a = fitDetector(name, json::object(), data, 7);
    auto b = fitDetector(name, json::object(), data, 7);
    CHECK(a->toJson().dump() == b->toJson().dump());
  }
}

TEST_CASE("scoring a mismatched grid raises an explicit error") {
  LabelVector labels({-1});
  const FunctionalDataset data = smallLabeledSet(&labels);
  const FunctionalDataset other(Grid::uniform(10),
                                Matrix::Zero(3, 10));
  for (const auto& name : detectorNames()) {
    auto detector = fitDetector(name, json::object(), data, 5);
    CHECK_THROWS_WITH_AS(detector->score(other, 1),
                         doctest::Contains("grid"), std::invalid_argument);
  }
}

TEST_CASE("detector parameters can be overridden through params json") {
  LabelVector labels({-1});
  const FunctionalDataset data = smallLabeledSet(&labels);
  auto fif = fitDetector("FIF", json{{"num_trees", 7}, {"psi", 10}}, data, 1);
  CHECK(fif->paramsEcho().at("num_trees") == 7);
  CHECK(fif->paramsEcho().at("psi") == 10);
  auto ach = fitDetector("ACH", json{{"j", 3}, {"num_subsets", 50}}, data, 1);
  CHECK(ach->paramsEcho().at("j") == 3);
  auto fpca = fitDetector("FPCA+LOF", json{{"k", 4}, {"lof_k", 5}}, data, 1);
  CHECK(fpca->paramsEcho().at("k") == 4);
  CHECK(fpca->paramsEcho().at("lof_k") == 5);
}

TEST_CASE("training scores are parallelism-invariant for every detector") {
  LabelVector labels({-1});
  const FunctionalDataset data = smallLabeledSet(&labels);
  for (const auto& name : detectorNames()) {
    auto detector = fitDetector(name, json::object(), data, 12);
    const ScoreVector serial = detector->scoreTraining(1);
    const ScoreVector parallel = detector->scoreTraining(4);
    CHECK(serial.values() == parallel.values());
  }
}
