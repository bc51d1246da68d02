#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fad/feature_maps.hpp"
#include "fad/metrics.hpp"
#include "fad/simulate.hpp"
#include "test_support.hpp"

using namespace fad;

TEST_CASE("constant outlyingness collapses to (MO, 0)") {
  // Identical constant curves: projection depth is 1 everywhere for the
  // member value, so O = 0; a shifted query has constant positive O.
  const Grid grid = Grid::uniform(6);
  const FunctionalDataset data(grid, Matrix::Constant(5, 6, 2.0));
  const OutlyingnessModel model(data, BaseDepth::kProjection);

  const Eigen::RowVector2d deepest = model.msPoint(data.curve(0));
  CHECK(deepest[0] == doctest::Approx(0.0));
  CHECK(deepest[1] == doctest::Approx(0.0));

  const Vector shifted = Vector::Constant(6, 3.0);
  const Eigen::RowVector2d ms = model.msPoint(shifted);
  CHECK(ms[1] == doctest::Approx(0.0));  // constant series, zero variance
  CHECK(ms[0] > 0.0);
}

TEST_CASE("hand-computed MS features on the 2-point tukey toy set") {
  Vector t(2);
  t << 0.0, 1.0;
  Matrix values(3, 2);
  values << 0.0, 0.0, 1.0, 2.0, 2.0, 1.0;
  const FunctionalDataset data(Grid(std::move(t)), std::move(values));
  const Matrix ms = msFeatures(data, BaseDepth::kTukey);
  // Curve 1: pointwise tukey depths 2/3 and 1/3, O = 1/2 and 2.
  const double o0 = 0.5, o1 = 2.0;
  const double mo = 0.5 * (o0 + o1);
  const double vo = 0.5 * ((o0 - mo) * (o0 - mo) + (o1 - mo) * (o1 - mo));
  CHECK(ms(1, 0) == doctest::Approx(mo).epsilon(1e-12));
  CHECK(ms(1, 1) == doctest::Approx(vo).epsilon(1e-12));
}

TEST_CASE("fom transforms ms coordinates") {
  Rng rng(81);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 3 + static_cast<Index>(rng.integer(8));
    const Index p = 3 + static_cast<Index>(rng.integer(8));
    const FunctionalDataset data = test::randomDataset(rng, n, p);
    const auto base = static_cast<BaseDepth>(rng.integer(3));
    const Matrix ms = msFeatures(data, base);
    const Matrix fom = fomFeatures(data, base);
    for (Index i = 0; i < n; ++i) {
      CHECK(ms(i, 1) >= 0.0);
      CHECK(fom(i, 0) >= 0.0);
      CHECK(fom(i, 1) >= 0.0);
      CHECK(fom(i, 0) == ms(i, 0));
      CHECK(fom(i, 1) == doctest::Approx(std::sqrt(ms(i, 1)) /
                                         (1.0 + ms(i, 0)))
                             .epsilon(1e-12));
    }
  }
}

TEST_CASE("fom point arithmetic matches the stated examples") {
  // (MO, VO) = (1, 4) maps to (1, 1).
  CHECK(std::sqrt(4.0) / (1.0 + 1.0) == doctest::Approx(1.0));
}

TEST_CASE("depth-zero outlyingness is capped") {
  Rng rng(82);
  const FunctionalDataset data = test::randomDataset(rng, 5, 7);
  const OutlyingnessModel model(data, BaseDepth::kTukey);
  const Vector far = Vector::Constant(7, 1e9);
  const Vector series = model.series(far);
  for (Index j = 0; j < series.size(); ++j) {
    CHECK(series[j] == kOutlyingnessCap);
  }
  const Eigen::RowVector2d ms = model.msPoint(far);
  CHECK(std::isfinite(ms[0]));
  CHECK(std::isfinite(ms[1]));
}

TEST_CASE("VO vanishes exactly when the outlyingness series is constant") {
  Rng rng(83);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 4 + static_cast<Index>(rng.integer(6));
    const Index p = 3 + static_cast<Index>(rng.integer(6));
    const FunctionalDataset data = test::randomDataset(rng, n, p);
    const OutlyingnessModel model(data, BaseDepth::kProjection);
    const Index q = static_cast<Index>(rng.integer(static_cast<uint64_t>(n)));
    const Vector series = model.series(data.curve(q));
    const Eigen::RowVector2d ms = model.msPoint(data.curve(q));
    const bool constant =
        (series.array() == series[0]).all();
    if (constant) {
      CHECK(ms[1] == 0.0);
    } else {
      CHECK(ms[1] > 0.0);
    }
  }
}

TEST_CASE("training members reproduce their training features exactly") {
  Rng rng(84);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 4 + static_cast<Index>(rng.integer(8));
    const Index p = 3 + static_cast<Index>(rng.integer(6));
    const FunctionalDataset data = test::randomDataset(rng, n, p);
    const auto base = static_cast<BaseDepth>(rng.integer(3));
    const OutlyingnessModel model(data, base);
    const Matrix features = model.msFeatures(data);
    const Index q = static_cast<Index>(rng.integer(static_cast<uint64_t>(n)));
    const Eigen::RowVector2d again = model.msPoint(data.curve(q));
    CHECK(again[0] == features(q, 0));
    CHECK(again[1] == features(q, 1));
  }
}

TEST_CASE("identical train and test curves receive identical scores") {
  Rng rng(85);
  const FunctionalDataset data = test::randomDataset(rng, 24, 10);
  IForestConfig config;
  config.numTrees = 16;
  config.seed = 4;
  const FeatureMapDetector detector = FeatureMapDetector::fit(
      data, FeatureMap::kMs, BaseDepth::kProjection, config);
  const Vector train = detector.scores(data);
  const Vector again = detector.scores(data);
  CHECK(train == again);
}

TEST_CASE("ms+if separates magnitude2 contamination at desk scale") {
  const Grid grid = Grid::uniform(96);
  NormalBaseConfig base;
  const FunctionalDataset normals = genNormalBase(150, grid, base, 900);
  const LabeledDataset labeled =
      contaminate(normals, {AnomalyModel::kMagnitude2, 0.08, 901});
  IForestConfig config;
  config.numTrees = 100;
  config.seed = 902;
  const FeatureMapDetector detector = FeatureMapDetector::fit(
      labeled.data, FeatureMap::kMs, BaseDepth::kProjection, config);
  const ScoreVector scores(detector.scores(labeled.data));
  CHECK(auc(scores, labeled.labels) > 0.9);
}

TEST_CASE("pipeline is reproducible for a fixed seed") {
  Rng rng(86);
  const FunctionalDataset data = test::randomDataset(rng, 30, 8);
  IForestConfig config;
  config.numTrees = 12;
  config.seed = 31;
  const FeatureMapDetector a = FeatureMapDetector::fit(
      data, FeatureMap::kFom, BaseDepth::kAsymProjection, config);
  const FeatureMapDetector b = FeatureMapDetector::fit(
      data, FeatureMap::kFom, BaseDepth::kAsymProjection, config);
  CHECK(a.scores(data) == b.scores(data));
}
