#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fad/metrics.hpp"
#include "test_support.hpp"

using namespace fad;

namespace {

ScoreVector scoresOf(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return ScoreVector(std::move(v));
}

}  // namespace

TEST_CASE("auc basics") {
  CHECK(auc(scoresOf({0.9, 0.8, 0.2, 0.1}), LabelVector({1, 1, -1, -1})) ==
        doctest::Approx(1.0));
  CHECK(auc(scoresOf({0.5, 0.5, 0.5, 0.5}), LabelVector({1, 1, -1, -1})) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(auc(scoresOf({1.0, 2.0}), LabelVector({1, 1})),
                  std::invalid_argument);
}

TEST_CASE("auc equals the pairwise concordance oracle exactly") {
  Rng rng(201);
  for (int iter = 0; iter < 300; ++iter) {
    const Index n = 4 + static_cast<Index>(rng.integer(37));  // n <= 40
    const Vector scores = test::randomScoresWithTies(rng, n);
    const auto labels = test::randomLabelsBothClasses(rng, n);
    CHECK(auc(ScoreVector(scores), LabelVector(labels)) ==
          test::aucPairwise(scores, labels));
  }
}

TEST_CASE("auc is invariant under strictly increasing score transforms") {
  Rng rng(202);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 4 + static_cast<Index>(rng.integer(30));
    const Vector scores = test::randomScoresWithTies(rng, n);
    const auto labels = test::randomLabelsBothClasses(rng, n);
    Vector mapped(n);
    for (Index i = 0; i < n; ++i) {
      mapped[i] = std::exp(scores[i]) + 3.0 * scores[i];
    }
    CHECK(auc(ScoreVector(scores), LabelVector(labels)) ==
          doctest::Approx(auc(ScoreVector(mapped), LabelVector(labels)))
              .epsilon(1e-12));
  }
}

TEST_CASE("auc of the negated scores complements to 1, ties included") {
  Rng rng(203);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 4 + static_cast<Index>(rng.integer(30));
    const Vector scores = test::randomScoresWithTies(rng, n);
    const auto labels = test::randomLabelsBothClasses(rng, n);
    const double a = auc(ScoreVector(scores), LabelVector(labels));
    const double b = auc(ScoreVector((-scores).eval()), LabelVector(labels));
    CHECK(a + b == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("roc endpoints and monotonicity") {
  Rng rng(204);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 4 + static_cast<Index>(rng.integer(40));
    const Vector scores = test::randomScoresWithTies(rng, n);
    const auto labels = test::randomLabelsBothClasses(rng, n);
    const auto curve = rocCurve(ScoreVector(scores), LabelVector(labels));
    REQUIRE(curve.size() >= 2);
    CHECK(curve.front().fpr == 0.0);
    CHECK(curve.front().tpr == 0.0);
    CHECK(curve.back().fpr == doctest::Approx(1.0));
    CHECK(curve.back().tpr == doctest::Approx(1.0));
    for (size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].fpr >= curve[i - 1].fpr);
      CHECK(curve[i].tpr >= curve[i - 1].tpr);
    }
  }
}

TEST_CASE("average precision worked examples") {
  // Perfect ranking with 2 positives of 4.
  CHECK(averagePrecision(scoresOf({4, 3, 2, 1}), LabelVector({1, 1, -1, -1})) ==
        doctest::Approx(1.0));
  // Positives ranked 2nd and 4th.
  CHECK(averagePrecision(scoresOf({4, 3, 2, 1}), LabelVector({-1, 1, -1, 1})) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(
      averagePrecision(scoresOf({1, 2}), LabelVector({-1, -1})),
      std::invalid_argument);
}

TEST_CASE("average precision equals the threshold enumeration oracle") {
  Rng rng(205);
  for (int iter = 0; iter < 300; ++iter) {
    const Index n = 3 + static_cast<Index>(rng.integer(28));  // n <= 30
    const Vector scores = test::randomScoresWithTies(rng, n);
    auto labels = test::randomLabelsBothClasses(rng, n);
    CHECK(averagePrecision(ScoreVector(scores), LabelVector(labels)) ==
          doctest::Approx(test::apThresholdEnumeration(scores, labels))
              .epsilon(1e-12));
  }
}

TEST_CASE("constant scores give AP exactly equal to prevalence") {
  Rng rng(206);
  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 3 + static_cast<Index>(rng.integer(40));
    const auto labels = test::randomLabelsBothClasses(rng, n);
    const Vector constant = Vector::Constant(n, rng.uniform());
    double positives = 0;
    for (int v : labels) positives += v == 1;
    CHECK(averagePrecision(ScoreVector(constant), LabelVector(labels)) ==
          doctest::Approx(positives / static_cast<double>(n)).epsilon(1e-12));
  }
}

TEST_CASE("mean AP over random scorings stays at or above prevalence") {
  // Step-interpolated AP of a single adversarial ranking can dip below the
  // prevalence (e.g. both positives last of four gives 5/12 < 1/2), so the
  // calibration claim is checked in expectation over random scorings.
  Rng rng(207);
  for (int iter = 0; iter < 20; ++iter) {
    const Index n = 8 + static_cast<Index>(rng.integer(20));
    const auto labels = test::randomLabelsBothClasses(rng, n);
    double positives = 0;
    for (int v : labels) positives += v == 1;
    const double prevalence = positives / static_cast<double>(n);
    double apSum = 0.0;
    const int repeats = 400;
    for (int r = 0; r < repeats; ++r) {
      Vector scores(n);
      for (Index i = 0; i < n; ++i) scores[i] = rng.uniform();
      apSum += averagePrecision(ScoreVector(scores), LabelVector(labels));
    }
    CHECK(apSum / repeats >= prevalence - 0.02);
  }
}

TEST_CASE("pr curve endpoints") {
  Rng rng(208);
  const Vector scores = test::randomScoresWithTies(rng, 20);
  const auto labels = test::randomLabelsBothClasses(rng, 20);
  const auto curve = prCurve(ScoreVector(scores), LabelVector(labels));
  REQUIRE(!curve.empty());
  CHECK(curve.back().recall == doctest::Approx(1.0));
  double positives = 0;
  for (int v : labels) positives += v == 1;
  CHECK(curve.back().precision == doctest::Approx(positives / 20.0));
}

TEST_CASE("classify_top_fraction flags ceil(alpha n) rows, stable on ties") {
  const LabelVector flagged =
      classifyTopFraction(scoresOf({1, 2, 3, 4}), 0.5);
  CHECK(flagged.labels() == std::vector<int>{-1, -1, 1, 1});

  const LabelVector one = classifyTopFraction(scoresOf({5, 9, 1, 2}), 0.1);
  CHECK(one.countAnomalies() == 1);
  CHECK(one[1] == LabelVector::kAnomaly);

  const LabelVector tied =
      classifyTopFraction(scoresOf({7, 7, 7, 7, 7}), 0.4);
  CHECK(tied.labels() == std::vector<int>{1, 1, -1, -1, -1});

  CHECK_THROWS_AS(classifyTopFraction(scoresOf({1, 2}), 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(classifyTopFraction(scoresOf({1, 2}), 0.0),
                  std::invalid_argument);
}

TEST_CASE("f1 and sensitivity") {
  const LabelVector truth({1, 1, 1, 1, -1, -1, -1});
  CHECK(f1AndSensitivity(truth, truth).f1 == doctest::Approx(1.0));
  CHECK(f1AndSensitivity(truth, truth).p_c == doctest::Approx(1.0));

  const LabelVector nothing({-1, -1, -1, -1, -1, -1, -1});
  CHECK(f1AndSensitivity(nothing, truth).f1 == doctest::Approx(0.0));
  CHECK(f1AndSensitivity(nothing, truth).p_c == doctest::Approx(0.0));

  // TP=2, FP=1, FN=2 -> F1 = 4/7, p_c = 1/2.
  const LabelVector t2({1, 1, 1, 1, -1, -1});
  const LabelVector p2({1, 1, -1, -1, 1, -1});
  const F1Sensitivity fs = f1AndSensitivity(p2, t2);
  CHECK(fs.f1 == doctest::Approx(4.0 / 7.0));
  CHECK(fs.p_c == doctest::Approx(0.5));

  CHECK_THROWS_AS(f1AndSensitivity(nothing, nothing), std::invalid_argument);
}

TEST_CASE("evaluate_scores reports the threshold rule") {
  Rng rng(209);
  const Vector scores = test::randomScoresWithTies(rng, 30);
  const auto labels = test::randomLabelsBothClasses(rng, 30);
  const EvalReport report =
      evaluateScores(ScoreVector(scores), LabelVector(labels), 0.2);
  CHECK(!report.thresholdRule.empty());
  CHECK(report.auc >= 0.0);
  CHECK(report.auc <= 1.0);
  CHECK(report.ap >= 0.0);
  CHECK(report.ap <= 1.0);
  CHECK(report.f1 >= 0.0);
  CHECK(report.f1 <= 1.0);
  CHECK(report.p_c >= 0.0);
  CHECK(report.p_c <= 1.0);
}
