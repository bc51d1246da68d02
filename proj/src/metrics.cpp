#include "fad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fad {

namespace {

void checkPaired(const ScoreVector& scores, const LabelVector& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
}

struct ScoreGroups {
  // Indices sorted by descending score, plus group boundaries over ties.
  std::vector<Index> order;
  std::vector<size_t> groupEnd;  // exclusive end of each tie group
};

ScoreGroups descendingGroups(const ScoreVector& scores) {
  ScoreGroups g;
  g.order.resize(static_cast<size_t>(scores.size()));
  std::iota(g.order.begin(), g.order.end(), Index{0});
  std::stable_sort(g.order.begin(), g.order.end(), [&](Index a, Index b) {
    return scores[a] > scores[b];
  });
  size_t i = 0;
  while (i < g.order.size()) {
    size_t j = i + 1;
    while (j < g.order.size() &&
           scores[g.order[j]] == scores[g.order[i]]) {
      ++j;
    }
    g.groupEnd.push_back(j);
    i = j;
  }
  return g;
}

}  // namespace

double auc(const ScoreVector& scores, const LabelVector& labels) {
  checkPaired(scores, labels);
  const Index n = scores.size();
  const Index pos = labels.countAnomalies();
  const Index neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw std::invalid_argument("AUC needs both classes present");
  }
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return scores[a] < scores[b]; });
  // Midranks over tie groups, 1-based.
  double posRankSum = 0.0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * (static_cast<double>(i + 1) +
                                  static_cast<double>(j));
    for (size_t q = i; q < j; ++q) {
      if (labels[order[q]] == LabelVector::kAnomaly) posRankSum += midrank;
    }
    i = j;
  }
  const double m = static_cast<double>(pos);
  const double u = posRankSum - m * (m + 1.0) * 0.5;
  return u / (m * static_cast<double>(neg));
}

std::vector<RocPoint> rocCurve(const ScoreVector& scores,
                               const LabelVector& labels) {
  checkPaired(scores, labels);
  const Index pos = labels.countAnomalies();
  const Index neg = labels.size() - pos;
  if (pos == 0 || neg == 0) {
    throw std::invalid_argument("ROC needs both classes present");
  }
  const ScoreGroups g = descendingGroups(scores);
  std::vector<RocPoint> curve;
  curve.push_back({0.0, 0.0});
  double tp = 0.0, fp = 0.0;
  size_t begin = 0;
  for (size_t end : g.groupEnd) {
    for (size_t q = begin; q < end; ++q) {
      if (labels[g.order[q]] == LabelVector::kAnomaly) {
        tp += 1.0;
      } else {
        fp += 1.0;
      }
    }
    curve.push_back({fp / static_cast<double>(neg),
                     tp / static_cast<double>(pos)});
    begin = end;
  }
  return curve;
}

std::vector<PrPoint> prCurve(const ScoreVector& scores,
                             const LabelVector& labels) {
  checkPaired(scores, labels);
  const Index pos = labels.countAnomalies();
  if (pos == 0) {
    throw std::invalid_argument("PR curve needs at least one positive");
  }
  const ScoreGroups g = descendingGroups(scores);
  std::vector<PrPoint> curve;
  double tp = 0.0, flagged = 0.0;
  size_t begin = 0;
  for (size_t end : g.groupEnd) {
    for (size_t q = begin; q < end; ++q) {
      if (labels[g.order[q]] == LabelVector::kAnomaly) tp += 1.0;
      flagged += 1.0;
    }
    curve.push_back({tp / static_cast<double>(pos), tp / flagged});
    begin = end;
  }
  return curve;
}

double averagePrecision(const ScoreVector& scores, const LabelVector& labels) {
  const auto curve = prCurve(scores, labels);
  double ap = 0.0;
  double prevRecall = 0.0;
  for (const auto& pt : curve) {
    ap += (pt.recall - prevRecall) * pt.precision;
    prevRecall = pt.recall;
  }
  return ap;
}

LabelVector classifyTopFraction(const ScoreVector& scores, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  const Index n = scores.size();
  const Index flagged = static_cast<Index>(
      std::ceil(alpha * static_cast<double>(n)));
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return scores[a] > scores[b]; });
  std::vector<int> labels(static_cast<size_t>(n), LabelVector::kNormal);
  for (Index i = 0; i < flagged && i < n; ++i) {
    labels[static_cast<size_t>(order[static_cast<size_t>(i)])] =
        LabelVector::kAnomaly;
  }
  return LabelVector(std::move(labels));
}

F1Sensitivity f1AndSensitivity(const LabelVector& predicted,
                               const LabelVector& truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("predicted and truth differ in length");
  }
  double tp = 0, fp = 0, fn = 0;
  for (Index i = 0; i < truth.size(); ++i) {
    const bool predPos = predicted[i] == LabelVector::kAnomaly;
    const bool truePos = truth[i] == LabelVector::kAnomaly;
    tp += predPos && truePos;
    fp += predPos && !truePos;
    fn += !predPos && truePos;
  }
  if (tp + fn == 0) {
    throw std::invalid_argument("truth contains no positives");
  }
  F1Sensitivity out;
  out.p_c = tp / (tp + fn);
  out.f1 = (2.0 * tp + fp + fn) > 0.0 ? 2.0 * tp / (2.0 * tp + fp + fn) : 0.0;
  return out;
}

EvalReport evaluateScores(const ScoreVector& scores, const LabelVector& labels,
                          double alpha) {
  EvalReport report;
  report.auc = auc(scores, labels);
  report.ap = averagePrecision(scores, labels);
  const LabelVector predicted = classifyTopFraction(scores, alpha);
  const F1Sensitivity fs = f1AndSensitivity(predicted, labels);
  report.f1 = fs.f1;
  report.p_c = fs.p_c;
  report.thresholdRule =
      "top-fraction alpha=" + std::to_string(alpha) +
      " (ceil(alpha*n) highest scores flagged, ties by input order)";
  return report;
}

}  // namespace fad
