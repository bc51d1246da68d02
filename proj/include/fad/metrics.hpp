#pragma once

#include <string>
#include <vector>

#include "fad/dataset.hpp"

namespace fad {

struct RocPoint {
  double fpr = 0;
  double tpr = 0;
};

struct PrPoint {
  double recall = 0;
  double precision = 0;
};

/// AUC as the concordance rate of positive/negative pairs with the half-tie
/// term, computed from midranks (exactly equal to pairwise enumeration).
/// Both classes must be present.
double auc(const ScoreVector& scores, const LabelVector& labels);

/// ROC sweep over descending score thresholds, tied scores grouped; points
/// run from (0, 0) to (1, 1) and are monotone in both coordinates.
std::vector<RocPoint> rocCurve(const ScoreVector& scores,
                               const LabelVector& labels);

/// Precision/recall at each descending-score threshold, tied scores grouped.
std::vector<PrPoint> prCurve(const ScoreVector& scores,
                             const LabelVector& labels);

/// Step-interpolated average precision sum_k (R_k - R_{k-1}) P_k.
double averagePrecision(const ScoreVector& scores, const LabelVector& labels);

/// Flags the ceil(alpha * n) highest scores as anomalies; ties are broken by
/// stable input order. 0 < alpha < 1.
LabelVector classifyTopFraction(const ScoreVector& scores, double alpha);

struct F1Sensitivity {
  double f1 = 0;
  double p_c = 0;  // TP / (TP + FN)
};

/// F1 = 2TP / (2TP + FP + FN) and sensitivity; truth must contain positives.
F1Sensitivity f1AndSensitivity(const LabelVector& predicted,
                               const LabelVector& truth);

struct EvalReport {
  double f1 = 0;
  double ap = 0;
  double auc = 0;
  double p_c = 0;
  std::string thresholdRule;
};

/// Full evaluation of a score vector under the top-fraction decision rule.
EvalReport evaluateScores(const ScoreVector& scores, const LabelVector& labels,
                          double alpha);

}  // namespace fad
