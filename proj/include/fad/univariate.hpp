#pragma once

#include <vector>

#include "fad/types.hpp"

namespace fad {

/// Robust location/scale/skewness summary of a univariate sample.
struct RobustSummary {
  double median = 0;
  double mad = 0;
  double q25 = 0;
  double q75 = 0;
  double medcouple = 0;  // 0 when the sample has fewer than 3 values
};

/// One time-stamp slice of a functional sample, kept sorted so depth
/// evaluations are cheap.
class UnivariateSample {
 public:
  explicit UnivariateSample(std::vector<double> values);

  Index size() const { return static_cast<Index>(sorted_.size()); }
  const std::vector<double>& sorted() const { return sorted_; }

  double median() const;
  double mad() const;

  /// Empirical quantile with linear interpolation of order statistics,
  /// h = (n - 1) q.
  double quantile(double q) const;

 private:
  std::vector<double> sorted_;
};

/// Denominator regularizer for degenerate (zero-spread) samples:
/// 1e-12 * max(1, |median|).
double depthEpsilon(double median);

/// Empirical Tukey depth min(#{X_i <= x}, #{X_i >= x}) / n.
double tukeyDepth1d(double x, const UnivariateSample& sample);

/// Projection depth (1 + |x - med| / MAD)^-1; a zero MAD is replaced by
/// depthEpsilon so constant slices stay finite.
double projectionDepth1d(double x, const UnivariateSample& sample);
double projectionDepth1d(double x, double median, double mad);

/// Medcouple: median of (X_j + X_i - 2 med) / (X_j - X_i) over ordered pairs
/// (i, j), i != j, with X_i <= med <= X_j. Pairs tied at the median enter
/// through the rank-based sign kernel in {-1, 0, +1}. Requires n >= 3.
double medcouple(const UnivariateSample& sample);

RobustSummary robustSummary(const UnivariateSample& sample);

/// Skewness-adjusted whiskers
///   w1 = q25 - 1.5 IQR e^{-4 MC},   w2 = q75 + 1.5 IQR e^{3 MC}.
struct Whiskers {
  double w1 = 0;
  double w2 = 0;
};
Whiskers adjustedWhiskers(const RobustSummary& summary);

/// Asymmetric projection depth 1 / (1 + AO) where AO measures the distance
/// to the median in units of the whisker on the matching side.
double asymProjectionDepth1d(double x, const UnivariateSample& sample);
double asymProjectionDepth1d(double x, const RobustSummary& summary);

}  // namespace fad
