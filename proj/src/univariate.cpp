#include "fad/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fad {

namespace {

double medianOf(std::vector<double>& v) {
  const size_t n = v.size();
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  double hi = *mid;
  double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

UnivariateSample::UnivariateSample(std::vector<double> values)
    : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("empty univariate sample");
  for (double v : sorted_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("univariate sample contains non-finite value");
    }
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double UnivariateSample::median() const {
  const size_t n = sorted_.size();
  return n % 2 == 1 ? sorted_[n / 2]
                    : 0.5 * (sorted_[n / 2 - 1] + sorted_[n / 2]);
}

double UnivariateSample::mad() const {
  const double m = median();
  std::vector<double> dev(sorted_.size());
  for (size_t i = 0; i < sorted_.size(); ++i) dev[i] = std::abs(sorted_[i] - m);
  return medianOf(dev);
}

double UnivariateSample::quantile(double q) const {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level outside [0, 1]");
  const size_t n = sorted_.size();
  const double h = static_cast<double>(n - 1) * q;
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= n) return sorted_[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted_[lo] + frac * (sorted_[lo + 1] - sorted_[lo]);
}

double depthEpsilon(double median) {
  return 1e-12 * std::max(1.0, std::abs(median));
}

double tukeyDepth1d(double x, const UnivariateSample& sample) {
  const auto& v = sample.sorted();
  const auto n = static_cast<double>(v.size());
  const auto le = std::upper_bound(v.begin(), v.end(), x) - v.begin();
  const auto ge =
      v.end() - std::lower_bound(v.begin(), v.end(), x);
  return std::min(static_cast<double>(le), static_cast<double>(ge)) / n;
}

double projectionDepth1d(double x, double median, double mad) {
  const double denom = mad > 0.0 ? mad : depthEpsilon(median);
  return 1.0 / (1.0 + std::abs(x - median) / denom);
}

double projectionDepth1d(double x, const UnivariateSample& sample) {
  return projectionDepth1d(x, sample.median(), sample.mad());
}

double medcouple(const UnivariateSample& sample) {
  const auto& x = sample.sorted();
  const size_t n = x.size();
  if (n < 3) throw std::invalid_argument("medcouple needs at least 3 values");
  const double m = sample.median();

  // Straddling groups in the sorted order; the block [hiBegin, loEnd) holds
  // the values tied with the median.
  const size_t loEnd = static_cast<size_t>(
      std::upper_bound(x.begin(), x.end(), m) - x.begin());
  const size_t hiBegin = static_cast<size_t>(
      std::lower_bound(x.begin(), x.end(), m) - x.begin());
  const double k = static_cast<double>(loEnd - hiBegin);

  std::vector<double> kernels;
  kernels.reserve(loEnd * (n - hiBegin));
  for (size_t i = 0; i < loEnd; ++i) {
    for (size_t j = hiBegin; j < n; ++j) {
      if (i == j) continue;
      if (x[i] == x[j]) {
        // Both tied with the median: rank-based sign kernel.
        const double a = static_cast<double>(i - hiBegin + 1);
        const double b = static_cast<double>(j - hiBegin + 1);
        const double s = a + b - 1.0 - k;
        kernels.push_back(s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0));
      } else {
        kernels.push_back(((x[j] - m) + (x[i] - m)) / (x[j] - x[i]));
      }
    }
  }
  if (kernels.empty()) return 0.0;
  return medianOf(kernels);
}

RobustSummary robustSummary(const UnivariateSample& sample) {
  RobustSummary s;
  s.median = sample.median();
  s.mad = sample.mad();
  s.q25 = sample.quantile(0.25);
  s.q75 = sample.quantile(0.75);
  s.medcouple = sample.size() >= 3 ? medcouple(sample) : 0.0;
  return s;
}

Whiskers adjustedWhiskers(const RobustSummary& s) {
  const double iqr = s.q75 - s.q25;
  Whiskers w;
  w.w1 = s.q25 - 1.5 * iqr * std::exp(-4.0 * s.medcouple);
  w.w2 = s.q75 + 1.5 * iqr * std::exp(3.0 * s.medcouple);
  return w;
}

double asymProjectionDepth1d(double x, const RobustSummary& s) {
  double ao = 0.0;
  if (x > s.median) {
    const Whiskers w = adjustedWhiskers(s);
    double denom = w.w2 - s.median;
    if (denom == 0.0) denom = depthEpsilon(s.median);
    ao = (x - s.median) / denom;
  } else if (x < s.median) {
    const Whiskers w = adjustedWhiskers(s);
    double denom = s.median - w.w1;
    if (denom == 0.0) denom = depthEpsilon(s.median);
    ao = (s.median - x) / denom;
  }
  return 1.0 / (1.0 + ao);
}

double asymProjectionDepth1d(double x, const UnivariateSample& sample) {
  return asymProjectionDepth1d(x, robustSummary(sample));
}

}  // namespace fad
