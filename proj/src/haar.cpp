#include "fad/haar.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fad {

namespace {

// Interpolant value at t, constant-extended beyond the grid span.
double valueAt(const Grid& grid, const VectorView& values, double t) {
  if (t <= grid.front()) return values[0];
  if (t >= grid.back()) return values[grid.size() - 1];
  Index lo = 0, hi = grid.size() - 1;
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    (grid[mid] <= t ? lo : hi) = mid;
  }
  const double f = (t - grid[lo]) / (grid[lo + 1] - grid[lo]);
  return values[lo] + f * (values[lo + 1] - values[lo]);
}

}  // namespace

double integrateInterpolant(const Grid& grid, const VectorView& values,
                            double a, double b) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("curve length does not match grid");
  }
  if (!(a <= b)) throw std::invalid_argument("empty integration interval");
  double acc = 0.0;
  // Constant extension pieces outside the span.
  const double t0 = grid.front();
  const double t1 = grid.back();
  if (a < t0) {
    const double hi = std::min(b, t0);
    acc += values[0] * (hi - a);
    a = hi;
  }
  if (b > t1) {
    const double lo = std::max(a, t1);
    acc += values[grid.size() - 1] * (b - lo);
    b = lo;
  }
  if (a >= b) return acc;
  // Trapezoid over every grid cell clipped to [a, b]; exact for the
  // piecewise-linear interpolant.
  for (Index j = 0; j + 1 < grid.size(); ++j) {
    const double lo = std::max(a, grid[j]);
    const double hi = std::min(b, grid[j + 1]);
    if (hi <= lo) continue;
    acc += 0.5 * (valueAt(grid, values, lo) + valueAt(grid, values, hi)) *
           (hi - lo);
  }
  return acc;
}

Matrix haarProjection(const FunctionalDataset& data, int level) {
  if (level < 0) throw std::invalid_argument("Haar level must be non-negative");
  const Index cells = Index{1} << level;
  if (cells > data.numPoints()) {
    throw std::invalid_argument(
        "Haar level too fine for the grid: need p >= 2^L");
  }
  const Index n = data.numCurves();
  Matrix out(n, cells);
  const double cellWidth = 1.0 / static_cast<double>(cells);

  std::vector<double> cellIntegral(static_cast<size_t>(cells));
  std::vector<double> prefix(static_cast<size_t>(cells) + 1);
  for (Index i = 0; i < n; ++i) {
    const auto curve = data.curve(i);
    for (Index c = 0; c < cells; ++c) {
      cellIntegral[static_cast<size_t>(c)] =
          integrateInterpolant(data.grid(), curve,
                               static_cast<double>(c) * cellWidth,
                               static_cast<double>(c + 1) * cellWidth);
    }
    prefix[0] = 0.0;
    for (Index c = 0; c < cells; ++c) {
      prefix[static_cast<size_t>(c) + 1] =
          prefix[static_cast<size_t>(c)] + cellIntegral[static_cast<size_t>(c)];
    }
    auto rangeIntegral = [&](Index lo, Index hi) {
      return prefix[static_cast<size_t>(hi)] - prefix[static_cast<size_t>(lo)];
    };

    Index col = 0;
    out(i, col++) = rangeIntegral(0, cells);  // scaling coefficient
    for (int l = 0; l < level; ++l) {
      const Index support = cells >> l;       // cells per wavelet
      const double amp = std::exp2(0.5 * l);  // 2^{l/2}
      for (Index k = 0; k < (Index{1} << l); ++k) {
        const Index lo = k * support;
        const Index mid = lo + support / 2;
        const Index hi = lo + support;
        out(i, col++) =
            amp * (rangeIntegral(lo, mid) - rangeIntegral(mid, hi));
      }
    }
  }
  return out;
}

}  // namespace fad
