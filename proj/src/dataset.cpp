#include "fad/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fad {

namespace {

void requireFinite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) +
                                " contains a non-finite value");
  }
}

}  // namespace

Grid::Grid(Vector points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("grid needs at least 2 points");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("grid contains a non-finite value");
  }
  if (points_[0] < 0.0 || points_[points_.size() - 1] > 1.0) {
    throw std::invalid_argument("grid must lie within [0, 1]");
  }
  for (Index j = 1; j < points_.size(); ++j) {
    if (!(points_[j] > points_[j - 1])) {
      throw std::invalid_argument("grid points must be strictly increasing");
    }
  }
}

Grid Grid::uniform(Index p) {
  if (p < 2) throw std::invalid_argument("grid needs at least 2 points");
  Vector t(p);
  for (Index j = 0; j < p; ++j) {
    t[j] = static_cast<double>(j) / static_cast<double>(p - 1);
  }
  return Grid(std::move(t));
}

bool Grid::isUniform(double tol) const {
  const double h = (back() - front()) / static_cast<double>(size() - 1);
  for (Index j = 1; j < size(); ++j) {
    if (std::abs(points_[j] - points_[j - 1] - h) > tol) return false;
  }
  return true;
}

Vector Grid::quadratureWeights() const {
  const Index p = size();
  Vector w = Vector::Zero(p);
  for (Index j = 0; j + 1 < p; ++j) {
    const double h = points_[j + 1] - points_[j];
    w[j] += 0.5 * h;
    w[j + 1] += 0.5 * h;
  }
  return w;
}

bool Grid::operator==(const Grid& other) const {
  return points_.size() == other.points_.size() && points_ == other.points_;
}

FunctionalDataset::FunctionalDataset(Grid grid, Matrix values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.rows() < 1) {
    throw std::invalid_argument("dataset needs at least one curve");
  }
  if (values_.cols() != grid_.size()) {
    throw std::invalid_argument("curve length does not match grid length");
  }
  requireFinite(values_, "dataset");
}

LabelVector::LabelVector(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("empty label vector");
  for (int v : labels_) {
    if (v != kNormal && v != kAnomaly) {
      throw std::invalid_argument("labels must be -1 (normal) or +1 (anomaly)");
    }
  }
}

Index LabelVector::countAnomalies() const {
  Index c = 0;
  for (int v : labels_) c += (v == kAnomaly);
  return c;
}

ScoreVector::ScoreVector(Vector scores) : scores_(std::move(scores)) {
  if (scores_.size() < 1) throw std::invalid_argument("empty score vector");
  if (!scores_.allFinite()) {
    throw std::invalid_argument("scores contain a non-finite value");
  }
}

Vector interpolateCurve(const Grid& source, const VectorView& values,
                        const Grid& target) {
  const Index p = source.size();
  const Index m = target.size();
  if (values.size() != p) {
    throw std::invalid_argument("curve length does not match source grid");
  }
  if (target.front() < source.front() || target.back() > source.back()) {
    throw std::invalid_argument(
        "target grid extends beyond the source span (extrapolation)");
  }
  Vector out(m);
  Index cell = 0;
  for (Index k = 0; k < m; ++k) {
    const double u = target[k];
    while (cell + 2 < p && source[cell + 1] <= u) ++cell;
    const double t0 = source[cell];
    const double t1 = source[cell + 1];
    // Exact pass-through at the nodes.
    if (u == t0) {
      out[k] = values[cell];
    } else if (u == t1) {
      out[k] = values[cell + 1];
    } else {
      const double f = (u - t0) / (t1 - t0);
      out[k] = values[cell] + f * (values[cell + 1] - values[cell]);
    }
  }
  return out;
}

FunctionalDataset resampleLinear(const FunctionalDataset& data,
                                 const Grid& target) {
  Matrix out(data.numCurves(), target.size());
  for (Index i = 0; i < data.numCurves(); ++i) {
    out.row(i) = interpolateCurve(data.grid(), data.curve(i), target);
  }
  return FunctionalDataset(target, std::move(out));
}

Vector derivativeCurve(const Grid& grid, const VectorView& values) {
  const Index p = grid.size();
  if (values.size() != p) {
    throw std::invalid_argument("curve length does not match grid");
  }
  Vector out(p);
  for (Index j = 0; j + 1 < p; ++j) {
    out[j] = (values[j + 1] - values[j]) / (grid[j + 1] - grid[j]);
  }
  out[p - 1] = out[p - 2];
  return out;
}

FunctionalDataset derivative(const FunctionalDataset& data) {
  const Index p = data.numPoints();
  Matrix out(data.numCurves(), p);
  for (Index i = 0; i < data.numCurves(); ++i) {
    out.row(i) = derivativeCurve(data.grid(), data.curve(i));
  }
  return FunctionalDataset(data.grid(), std::move(out));
}

}  // namespace fad
