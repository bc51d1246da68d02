#include "fad/hull.hpp"

#include <algorithm>
#include <cmath>

namespace fad {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

PlanarPointSet curveGraph(const Grid& grid, const VectorView& values) {
  PlanarPointSet pts(static_cast<size_t>(grid.size()));
  for (Index j = 0; j < grid.size(); ++j) {
    pts[static_cast<size_t>(j)] = {grid[j], values[j]};
  }
  return pts;
}

PlanarPointSet convexHull(PlanarPointSet pts) {
  const size_t n = pts.size();
  if (n <= 2) return pts;
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  PlanarPointSet hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygonArea(const PlanarPointSet& v) {
  const size_t n = v.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i + 1) % n;
    acc += v[i].x * v[j].y - v[j].x * v[i].y;
  }
  return 0.5 * std::abs(acc);
}

double convexHullArea(const PlanarPointSet& points) {
  if (points.empty()) return 0.0;
  return polygonArea(convexHull(points));
}

}  // namespace fad
