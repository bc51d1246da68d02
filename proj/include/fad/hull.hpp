#pragma once

#include <vector>

#include "fad/dataset.hpp"
#include "fad/types.hpp"

namespace fad {

struct Point2 {
  double x = 0;
  double y = 0;
};

/// A finite set of points in the plane (e.g. the sampled graph of a curve).
using PlanarPointSet = std::vector<Point2>;

/// Sampled graph {(t_j, x(t_j))} of a curve.
PlanarPointSet curveGraph(const Grid& grid, const VectorView& values);

/// Convex hull via the monotone chain; vertices in counter-clockwise order,
/// collinear points dropped. Degenerate inputs yield fewer than 3 vertices.
PlanarPointSet convexHull(PlanarPointSet points);

/// Shoelace area of a convex polygon given by ordered vertices.
double polygonArea(const PlanarPointSet& vertices);

/// Area of the convex hull of a point set; 0 for collinear/degenerate sets.
double convexHullArea(const PlanarPointSet& points);

}  // namespace fad
