#pragma once

#include "fad/dataset.hpp"

namespace fad {

/// Coefficients of each curve against the orthonormal Haar system on [0, 1]
/// up to resolution level L: one scaling coefficient followed by the wavelet
/// coefficients of levels 0..L-1, 2^L values in total.
///
/// Curves are treated as their piecewise-linear interpolants (constant
/// extension outside the grid span); inner products reduce to exact dyadic
/// cell averages obtained by trapezoid integration clipped to each cell.
/// Requires p >= 2^L.
Matrix haarProjection(const FunctionalDataset& data, int level);

/// Exact integral of the piecewise-linear interpolant of (grid, values) over
/// [a, b] within [0, 1], constant-extended beyond the grid span.
double integrateInterpolant(const Grid& grid, const VectorView& values,
                            double a, double b);

}  // namespace fad
