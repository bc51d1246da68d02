#pragma once

#include <cmath>

#include "fad/types.hpp"

namespace fad {

inline constexpr double kEulerGamma = 0.5772156649015328606;

/// Expected path-length adjustment c(m) for an unresolved leaf of size m,
/// also used as the score normalizer c(psi).
inline double pathLengthAdjustment(Index m) {
  if (m <= 1) return 0.0;
  const double d = static_cast<double>(m);
  return 2.0 * (std::log(d - 1.0) + kEulerGamma) - 2.0 * (d - 1.0) / d;
}

/// Isolation score 2^(-h / c(psi)): a strictly decreasing map of the average
/// path length h into (0, 1).
inline double isolationScore(double averagePathLength, Index subsampleSize) {
  return std::exp2(-averagePathLength / pathLengthAdjustment(subsampleSize));
}

}  // namespace fad
