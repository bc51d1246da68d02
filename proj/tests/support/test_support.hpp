#pragma once

#include <string>
#include <vector>

#include "fad/dataset.hpp"
#include "fad/hull.hpp"
#include "fad/rng.hpp"
#include "fad/types.hpp"
#include "fad/univariate.hpp"

namespace fad::test {

// ---------------------------------------------------------------------------
// Random instance generators.

std::vector<double> randomSample(Rng& rng, Index n, double lo = -5.0,
                                 double hi = 5.0);

/// Random strictly increasing grid in [0, 1] with p points (sometimes the
/// uniform grid, sometimes jittered).
Grid randomGrid(Rng& rng, Index p);

/// Random dataset of smooth-ish curves on a shared grid.
FunctionalDataset randomDataset(Rng& rng, Index n, Index p);

/// Random multivariate point cloud.
Matrix randomPoints(Rng& rng, Index n, Index d, double scale = 3.0);

/// Random scores with ties: a fraction of entries quantized to a small set.
Vector randomScoresWithTies(Rng& rng, Index n);

/// Random labels containing at least one positive and one negative.
std::vector<int> randomLabelsBothClasses(Rng& rng, Index n);

// ---------------------------------------------------------------------------
// Independent oracles (brute force, from-definition implementations).

/// Tukey depth by direct counting over the raw sample.
double tukeyDepthCounting(double x, const std::vector<double>& sample);

/// Medcouple by direct enumeration of the straddling-pair kernel.
double medcoupleEnumeration(const std::vector<double>& sample);

/// AUC by O(n^2) pairwise concordance with the half-tie term.
double aucPairwise(const Vector& scores, const std::vector<int>& labels);

/// Average precision by exhaustive threshold enumeration.
double apThresholdEnumeration(const Vector& scores,
                              const std::vector<int>& labels);

/// Convex hull area via fan triangulation from the hull centroid.
double hullAreaFanTriangulation(const PlanarPointSet& points);

/// LOF from the definition (independent of the library implementation).
Vector lofFromDefinition(const Matrix& data, Index k);

/// FPCA scores via a dense eigendecomposition of the weighted p x p
/// covariance (the implementation uses the n x n Gram route when n < p).
Matrix fpcaScoresDenseOracle(const FunctionalDataset& data, Index k);

// ---------------------------------------------------------------------------
// Misc helpers.

/// Minimal XML well-formedness check: declaration/tag syntax, quoted
/// attributes, balanced element nesting.
bool xmlWellFormed(const std::string& text, std::string* error = nullptr);

std::string tempDir(const std::string& hint);

}  // namespace fad::test
