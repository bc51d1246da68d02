#pragma once

#include "fad/dataset.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

/// Truncated Karhunen-Loeve basis fitted to a curve sample. Components are
/// orthonormal under the trapezoid inner product of the grid and sorted by
/// non-increasing eigenvalue; each component's largest-magnitude entry is
/// made positive so results do not depend on the eigensolver.
struct FpcaModel {
  Grid grid;
  Vector mean;         // length p
  Matrix components;   // k x p, rows orthonormal
  Vector eigenvalues;  // length k, non-increasing, >= 0
};

/// Eigendecomposition of the empirical covariance of centered curves; uses
/// the n x n Gram matrix when n < p. 1 <= k <= min(n, p).
FpcaModel fpcaFit(const FunctionalDataset& data, Index k);

/// Scores of curves against the model components (n x k).
Matrix fpcaTransform(const FpcaModel& model, const FunctionalDataset& data);

/// mean + scores * components.
FunctionalDataset fpcaReconstruct(const FpcaModel& model, const Matrix& scores);

/// Grid-inner-product reconstruction error per curve with the model's
/// components: || x - reconstruct(transform(x)) ||.
Vector fpcaReconstructionError(const FpcaModel& model,
                               const FunctionalDataset& data);

nlohmann::json fpcaModelToJson(const FpcaModel& model);
FpcaModel fpcaModelFromJson(const nlohmann::json& doc);

}  // namespace fad
