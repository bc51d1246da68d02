#include "fad/fpca.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fad {

namespace {

using nlohmann::json;

// Largest-magnitude entry made positive; first occurrence wins ties.
void fixSign(Eigen::Ref<Vector> v) {
  Index best = 0;
  double bestAbs = 0.0;
  for (Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]);
    if (a > bestAbs) {
      bestAbs = a;
      best = j;
    }
  }
  if (v[best] < 0.0) v = -v;
}

// W-orthonormal completion for rank-deficient directions: canonical seeds,
// Gram-Schmidt against the rows already present.
void completeBasis(Matrix& components, Index from, const Vector& w) {
  const Index p = components.cols();
  Index seed = 0;
  for (Index k = from; k < components.rows(); ++k) {
    Vector v = Vector::Zero(p);
    bool ok = false;
    while (seed < p && !ok) {
      v.setZero();
      v[seed++] = 1.0;
      for (Index r = 0; r < k; ++r) {
        const double proj = (components.row(r).transpose().array() *
                             w.array() * v.array()).sum();
        v -= proj * components.row(r).transpose();
      }
      const double norm = std::sqrt((v.array().square() * w.array()).sum());
      if (norm > 1e-8) {
        v /= norm;
        ok = true;
      }
    }
    if (!ok) throw std::runtime_error("cannot complete the component basis");
    fixSign(v);
    components.row(k) = v.transpose();
  }
}

}  // namespace

FpcaModel fpcaFit(const FunctionalDataset& data, Index k) {
  const Index n = data.numCurves();
  const Index p = data.numPoints();
  if (k < 1 || k > std::min(n, p)) {
    throw std::invalid_argument("component count must lie in [1, min(n, p)]");
  }

  const Vector w = data.grid().quadratureWeights();
  const Vector sqrtW = w.cwiseSqrt();
  const Vector mean = data.values().colwise().mean().transpose();
  Matrix centered = data.values().rowwise() - mean.transpose();
  // Weighted coordinates: Euclidean geometry there matches the grid inner
  // product in curve space.
  Matrix b = centered * sqrtW.asDiagonal();

  Matrix components(k, p);
  Vector eigenvalues(k);
  const double invN = 1.0 / static_cast<double>(n);

  Index produced = 0;
  if (n < p) {
    const Matrix gram = b * b.transpose() * invN;  // n x n
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition failed");
    }
    const Vector& evals = solver.eigenvalues();  // ascending
    const double scale = std::max(std::abs(evals[n - 1]), 1.0);
    for (Index c = 0; c < k; ++c) {
      const Index src = n - 1 - c;
      const double lambda = evals[src];
      if (lambda <= scale * 1e-14) break;
      eigenvalues[produced] = lambda;
      Vector v = b.transpose() * solver.eigenvectors().col(src);
      v /= std::sqrt(static_cast<double>(n) * lambda);
      components.row(produced) = (v.array() / sqrtW.array()).matrix().transpose();
      ++produced;
    }
  } else {
    const Matrix cov = b.transpose() * b * invN;  // p x p
    Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition failed");
    }
    const Vector& evals = solver.eigenvalues();
    const double scale = std::max(std::abs(evals[p - 1]), 1.0);
    for (Index c = 0; c < k; ++c) {
      const Index src = p - 1 - c;
      const double lambda = evals[src];
      if (lambda <= scale * 1e-14) break;
      eigenvalues[produced] = lambda;
      components.row(produced) =
          (solver.eigenvectors().col(src).array() / sqrtW.array())
              .matrix()
              .transpose();
      ++produced;
    }
  }

  for (Index c = produced; c < k; ++c) eigenvalues[c] = 0.0;
  completeBasis(components, produced, w);
  for (Index c = 0; c < produced; ++c) {
    Vector row = components.row(c).transpose();
    fixSign(row);
    components.row(c) = row.transpose();
  }
  return FpcaModel{data.grid(), mean, std::move(components),
                   std::move(eigenvalues)};
}

Matrix fpcaTransform(const FpcaModel& model, const FunctionalDataset& data) {
  if (!(data.grid() == model.grid)) {
    throw std::invalid_argument("dataset grid does not match the FPCA model");
  }
  const Vector w = model.grid.quadratureWeights();
  Matrix centered = data.values().rowwise() - model.mean.transpose();
  return centered * (w.asDiagonal() * model.components.transpose());
}

FunctionalDataset fpcaReconstruct(const FpcaModel& model,
                                  const Matrix& scores) {
  if (scores.cols() != model.components.rows()) {
    throw std::invalid_argument("score width does not match component count");
  }
  Matrix values =
      (scores * model.components).rowwise() + model.mean.transpose();
  return FunctionalDataset(model.grid, std::move(values));
}

Vector fpcaReconstructionError(const FpcaModel& model,
                               const FunctionalDataset& data) {
  const Matrix scores = fpcaTransform(model, data);
  const FunctionalDataset rec = fpcaReconstruct(model, scores);
  const Vector w = model.grid.quadratureWeights();
  Vector err(data.numCurves());
  for (Index i = 0; i < data.numCurves(); ++i) {
    const Vector diff = (data.values().row(i) - rec.values().row(i)).transpose();
    err[i] = std::sqrt((diff.array().square() * w.array()).sum());
  }
  return err;
}

nlohmann::json fpcaModelToJson(const FpcaModel& model) {
  json doc;
  doc["format"] = "fad-fpca";
  doc["grid"] =
      std::vector<double>(model.grid.points().begin(), model.grid.points().end());
  doc["mean"] = std::vector<double>(model.mean.begin(), model.mean.end());
  doc["eigenvalues"] = std::vector<double>(model.eigenvalues.begin(),
                                           model.eigenvalues.end());
  json comps = json::array();
  for (Index c = 0; c < model.components.rows(); ++c) {
    comps.push_back(std::vector<double>(model.components.row(c).begin(),
                                        model.components.row(c).end()));
  }
  doc["components"] = std::move(comps);
  return doc;
}

FpcaModel fpcaModelFromJson(const nlohmann::json& doc) {
  if (doc.value("format", "") != "fad-fpca") {
    throw std::runtime_error("not an FPCA model document");
  }
  const auto gridValues = doc.at("grid").get<std::vector<double>>();
  Grid grid(Eigen::Map<const Vector>(gridValues.data(),
                                     static_cast<Index>(gridValues.size())));
  const auto meanValues = doc.at("mean").get<std::vector<double>>();
  const auto evals = doc.at("eigenvalues").get<std::vector<double>>();
  const auto& compsDoc = doc.at("components");
  Matrix components(static_cast<Index>(compsDoc.size()), grid.size());
  for (size_t c = 0; c < compsDoc.size(); ++c) {
    const auto row = compsDoc[c].get<std::vector<double>>();
    components.row(static_cast<Index>(c)) =
        Eigen::Map<const Vector>(row.data(), static_cast<Index>(row.size()));
  }
  return FpcaModel{
      std::move(grid),
      Eigen::Map<const Vector>(meanValues.data(),
                               static_cast<Index>(meanValues.size())),
      std::move(components),
      Eigen::Map<const Vector>(evals.data(), static_cast<Index>(evals.size()))};
}

}  // namespace fad
