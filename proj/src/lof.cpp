#include "fad/lof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fad/parallel.hpp"

namespace fad {

namespace {

using nlohmann::json;

constexpr double kLrdEpsilon = 1e-12;

double lrdFrom(double meanReach) {
  return 1.0 / std::max(meanReach, kLrdEpsilon);
}

}  // namespace

LofModel LofModel::fit(const Matrix& data, Index k) {
  const Index n = data.rows();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k >= n) throw std::invalid_argument("LOF needs k < n");
  if (!data.allFinite()) {
    throw std::invalid_argument("dataset contains a non-finite value");
  }

  LofModel model;
  model.data_ = data;
  model.k_ = k;
  model.neighbors_.resize(static_cast<size_t>(n));
  model.kDistance_.resize(n);
  model.lrd_.resize(n);
  model.trainingScores_.resize(n);

  Matrix dist(n, n);
  for (Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d = (data.row(i) - data.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }

  std::vector<double> others;
  for (Index i = 0; i < n; ++i) {
    others.clear();
    for (Index j = 0; j < n; ++j) {
      if (j != i) others.push_back(dist(i, j));
    }
    std::nth_element(others.begin(),
                     others.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     others.end());
    const double kd = others[static_cast<size_t>(k - 1)];
    model.kDistance_[i] = kd;
    auto& nb = model.neighbors_[static_cast<size_t>(i)];
    for (Index j = 0; j < n; ++j) {
      if (j != i && dist(i, j) <= kd) nb.push_back(j);
    }
  }

  for (Index i = 0; i < n; ++i) {
    double reachSum = 0.0;
    const auto& nb = model.neighbors_[static_cast<size_t>(i)];
    for (Index j : nb) {
      reachSum += std::max(model.kDistance_[j], dist(i, j));
    }
    model.lrd_[i] = lrdFrom(reachSum / static_cast<double>(nb.size()));
  }

  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    const auto& nb = model.neighbors_[static_cast<size_t>(i)];
    for (Index j : nb) acc += model.lrd_[j];
    model.trainingScores_[i] =
        acc / (static_cast<double>(nb.size()) * model.lrd_[i]);
  }
  return model;
}

double LofModel::score(const VectorView& point) const {
  const Index n = data_.rows();
  if (point.size() != data_.cols()) {
    throw std::invalid_argument("point dimension does not match the model");
  }
  Vector dist(n);
  for (Index j = 0; j < n; ++j) {
    dist[j] = (data_.row(j).transpose() - point).norm();
  }
  std::vector<double> sorted(dist.begin(), dist.end());
  std::nth_element(sorted.begin(),
                   sorted.begin() + static_cast<std::ptrdiff_t>(k_ - 1),
                   sorted.end());
  const double kd = sorted[static_cast<size_t>(k_ - 1)];
  double reachSum = 0.0;
  double lrdSum = 0.0;
  Index count = 0;
  for (Index j = 0; j < n; ++j) {
    if (dist[j] <= kd) {
      reachSum += std::max(kDistance_[j], dist[j]);
      lrdSum += lrd_[j];
      ++count;
    }
  }
  const double lrdQuery = lrdFrom(reachSum / static_cast<double>(count));
  return lrdSum / (static_cast<double>(count) * lrdQuery);
}

Vector LofModel::scores(const Matrix& data, int threads) const {
  Vector out(data.rows());
  parallelFor(data.rows(), threads,
              [&](Index i) { out[i] = score(data.row(i).transpose()); });
  return out;
}

nlohmann::json LofModel::toJson() const {
  json doc;
  doc["format"] = "fad-lof";
  doc["k"] = k_;
  json rows = json::array();
  for (Index i = 0; i < data_.rows(); ++i) {
    rows.push_back(std::vector<double>(data_.row(i).begin(),
                                       data_.row(i).end()));
  }
  doc["data"] = std::move(rows);
  return doc;
}

LofModel LofModel::fromJson(const nlohmann::json& doc) {
  if (doc.value("format", "") != "fad-lof") {
    throw std::runtime_error("not a LOF model document");
  }
  const auto& rows = doc.at("data");
  if (rows.empty()) throw std::runtime_error("empty LOF model");
  const auto first = rows[0].get<std::vector<double>>();
  Matrix data(static_cast<Index>(rows.size()),
              static_cast<Index>(first.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto row = rows[i].get<std::vector<double>>();
    data.row(static_cast<Index>(i)) =
        Eigen::Map<const Vector>(row.data(), static_cast<Index>(row.size()));
  }
  return fit(data, doc.at("k").get<Index>());
}

Vector lofScores(const Matrix& data, Index k) {
  return LofModel::fit(data, k).trainingScores();
}

}  // namespace fad
