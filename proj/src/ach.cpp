#include "fad/ach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fad/parallel.hpp"
#include "fad/rng.hpp"

namespace fad {

namespace {

// C(n, j) capped at `cap` to avoid overflow.
double subsetCount(Index n, Index j, double cap) {
  double c = 1.0;
  for (Index i = 0; i < j; ++i) {
    c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (c > cap) return cap + 1.0;
  }
  return c;
}

double ratioFor(const PlanarPointSet& subsetHull, double subsetArea,
                const PlanarPointSet& queryHull) {
  PlanarPointSet merged;
  merged.reserve(subsetHull.size() + queryHull.size());
  merged.insert(merged.end(), subsetHull.begin(), subsetHull.end());
  merged.insert(merged.end(), queryHull.begin(), queryHull.end());
  const double unionArea = convexHullArea(merged);
  if (unionArea == 0.0) return 1.0;  // query adds nothing to a flat subset
  return std::min(subsetArea / unionArea, 1.0);
}

}  // namespace

AchDepth::AchDepth(const FunctionalDataset& reference, AchConfig config)
    : config_(config), grid_(reference.grid()), values_(reference.values()) {
  if (config_.subsetSize < 1) {
    throw std::invalid_argument("ACH subset size must be at least 1");
  }
  if (config_.subsetSize > reference.numCurves()) {
    throw std::invalid_argument("ACH subset size exceeds the sample size");
  }
  if (config_.numSubsets == 0) config_.numSubsets = 32 * reference.numCurves();
  rowHulls_.reserve(static_cast<size_t>(reference.numCurves()));
  for (Index i = 0; i < reference.numCurves(); ++i) {
    rowHulls_.push_back(convexHull(curveGraph(grid_, reference.curve(i))));
  }
}

double AchDepth::depthImpl(const VectorView& curve,
                           std::optional<Index> excludeRow,
                           std::uint64_t stream) const {
  if (curve.size() != grid_.size()) {
    throw std::invalid_argument("query curve length does not match grid");
  }
  const Index n = numCurves();
  std::vector<Index> pool;
  pool.reserve(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (!excludeRow || *excludeRow != i) pool.push_back(i);
  }
  const Index m = static_cast<Index>(pool.size());
  const Index j = config_.subsetSize;
  if (m < j) {
    throw std::invalid_argument("not enough curves for the requested subset size");
  }

  const PlanarPointSet queryHull = convexHull(curveGraph(grid_, curve));

  PlanarPointSet scratch;
  auto evalSubset = [&](const std::vector<Index>& subset) {
    scratch.clear();
    for (Index idx : subset) {
      const auto& hv = rowHulls_[static_cast<size_t>(idx)];
      scratch.insert(scratch.end(), hv.begin(), hv.end());
    }
    PlanarPointSet subHull = convexHull(scratch);
    return ratioFor(subHull, polygonArea(subHull), queryHull);
  };

  double acc = 0.0;
  double count = 0.0;
  const double total =
      subsetCount(m, j, static_cast<double>(config_.enumerationLimit));
  if (total <= static_cast<double>(config_.enumerationLimit)) {
    // Full enumeration in lexicographic order.
    std::vector<Index> pick(static_cast<size_t>(j));
    for (Index i = 0; i < j; ++i) pick[static_cast<size_t>(i)] = i;
    std::vector<Index> subset(static_cast<size_t>(j));
    while (true) {
      for (Index i = 0; i < j; ++i) {
        subset[static_cast<size_t>(i)] = pool[static_cast<size_t>(pick[static_cast<size_t>(i)])];
      }
      acc += evalSubset(subset);
      count += 1.0;
      Index i = j - 1;
      while (i >= 0 && pick[static_cast<size_t>(i)] == m - j + i) --i;
      if (i < 0) break;
      ++pick[static_cast<size_t>(i)];
      for (Index q = i + 1; q < j; ++q) {
        pick[static_cast<size_t>(q)] = pick[static_cast<size_t>(q - 1)] + 1;
      }
    }
  } else {
    Rng rng(splitSeed(config_.seed, stream));
    std::vector<Index> subset(static_cast<size_t>(j));
    std::vector<Index> draw(pool);
    for (Index s = 0; s < config_.numSubsets; ++s) {
      // Partial Fisher-Yates: the first j entries become the subset.
      for (Index i = 0; i < j; ++i) {
        const Index r =
            i + static_cast<Index>(rng.integer(static_cast<std::uint64_t>(m - i)));
        std::swap(draw[static_cast<size_t>(i)], draw[static_cast<size_t>(r)]);
        subset[static_cast<size_t>(i)] = draw[static_cast<size_t>(i)];
      }
      acc += evalSubset(subset);
      count += 1.0;
    }
  }
  return acc / count;
}

double AchDepth::depth(const VectorView& curve) const {
  return depthImpl(curve, std::nullopt, 0);
}

double AchDepth::depthExcluding(const VectorView& curve,
                                Index excludeRow) const {
  return depthImpl(curve, excludeRow,
                   static_cast<std::uint64_t>(excludeRow) + 1);
}

Vector AchDepth::depths(const FunctionalDataset& queries, int threads) const {
  if (!(queries.grid() == grid_)) {
    throw std::invalid_argument("query grid does not match reference grid");
  }
  Vector out(queries.numCurves());
  parallelFor(queries.numCurves(), threads, [&](Index i) {
    out[i] = depthImpl(queries.curve(i), std::nullopt,
                       static_cast<std::uint64_t>(i));
  });
  return out;
}

Vector AchDepth::trainingDepths(int threads) const {
  const Index n = numCurves();
  if (n - 1 < config_.subsetSize) {
    throw std::invalid_argument("not enough curves to exclude the query row");
  }
  Vector out(n);
  // Each row is scored against the other rows; its exclusion also keys the
  // sampling stream, so parallel and serial runs agree bit for bit.
  parallelFor(n, threads, [&](Index i) {
    out[i] = depthImpl(values_.row(i).transpose(), i,
                       static_cast<std::uint64_t>(i) + 1);
  });
  return out;
}

double achDepth(const VectorView& curve, const FunctionalDataset& data,
                AchConfig config) {
  return AchDepth(data, config).depth(curve);
}

}  // namespace fad
