#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fad/metrics.hpp"

namespace fad {

/// Self-contained SVG writers (no plotting dependency). ROC/PR axes are
/// fixed to [0, 1]^2; scatter axes are fitted to the data.

std::string svgRocOverlay(
    const std::vector<std::pair<std::string, std::vector<RocPoint>>>& curves,
    const std::string& title);

std::string svgPrOverlay(
    const std::vector<std::pair<std::string, std::vector<PrPoint>>>& curves,
    const std::string& title);

struct ScatterPoint {
  double x = 0;
  double y = 0;
  int label = -1;  // -1 normal, +1 anomaly
};

std::string svgScatter(const std::vector<ScatterPoint>& points,
                       const std::string& xLabel, const std::string& yLabel,
                       const std::string& title);

void writeTextFile(const std::string& path, const std::string& content);

}  // namespace fad
