#pragma once

#include <string>

#include "fad/dataset.hpp"

namespace fad {

/// How the grid is recovered when reading a curve CSV file.
enum class GridMode {
  kUniform,      // t_j = j / (p - 1)
  kHeaderRow,    // first row of the file holds the grid
  kSidecarFile,  // grid read from a separate file, one value per line
};

GridMode gridModeFromString(const std::string& s);
std::string toString(GridMode mode);

/// Reads one curve per row, comma-separated decimals, LF or CRLF endings.
/// Ragged rows, non-numeric cells and p < 2 raise errors naming the
/// offending row/column.
FunctionalDataset loadCsv(const std::string& path, GridMode mode,
                          const std::string& sidecarPath = {});

/// Writes curves with 17 significant digits (values round-trip exactly).
/// With headerRow the grid is written as the first line.
void saveCsv(const FunctionalDataset& data, const std::string& path,
             bool headerRow = false);

/// One label per line, -1 or +1.
LabelVector loadLabelsCsv(const std::string& path);
void saveLabelsCsv(const LabelVector& labels, const std::string& path);

/// Per-curve scores, one value per line.
ScoreVector loadScoresCsv(const std::string& path);
void saveScoresCsv(const ScoreVector& scores, const std::string& path);

}  // namespace fad
