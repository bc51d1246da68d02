#include "fad/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fad {

namespace {

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parseCell(const std::string& cell, size_t row, size_t col) {
  const std::string t = trimmed(cell);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::runtime_error("non-numeric cell at row " + std::to_string(row) +
                             ", column " + std::to_string(col) + ": '" + cell +
                             "'");
  }
  return value;
}

std::vector<double> parseRow(const std::string& line, size_t rowNumber) {
  std::vector<double> out;
  size_t start = 0;
  size_t col = 1;
  while (true) {
    size_t comma = line.find(',', start);
    const std::string cell = comma == std::string::npos
                                 ? line.substr(start)
                                 : line.substr(start, comma - start);
    out.push_back(parseCell(cell, rowNumber, col));
    if (comma == std::string::npos) break;
    start = comma + 1;
    ++col;
  }
  return out;
}

std::vector<std::vector<double>> readNumericRows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trimmed(line).empty()) continue;
    rows.push_back(parseRow(line, lineNumber));
  }
  if (rows.empty()) throw std::runtime_error("no data rows in file: " + path);
  return rows;
}

std::string formatValue(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

GridMode gridModeFromString(const std::string& s) {
  if (s == "uniform") return GridMode::kUniform;
  if (s == "header-row" || s == "header") return GridMode::kHeaderRow;
  if (s == "sidecar-file" || s == "sidecar") return GridMode::kSidecarFile;
  throw std::invalid_argument("unknown grid mode: " + s);
}

std::string toString(GridMode mode) {
  switch (mode) {
    case GridMode::kUniform: return "uniform";
    case GridMode::kHeaderRow: return "header-row";
    case GridMode::kSidecarFile: return "sidecar-file";
  }
  return "uniform";
}

FunctionalDataset loadCsv(const std::string& path, GridMode mode,
                          const std::string& sidecarPath) {
  auto rows = readNumericRows(path);

  Vector gridPoints;
  size_t firstCurveRow = 0;
  if (mode == GridMode::kHeaderRow) {
    if (rows.size() < 2) {
      throw std::runtime_error("header-row file needs at least one curve row");
    }
    gridPoints = Eigen::Map<const Vector>(rows[0].data(),
                                          static_cast<Index>(rows[0].size()));
    firstCurveRow = 1;
  }

  const size_t p = rows[firstCurveRow].size();
  for (size_t r = firstCurveRow; r < rows.size(); ++r) {
    if (rows[r].size() != p) {
      throw std::runtime_error(
          "ragged rows: row " + std::to_string(r + 1) + " has " +
          std::to_string(rows[r].size()) + " columns, expected " +
          std::to_string(p));
    }
  }
  if (p < 2) {
    throw std::runtime_error("curves need at least 2 sampling points");
  }

  switch (mode) {
    case GridMode::kUniform:
      gridPoints = Grid::uniform(static_cast<Index>(p)).points();
      break;
    case GridMode::kHeaderRow:
      break;
    case GridMode::kSidecarFile: {
      if (sidecarPath.empty()) {
        throw std::invalid_argument("sidecar grid mode needs a grid file path");
      }
      auto gridRows = readNumericRows(sidecarPath);
      Vector g(static_cast<Index>(gridRows.size()));
      for (size_t r = 0; r < gridRows.size(); ++r) {
        if (gridRows[r].size() != 1) {
          throw std::runtime_error("sidecar grid file must hold one value per line");
        }
        g[static_cast<Index>(r)] = gridRows[r][0];
      }
      gridPoints = std::move(g);
      break;
    }
  }

  const size_t n = rows.size() - firstCurveRow;
  Matrix values(static_cast<Index>(n), static_cast<Index>(p));
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < p; ++c) {
      values(static_cast<Index>(r), static_cast<Index>(c)) =
          rows[r + firstCurveRow][c];
    }
  }
  return FunctionalDataset(Grid(std::move(gridPoints)), std::move(values));
}

void saveCsv(const FunctionalDataset& data, const std::string& path,
             bool headerRow) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  auto writeRow = [&out](const auto& row) {
    for (Index j = 0; j < row.size(); ++j) {
      if (j > 0) out << ',';
      out << formatValue(row[j]);
    }
    out << '\n';
  };
  if (headerRow) writeRow(data.grid().points());
  for (Index i = 0; i < data.numCurves(); ++i) writeRow(data.curve(i));
}

LabelVector loadLabelsCsv(const std::string& path) {
  auto rows = readNumericRows(path);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 1) {
      throw std::runtime_error("label file must hold one value per line");
    }
    labels.push_back(static_cast<int>(rows[r][0]));
  }
  return LabelVector(std::move(labels));
}

void saveLabelsCsv(const LabelVector& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (Index i = 0; i < labels.size(); ++i) out << labels[i] << '\n';
}

ScoreVector loadScoresCsv(const std::string& path) {
  auto rows = readNumericRows(path);
  Vector scores(static_cast<Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 1) {
      throw std::runtime_error("score file must hold one value per line");
    }
    scores[static_cast<Index>(r)] = rows[r][0];
  }
  return ScoreVector(std::move(scores));
}

void saveScoresCsv(const ScoreVector& scores, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (Index i = 0; i < scores.size(); ++i) {
    out << formatValue(scores[i]) << '\n';
  }
}

}  // namespace fad
