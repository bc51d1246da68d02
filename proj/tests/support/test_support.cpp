#include "test_support.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <stdexcept>

namespace fad::test {

std::vector<double> randomSample(Rng& rng, Index n, double lo, double hi) {
  std::vector<double> out(static_cast<size_t>(n));
  for (auto& v : out) v = rng.uniform(lo, hi);
  return out;
}

Grid randomGrid(Rng& rng, Index p) {
  if (rng.uniform() < 0.5) return Grid::uniform(p);
  // Jittered grid: strictly increasing, inside [0, 1].
  std::vector<double> raw(static_cast<size_t>(p));
  for (auto& v : raw) v = rng.uniform();
  std::sort(raw.begin(), raw.end());
  Vector t(p);
  for (Index j = 0; j < p; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(p - 1);
    t[j] = 0.75 * u + 0.25 * raw[static_cast<size_t>(j)];
  }
  // Enforce strict monotonicity against duplicates from the sort.
  for (Index j = 1; j < p; ++j) {
    if (t[j] <= t[j - 1]) t[j] = t[j - 1] + 1e-9;
  }
  if (t[p - 1] > 1.0) {
    for (Index j = 0; j < p; ++j) t[j] /= t[p - 1];
  }
  return Grid(std::move(t));
}

FunctionalDataset randomDataset(Rng& rng, Index n, Index p) {
  const Grid grid = randomGrid(rng, p);
  Matrix values(n, p);
  for (Index i = 0; i < n; ++i) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(0.5, 3.0);
    const double phase = rng.uniform(0.0, 6.28);
    for (Index j = 0; j < p; ++j) {
      values(i, j) = a + std::sin(b * 6.28 * grid[j] + phase) +
                     0.3 * rng.normal();
    }
  }
  return FunctionalDataset(grid, std::move(values));
}

Matrix randomPoints(Rng& rng, Index n, Index d, double scale) {
  Matrix out(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) out(i, j) = scale * rng.normal();
  }
  return out;
}

Vector randomScoresWithTies(Rng& rng, Index n) {
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    if (rng.uniform() < 0.4) {
      out[i] = std::floor(rng.uniform(0.0, 4.0));  // quantized: forces ties
    } else {
      out[i] = rng.uniform(0.0, 4.0);
    }
  }
  return out;
}

std::vector<int> randomLabelsBothClasses(Rng& rng, Index n) {
  std::vector<int> labels(static_cast<size_t>(n));
  for (auto& v : labels) v = rng.uniform() < 0.3 ? 1 : -1;
  labels[static_cast<size_t>(rng.integer(static_cast<uint64_t>(n)))] = 1;
  // Guarantee a negative too.
  bool hasNeg = false;
  for (int v : labels) hasNeg = hasNeg || v == -1;
  if (!hasNeg) labels[0] = -1;
  return labels;
}

double tukeyDepthCounting(double x, const std::vector<double>& sample) {
  Index le = 0, ge = 0;
  for (double v : sample) {
    if (v <= x) ++le;
    if (v >= x) ++ge;
  }
  return static_cast<double>(std::min(le, ge)) /
         static_cast<double>(sample.size());
}

double medcoupleEnumeration(const std::vector<double>& sample) {
  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  const double med = n % 2 == 1
                         ? sorted[n / 2]
                         : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  // Ranks within the tied-to-median block.
  std::vector<size_t> tieRank(n, 0);
  size_t tieCount = 0;
  for (size_t i = 0; i < n; ++i) {
    if (sorted[i] == med) tieRank[i] = ++tieCount;
  }
  std::vector<double> kernels;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!(sorted[i] <= med && med <= sorted[j])) continue;
      if (sorted[i] == sorted[j]) {
        const double s = static_cast<double>(tieRank[i] + tieRank[j]) - 1.0 -
                         static_cast<double>(tieCount);
        kernels.push_back(s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0));
      } else {
        kernels.push_back((sorted[j] + sorted[i] - 2.0 * med) /
                          (sorted[j] - sorted[i]));
      }
    }
  }
  if (kernels.empty()) return 0.0;
  std::sort(kernels.begin(), kernels.end());
  const size_t m = kernels.size();
  return m % 2 == 1 ? kernels[m / 2]
                    : 0.5 * (kernels[m / 2 - 1] + kernels[m / 2]);
}

double aucPairwise(const Vector& scores, const std::vector<int>& labels) {
  double concordant = 0.0, ties = 0.0, pairs = 0.0;
  for (Index i = 0; i < scores.size(); ++i) {
    if (labels[static_cast<size_t>(i)] != 1) continue;
    for (Index j = 0; j < scores.size(); ++j) {
      if (labels[static_cast<size_t>(j)] != -1) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) concordant += 1.0;
      if (scores[i] == scores[j]) ties += 1.0;
    }
  }
  return (concordant + 0.5 * ties) / pairs;
}

double apThresholdEnumeration(const Vector& scores,
                              const std::vector<int>& labels) {
  // Distinct thresholds in descending order; AP = sum (R_k - R_{k-1}) P_k on
  // progressively flagging s >= threshold.
  std::vector<double> thresholds(scores.begin(), scores.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  double positives = 0.0;
  for (int v : labels) positives += v == 1;
  double ap = 0.0, prevRecall = 0.0;
  for (double t : thresholds) {
    double tp = 0.0, flagged = 0.0;
    for (Index i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) {
        flagged += 1.0;
        if (labels[static_cast<size_t>(i)] == 1) tp += 1.0;
      }
    }
    const double recall = tp / positives;
    const double precision = tp / flagged;
    ap += (recall - prevRecall) * precision;
    prevRecall = recall;
  }
  return ap;
}

double hullAreaFanTriangulation(const PlanarPointSet& points) {
  const PlanarPointSet hull = convexHull(points);
  if (hull.size() < 3) return 0.0;
  double cx = 0.0, cy = 0.0;
  for (const auto& p : hull) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(hull.size());
  cy /= static_cast<double>(hull.size());
  double area = 0.0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    area += 0.5 * std::abs((a.x - cx) * (b.y - cy) - (b.x - cx) * (a.y - cy));
  }
  return area;
}

Vector lofFromDefinition(const Matrix& data, Index k) {
  const Index n = data.rows();
  auto distance = [&](Index a, Index b) {
    return (data.row(a) - data.row(b)).norm();
  };
  auto kDistance = [&](Index a) {
    std::vector<double> d;
    for (Index b = 0; b < n; ++b) {
      if (b != a) d.push_back(distance(a, b));
    }
    std::sort(d.begin(), d.end());
    return d[static_cast<size_t>(k - 1)];
  };
  auto neighbors = [&](Index a) {
    const double kd = kDistance(a);
    std::vector<Index> nb;
    for (Index b = 0; b < n; ++b) {
      if (b != a && distance(a, b) <= kd) nb.push_back(b);
    }
    return nb;
  };
  auto lrd = [&](Index a) {
    const auto nb = neighbors(a);
    double acc = 0.0;
    for (Index b : nb) acc += std::max(kDistance(b), distance(a, b));
    const double mean = acc / static_cast<double>(nb.size());
    return 1.0 / std::max(mean, 1e-12);
  };
  Vector out(n);
  for (Index a = 0; a < n; ++a) {
    const auto nb = neighbors(a);
    double acc = 0.0;
    for (Index b : nb) acc += lrd(b);
    out[a] = acc / (static_cast<double>(nb.size()) * lrd(a));
  }
  return out;
}

Matrix fpcaScoresDenseOracle(const FunctionalDataset& data, Index k) {
  const Index n = data.numCurves();
  const Index p = data.numPoints();
  const Vector w = data.grid().quadratureWeights();
  const Vector mean = data.values().colwise().mean().transpose();
  const Matrix centered = data.values().rowwise() - mean.transpose();
  const Vector sqrtW = w.cwiseSqrt();
  const Matrix b = centered * sqrtW.asDiagonal();
  const Matrix cov = b.transpose() * b / static_cast<double>(n);  // p x p
  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("oracle eigendecomposition failed");
  }
  Matrix components(k, p);
  for (Index c = 0; c < k; ++c) {
    components.row(c) = (solver.eigenvectors().col(p - 1 - c).array() /
                         sqrtW.array())
                            .matrix()
                            .transpose();
  }
  return centered * (w.asDiagonal() * components.transpose());
}

bool xmlWellFormed(const std::string& text, std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };
  std::vector<std::string> stack;
  size_t i = 0;
  const size_t n = text.size();
  bool sawElement = false;
  while (i < n) {
    if (text[i] != '<') {
      if (text[i] == '>') return fail("stray '>'");
      ++i;
      continue;
    }
    if (text.compare(i, 2, "<?") == 0) {
      const size_t end = text.find("?>", i);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    if (text.compare(i, 4, "<!--") == 0) {
      const size_t end = text.find("-->", i);
      if (end == std::string::npos) return fail("unterminated comment");
      i = end + 3;
      continue;
    }
    const bool closing = i + 1 < n && text[i + 1] == '/';
    size_t j = i + (closing ? 2 : 1);
    const size_t nameStart = j;
    while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                     text[j] == ':' || text[j] == '-' || text[j] == '_')) {
      ++j;
    }
    if (j == nameStart) return fail("missing tag name");
    const std::string name = text.substr(nameStart, j - nameStart);
    // Attributes: values must be quoted.
    bool selfClosing = false;
    while (j < n && text[j] != '>') {
      if (text[j] == '"') {
        const size_t end = text.find('"', j + 1);
        if (end == std::string::npos) return fail("unterminated attribute");
        j = end + 1;
        continue;
      }
      if (text[j] == '/' && j + 1 < n && text[j + 1] == '>') {
        selfClosing = true;
        ++j;
        continue;
      }
      if (text[j] == '<') return fail("nested '<' inside tag");
      ++j;
    }
    if (j >= n) return fail("unterminated tag");
    sawElement = true;
    if (closing) {
      if (selfClosing) return fail("closing tag cannot self-close");
      if (stack.empty() || stack.back() != name) {
        return fail("mismatched closing tag: " + name);
      }
      stack.pop_back();
    } else if (!selfClosing) {
      stack.push_back(name);
    }
    i = j + 1;
  }
  if (!stack.empty()) return fail("unclosed element: " + stack.back());
  if (!sawElement) return fail("no elements");
  return true;
}

std::string tempDir(const std::string& hint) {
  namespace fs = std::filesystem;
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("fad_test_" + hint + "_" + std::to_string(::getpid()) +
                        "_" + std::to_string(counter++));
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace fad::test
