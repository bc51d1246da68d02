#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fad/dataset.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fad {

/// A fitted anomaly detector. Scores are oriented larger = more anomalous.
///
/// scoreTraining() scores the curves the detector was fitted on, under each
/// method's member convention (depth detectors keep the curve in the
/// reference sample; ACH excludes the scored row from its subsets).
/// score() treats curves as external queries on the same grid.
class Detector {
 public:
  virtual ~Detector() = default;

  const std::string& name() const { return name_; }

  virtual ScoreVector scoreTraining(int threads = 1) const = 0;
  virtual ScoreVector score(const FunctionalDataset& data,
                            int threads = 1) const = 0;

  /// Resolved parameters, echoed into benchmark reports.
  virtual nlohmann::json paramsEcho() const = 0;

  /// Self-contained model document; detectorFromJson() restores a detector
  /// whose score() reproduces this one exactly.
  virtual nlohmann::json toJson() const = 0;

 protected:
  explicit Detector(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

/// Built-in registry names:
///   fT, fSDO, fAO, ACH, FIF, MS+IF, FOM(fSDO)+IF, FOM(fAO)+IF,
///   FPCA+IF, FPCA+LOF, HAAR+IF, HAAR+LOF.
const std::vector<std::string>& detectorNames();

std::unique_ptr<Detector> fitDetector(const std::string& name,
                                      const nlohmann::json& params,
                                      const FunctionalDataset& train,
                                      std::uint64_t seed, int threads = 1);

std::unique_ptr<Detector> detectorFromJson(const nlohmann::json& doc,
                                           int threads = 1);

}  // namespace fad
