#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wrinkle/report.hpp"

namespace wrinkle {

namespace tolerance {
inline constexpr double kSingularValue = 1e-9;
inline constexpr double kTrace = 1e-12;
inline constexpr double kCurveMatch = 1e-12;
inline constexpr double kBranchMatch = 1e-12;
inline constexpr double kTubeRadius = 0.05;
}  // namespace tolerance

inline constexpr int kCriterionCount = 11;
inline constexpr int kRoundTripTrials = 20;
inline constexpr int kTwistTriples = 1000;
inline constexpr int kFindKMax = 100;

struct Part {
  std::string name;
  bool pass = false;
  nlohmann::json value;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Part> parts;

  bool pass() const;
  /// "criterion 3 FAIL ..." with the failing parts named.
  std::string line() const;
};

/// Criteria 1..10; 11 compares two complete runs and is only available through run_acceptance.
CriterionResult run_criterion(int id, const RunConfig& config);
std::vector<CriterionResult> run_acceptance(const RunConfig& config);

nlohmann::json to_json(const CriterionResult& result);
nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, const RunConfig& config);

}  // namespace wrinkle
