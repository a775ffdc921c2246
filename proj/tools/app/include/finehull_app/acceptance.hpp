#pragma once

#include <string>
#include <vector>

#include "finehull_app/artifacts.hpp"

namespace finehull::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // deterministic measured values
  double seconds = 0.0; // wall time, reported but never written to artifacts
};

/// Criteria 1-9; each writes its data files into `artifacts`.
std::vector<CriterionResult> run_criteria(ArtifactSet& artifacts, int threads);

struct AcceptanceReport {
  std::vector<CriterionResult> rows;  // 1-10
  ArtifactSet artifacts;              // first run plus summary.csv
  bool all_pass() const;
};

/// Runs criteria 1-9 twice, the second time with a different thread count,
/// and adds criterion 10: both runs produced identical bytes.
AcceptanceReport reproduce_all(int threads);

std::string summary_line(const CriterionResult& row);

}  // namespace finehull::app
