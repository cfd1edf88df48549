#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracwave_harness/report.hpp"

namespace fracwave::harness {

struct CriterionInfo {
  int id = 0;
  std::string title;
  double runtime_limit = 0.0;  ///< seconds, 0 = none
};

/// Criteria 1-10 in order.
const std::vector<CriterionInfo>& criteria();

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

/// Runs one criterion, adding its CSV tables and summary keys to bundle.
CriterionOutcome run_criterion(int id, std::uint64_t seed, ReportBundle& bundle);

struct SuiteResult {
  std::vector<CriterionOutcome> outcomes;
  ReportBundle bundle;
  bool all_passed = false;
};

/// Criteria 1-10 and a light in-process determinism check (criterion 2 and
/// 10 rerun on one thread and compared byte for byte). on_done receives each
/// outcome with its wall time, which never enters the bundle.
SuiteResult run_verify_all(std::uint64_t seed,
                           const std::function<void(const CriterionOutcome&, double)>& on_done = {});

}  // namespace fracwave::harness
