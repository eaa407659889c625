#pragma once

#include <string>
#include <vector>

#include "adl/report.hpp"

namespace adl {

inline constexpr uint64_t kDefaultSuiteSeed = 20250823;

struct CriterionInfo {
    int index = 0;              // stable 1-based id
    const char* slug = "";      // short name used in reports
    const char* suite = "";     // appendix | gcl | quadform | words
    double budget_seconds = 0;  // wall budget enforced by the acceptance runner
};

const std::vector<CriterionInfo>& criteria_list();

// appendix | gcl | quadform | words | all. Unsupported on unknown names.
std::vector<int> suite_selection(const std::string& name);

// Runs one criterion and fills wall_seconds. Errors escaping a criterion body
// surface as a failed "uncaught_error" check instead of propagating.
ExperimentReport run_criterion(int index, uint64_t seed = kDefaultSuiteSeed);

}  // namespace adl
