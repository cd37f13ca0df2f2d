#pragma once

#include <string>
#include <vector>

#include "foxcol/analysis.hpp"

namespace foxcol {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // summary stats, or the first failure
  i64 ms = 0;          // wall clock spent on this criterion
  i64 limit_ms = 0;    // 0 means untimed
};

// Runs the full acceptance checklist, one result per criterion. A criterion
// passes only if its checks succeed within its time limit.
std::vector<CriterionResult> run_acceptance();

}  // namespace foxcol
