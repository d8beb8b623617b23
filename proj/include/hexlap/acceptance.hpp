#pragma once

#include <string>
#include <vector>

namespace hexlap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full verification battery (criteria 1-9) and prints one
// pass/fail line per criterion to stdout. Returns the per-criterion
// results; overall success = every criterion passed.
std::vector<CriterionResult> run_acceptance(const std::string& golden_dir);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace hexlap
