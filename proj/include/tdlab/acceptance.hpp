#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tdlab {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the complete acceptance suite at desk scale, streaming one
/// "[PASS]/[FAIL] name: detail" line per criterion to `out`. Returns the
/// results; overall success is the conjunction.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace tdlab
