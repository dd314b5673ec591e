// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Also reachable as `tdlab check`.
#include <iostream>

#include "tdlab/acceptance.hpp"

int main() {
  auto results = tdlab::run_acceptance_suite(std::cout);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES present")
            << " (" << results.size() - failed << "/" << results.size() << ")\n";
  return failed == 0 ? 0 : 1;
}
