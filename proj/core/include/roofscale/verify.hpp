#pragma once

#include <string>
#include <vector>

namespace roofscale {

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;  // empty when passed; diagnostic otherwise
};

// Runs the sampling-based property suite. "fast" keeps every check at or
// below 100 random trials with trimmed optimizer budgets; "full" runs the
// spec-sized versions plus the expensive oracles (optimizer against the
// closed-form two-qubit roof over 50 states, the degree-4 naive-rescaling
// failure demonstration). Throws std::invalid_argument for other names.
// Exceptions inside a property are caught and reported as failures.
std::vector<PropertyResult> run_verify_suite(const std::string& suite);

}  // namespace roofscale
