#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jumplab {

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string details;
};

/// Operator unbiasedness battery (shift and permutation covariance).
std::vector<CriterionResult> verify_operators();
/// Exact combinatorics and concentration battery.
std::vector<CriterionResult> verify_stats();
/// Distance-estimator contract battery.
std::vector<CriterionResult> verify_estimators();
/// The full end-to-end battery (all acceptance checks, one line each).
std::vector<CriterionResult> verify_e2e();

/// Runs a named suite ("operators", "stats", "estimators", "e2e"), prints one
/// pass/fail line per criterion, returns 0 when everything passed, 1 otherwise.
int run_suite(const std::string& name, std::ostream& out);

}  // namespace jumplab
