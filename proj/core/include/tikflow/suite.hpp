#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tikflow {

inline constexpr int kCriterionCount = 12;

/// Outcome of one acceptance criterion. `measured` and `threshold` are the
/// headline quantity; `detail` lists the secondary conditions.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

/// Runs criterion `id` in [1, kCriterionCount]. Throws ParameterError for an
/// unknown id. Numerical failures are reported as a failed criterion.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite();

/// "criterion <id> <name>: PASS|FAIL measured=<v> threshold=<v> time=<s>s <detail>"
void write_line(std::ostream& os, const CriterionResult& r);

}  // namespace tikflow
