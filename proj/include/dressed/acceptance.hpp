#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dressed {

enum class Verdict { Pass, Fail, Info };

struct CriterionResult {
  int id = 0;
  std::string name;
  Verdict verdict = Verdict::Fail;
  double measured = 0.0;
  /// Pass limit for `measured`; NaN when the criterion only records a value.
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "in", ...
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Shorter spans and coarser grids, for smoke testing only.
  bool fast = false;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One status line per criterion, followed by its indented details.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

/// Info results count as passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace dressed
