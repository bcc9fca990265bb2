#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qwalk/walk_operators.hpp"

namespace qwalk::cli {

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Injection points for mutation testing; defaults are the library routines.
struct ValidationHooks {
  std::function<void(WalkState&, const OracleSpec&)> step = qwalk::step;
  std::function<void(WalkState&)> shift = qwalk::apply_shift;
};

// Dense-oracle equivalence, involutions, invariant subspace, entropy
// duality and Monte Carlo agreement at N <= 64.
std::vector<CheckResult> run_validation(const ValidationHooks& hooks = {});

void print_report(std::ostream& out, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qwalk::cli
