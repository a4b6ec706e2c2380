#pragma once

#include <string>
#include <vector>

namespace grushin {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured value vs bound, or the failure reason
};

/// Runs the cross-module invariant suite (orthonormality, eigen residuals,
/// dissipation, the Hardy bound, the time threshold, Gramian duality, ratio
/// decay and its factorial bound, weight admissibility, the temporal weight
/// inequalities, kernel positivity, and the penalized control contract).
/// Deterministic: fixed parameters, fixed order.
std::vector<CheckResult> run_verify_suite();

}  // namespace grushin
