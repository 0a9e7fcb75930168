#pragma once

#include <string>
#include <vector>

#include "structsparse/eigen_probe.hpp"

namespace structsparse {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

/// Kraft sums by enumeration for the shipped schemes (standard, nonuniform,
/// group, block-induced exact, tree), plus the connected-region scheme on a
/// 10-node path and a 3x3 grid.
CheckResult check_kraft_suite();

/// Sub-additivity of standard, block-induced (exact) and connected-region
/// code lengths by exhaustive pair enumeration.
CheckResult check_subadditive_suite();

/// Structured-RIP Monte Carlo at p = 12, group scheme, delta = 0.5, with the
/// sample size taken from the bound at t = ln 20; also verifies, per trial,
/// that the group-feasible rho_- dominates the matched-cardinality
/// unstructured one. Per-trial rows go to `report` when non-null.
CheckResult check_rip_suite(std::vector<RipTrial>* report = nullptr);

/// Greedy-vs-exhaustive comparison on 100 noiseless p = 12 instances:
/// oracle residual never above the greedy one at equal budget, and the
/// greedy support matches the oracle support in at least 90 instances.
CheckResult check_oracle_suite();

/// Haar round-trip and energy preservation at 1e-10.
CheckResult check_haar_suite();

/// Dispatch by suite name: kraft | subadditive | rip | oracle | haar.
CheckResult run_check_suite(const std::string& name,
                            std::vector<RipTrial>* report = nullptr);

}  // namespace structsparse
