#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "structsparse/coding.hpp"
#include "structsparse/types.hpp"

namespace structsparse {

/// Extremes of (1/n) ||X beta||^2 / ||beta||^2 over vectors supported in F:
/// the smallest and largest eigenvalues of (1/n) X_F^T X_F.
std::pair<double, double> restricted_eigs(const Matrix& X, const SupportSet& F);

struct EigBounds {
  double rho_minus = 0.0;
  double rho_plus = 0.0;
  SupportSet argmin;  // support attaining rho_minus
  SupportSet argmax;  // support attaining rho_plus
  bool exact = true;
};

/// All nonempty supports with c(F) <= s (up to a 1e-9 slack); requires
/// p <= 14 for the 2^p enumeration.
std::vector<SupportSet> feasible_supports(const CodingScheme& scheme, double s);

/// All nonempty supports of cardinality <= k.
std::vector<SupportSet> supports_up_to_cardinality(Index p, Index k);

/// min rho_-(F) / max rho_+(F) over an explicit support family.
EigBounds rho_over_supports(const Matrix& X, const std::vector<SupportSet>& family);

/// Complexity-restricted extremes rho_-(s), rho_+(s), exact by enumeration
/// (p <= 14). Throws when no nonempty support is feasible.
EigBounds rho_of_complexity(const Matrix& X, const CodingScheme& scheme, double s);

/// Sampled variant for larger p: bounds over `samples` random feasible
/// supports (rejection-sampled by complexity), flagged approximate.
EigBounds rho_of_complexity_sampled(const Matrix& X, const CodingScheme& scheme,
                                    double s, Index samples, std::uint64_t seed);

/// Sample-size bound 8/delta^2 * [ln 3 + t + s ln(1 + 8/delta)] for the
/// structured RIP to hold with probability 1 - e^-t.
double rip_sample_bound(double delta, double t, double s);

struct RipTrial {
  double rho_minus = 0.0;
  double rho_plus = 0.0;
  bool pass = false;
};

/// Empirical structured-RIP check: draws `trials` iid N(0,1) matrices
/// (unnormalized, matching the random-projection model; experiment designs
/// are row-normalized and never used here) and tests
/// sqrt(rho_-(s)) >= 1-delta and sqrt(rho_+(s)) <= 1+delta on each.
/// Returns the success fraction; per-trial rows go to `report` if non-null.
double check_structured_rip(Index n, Index p, const CodingScheme& scheme,
                            double s, double delta, Index trials,
                            std::uint64_t seed,
                            std::vector<RipTrial>* report = nullptr);

/// Exact minimizer of ||X beta - y||^2 over all supports with c(F) <= s,
/// by enumeration (p <= 16). Ties are broken toward the first support in
/// mask order; improvements below 1e-10 * ||y||^2 do not displace the
/// incumbent, so noiseless instances resolve to the minimal support.
Vector exhaustive_constrained_solver(const Matrix& X, const Vector& y,
                                     const CodingScheme& scheme, double s);

}  // namespace structsparse
