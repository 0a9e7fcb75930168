#include "structsparse/eigen_probe.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "structsparse/linalg.hpp"
#include "structsparse/rng.hpp"
#include "structsparse/signals.hpp"

namespace structsparse {

std::pair<double, double> restricted_eigs(const Matrix& X, const SupportSet& F) {
  if (F.empty()) throw std::invalid_argument("restricted_eigs: empty support");
  if (F.max_index() >= X.cols())
    throw std::invalid_argument("restricted_eigs: support index out of range");
  const Matrix Xf = gather_columns(X, F);
  const Matrix gram = (Xf.transpose() * Xf) / static_cast<double>(X.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const auto& values = eig.eigenvalues();
  return {std::max(0.0, values.minCoeff()), values.maxCoeff()};
}

std::vector<SupportSet> feasible_supports(const CodingScheme& scheme, double s) {
  const Index p = scheme.dimension();
  if (p > 14) throw std::invalid_argument("feasible_supports: p > 14 not enumerable");
  std::vector<SupportSet> family;
  const std::uint64_t count = std::uint64_t{1} << p;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    SupportSet F = SupportSet::from_mask(mask);
    if (scheme.complexity(F) <= s + 1e-9) family.push_back(std::move(F));
  }
  return family;
}

std::vector<SupportSet> supports_up_to_cardinality(Index p, Index k) {
  if (p > 20) throw std::invalid_argument("supports_up_to_cardinality: p too large");
  std::vector<SupportSet> family;
  const std::uint64_t count = std::uint64_t{1} << p;
  for (std::uint64_t mask = 1; mask < count; ++mask)
    if (std::popcount(mask) <= k) family.push_back(SupportSet::from_mask(mask));
  return family;
}

EigBounds rho_over_supports(const Matrix& X, const std::vector<SupportSet>& family) {
  if (family.empty())
    throw std::invalid_argument("rho_over_supports: empty support family");
  EigBounds bounds;
  bounds.rho_minus = std::numeric_limits<double>::infinity();
  bounds.rho_plus = -std::numeric_limits<double>::infinity();
  for (const SupportSet& F : family) {
    const auto [lo, hi] = restricted_eigs(X, F);
    if (lo < bounds.rho_minus) {
      bounds.rho_minus = lo;
      bounds.argmin = F;
    }
    if (hi > bounds.rho_plus) {
      bounds.rho_plus = hi;
      bounds.argmax = F;
    }
  }
  return bounds;
}

EigBounds rho_of_complexity(const Matrix& X, const CodingScheme& scheme, double s) {
  const auto family = feasible_supports(scheme, s);
  if (family.empty())
    throw std::invalid_argument("rho_of_complexity: no feasible nonempty support");
  return rho_over_supports(X, family);
}

EigBounds rho_of_complexity_sampled(const Matrix& X, const CodingScheme& scheme,
                                    double s, Index samples, std::uint64_t seed) {
  const Index p = scheme.dimension();
  Rng rng(seed);
  std::vector<SupportSet> family;
  Index attempts = 0;
  const Index max_attempts = samples * 1000;
  while (static_cast<Index>(family.size()) < samples && attempts < max_attempts) {
    ++attempts;
    // Geometric-ish sizes keep small supports likely, where feasibility is.
    const Index size = 1 + rng.uniform_int(0, std::max<Index>(1, p / 4) - 1);
    std::vector<Index> idx;
    for (Index i = 0; i < size; ++i) idx.push_back(rng.uniform_int(0, p - 1));
    SupportSet F(std::move(idx));
    if (scheme.complexity(F) <= s + 1e-9) family.push_back(std::move(F));
  }
  if (family.empty())
    throw std::invalid_argument("rho_of_complexity_sampled: no feasible support found");
  EigBounds bounds = rho_over_supports(X, family);
  bounds.exact = false;
  return bounds;
}

double rip_sample_bound(double delta, double t, double s) {
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("rip_sample_bound: delta must be in (0,1)");
  return 8.0 / (delta * delta) *
         (std::log(3.0) + t + s * std::log(1.0 + 8.0 / delta));
}

double check_structured_rip(Index n, Index p, const CodingScheme& scheme,
                            double s, double delta, Index trials,
                            std::uint64_t seed, std::vector<RipTrial>* report) {
  if (scheme.dimension() != p)
    throw std::invalid_argument("check_structured_rip: scheme dimension mismatch");
  const auto family = feasible_supports(scheme, s);
  if (family.empty())
    throw std::invalid_argument("check_structured_rip: no feasible support");
  Index passes = 0;
  for (Index t = 0; t < trials; ++t) {
    const Matrix X = gen_design_gaussian_raw(n, p, derive_seed(seed, "rip-trial", t));
    const EigBounds bounds = rho_over_supports(X, family);
    const bool pass = std::sqrt(bounds.rho_minus) >= 1.0 - delta &&
                      std::sqrt(bounds.rho_plus) <= 1.0 + delta;
    if (pass) ++passes;
    if (report != nullptr)
      report->push_back({bounds.rho_minus, bounds.rho_plus, pass});
  }
  return static_cast<double>(passes) / static_cast<double>(trials);
}

Vector exhaustive_constrained_solver(const Matrix& X, const Vector& y,
                                     const CodingScheme& scheme, double s) {
  const Index p = X.cols();
  if (p > 16)
    throw std::invalid_argument("exhaustive_constrained_solver: p > 16 not enumerable");
  if (scheme.dimension() != p)
    throw std::invalid_argument("exhaustive_constrained_solver: scheme dimension mismatch");

  Vector best = Vector::Zero(p);
  double best_obj = y.squaredNorm();  // empty support, c = 0, always feasible
  const double improve_tol = 1e-10 * y.squaredNorm();
  const std::uint64_t count = std::uint64_t{1} << p;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const SupportSet F = SupportSet::from_mask(mask);
    if (scheme.complexity(F) > s + 1e-9) continue;
    const Vector beta = restricted_least_squares(X, y, F);
    const double obj = (X * beta - y).squaredNorm();
    if (obj < best_obj - improve_tol) {
      best_obj = obj;
      best = beta;
    }
  }
  return best;
}

}  // namespace structsparse
