#include "structsparse/structomp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "structsparse/linalg.hpp"

namespace structsparse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scheme_increment(const CodingScheme& scheme, const SupportSet& F,
                        double c_current, const SupportSet& merged) {
  return scheme.complexity(merged) - c_current;
}

double gain_from_parts(double numerator, double increment) {
  if (increment == kInf) return 0.0;
  if (increment <= 0.0) return numerator > 0.0 ? kInf : 0.0;
  return numerator / increment;
}

}  // namespace

double gain_phi(const Matrix& X, const Vector& residual, const SupportSet& F,
                const Block& block, const CodingScheme& scheme) {
  const SupportSet novel = set_difference(block.indices, F);
  if (novel.empty()) return 0.0;
  const double increment =
      scheme_increment(scheme, F, scheme.complexity(F), set_union(F, block.indices));
  return gain_from_parts(projection_gain(X, residual, novel), increment);
}

double gain_phi_tilde(const Matrix& X, const Vector& residual,
                      const SupportSet& F, const Block& block,
                      const CodingScheme& scheme) {
  const SupportSet novel = set_difference(block.indices, F);
  if (novel.empty()) return 0.0;
  const double increment =
      scheme_increment(scheme, F, scheme.complexity(F), set_union(F, block.indices));
  return gain_from_parts(correlation_gain(X, residual, novel), increment);
}

GreedyPath struct_omp(const Matrix& X, const Vector& y, const BlockSet& blocks,
                      const CodingScheme& scheme, const GreedyConfig& cfg) {
  if (blocks.size() == 0)
    throw std::invalid_argument("struct_omp: empty block dictionary");
  if (blocks.p != X.cols())
    throw std::invalid_argument("struct_omp: block set does not match X");
  if (scheme.dimension() != X.cols())
    throw std::invalid_argument("struct_omp: coding scheme does not match X");
  if (y.size() != X.rows())
    throw std::invalid_argument("struct_omp: y length does not match X");
  if (!(cfg.budget > 0.0))
    throw std::invalid_argument("struct_omp: budget must be positive");

  const bool tracked = cfg.accounting == ComplexityMode::tracked_blocks;
  // Gains below the numeric floor count as zero, so an exact fit stops the
  // loop instead of feeding rounding noise into new selections.
  const double gain_floor = 1e-24 * y.squaredNorm();

  GreedyPath path;
  {
    GreedyState init;
    init.coefficients = Vector::Zero(X.cols());
    init.residual = -y;
    init.residual_norm = y.norm();
    path.states.push_back(std::move(init));
  }

  std::vector<char> in_support(static_cast<std::size_t>(X.cols()), 0);
  Vector correlations;  // X^T r, refreshed per iteration in correlation mode

  for (Index k = 1; k <= cfg.max_iterations; ++k) {
    const GreedyState& current = path.states.back();
    const double c_current = current.complexity;

    if (cfg.gain == GainMode::correlation)
      correlations = X.transpose() * current.residual;

    // Pass 1: novel parts and complexity increments; a free block (positive
    // novelty at non-positive increment) is taken outright.
    Index free_id = -1;
    SupportSet free_novel;
    double free_increment = 0.0;
    struct Candidate {
      Index id;
      SupportSet novel;
      double increment;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(blocks.size()));
    for (Index b = 0; b < blocks.size() && free_id < 0; ++b) {
      const Block& block = blocks.blocks[static_cast<std::size_t>(b)];
      std::vector<Index> fresh;
      for (Index j : block.indices)
        if (!in_support[static_cast<std::size_t>(j)]) fresh.push_back(j);
      if (fresh.empty()) continue;
      SupportSet novel(std::move(fresh));
      double increment;
      if (tracked) {
        increment = block.base_bits == kInfiniteBits
                        ? kInf
                        : static_cast<double>(novel.size()) + block.base_bits + 1.0;
      } else {
        increment = scheme_increment(scheme, current.support, c_current,
                                     set_union(current.support, block.indices));
      }
      if (increment <= 0.0) {
        free_id = b;
        free_novel = std::move(novel);
        free_increment = increment;
        break;
      }
      if (increment < kInf)
        candidates.push_back({b, std::move(novel), increment});
    }

    Index chosen = free_id;
    SupportSet chosen_novel = free_novel;
    double chosen_increment = free_increment;
    if (chosen < 0) {
      // Pass 2: argmax of the configured gain, ties toward the lowest id.
      double best_gain = 0.0;
      for (auto& cand : candidates) {
        double numerator;
        if (cfg.gain == GainMode::correlation) {
          numerator = 0.0;
          for (Index j : cand.novel)
            numerator += correlations[j] * correlations[j];
        } else {
          numerator = projection_gain(X, current.residual, cand.novel);
        }
        if (numerator <= gain_floor) continue;
        const double gain = numerator / cand.increment;
        if (gain > best_gain) {
          best_gain = gain;
          chosen = cand.id;
          chosen_novel = cand.novel;
          chosen_increment = cand.increment;
        }
      }
      if (chosen < 0) {
        path.stop = StopReason::no_positive_gain;
        path.diagnostic = k == 1 ? "no block with positive gain fits the data"
                                 : "";
        break;
      }
    }

    const Block& block = blocks.blocks[static_cast<std::size_t>(chosen)];
    GreedyState next;
    next.iteration = k;
    next.support = set_union(current.support, block.indices);
    next.coefficients = restricted_least_squares(X, y, next.support);
    next.residual = X * next.coefficients - y;
    next.residual_norm = next.residual.norm();
    next.complexity = tracked ? c_current + chosen_increment
                              : scheme.complexity(next.support);
    next.block_id = chosen;
    const double drop =
        current.residual_norm * current.residual_norm - next.residual_norm * next.residual_norm;
    const double c_step = next.complexity - c_current;
    next.gain_ratio = c_step > 0.0 ? drop / c_step : kInf;
    for (Index j : chosen_novel) in_support[static_cast<std::size_t>(j)] = 1;
    path.states.push_back(std::move(next));

    const GreedyState& added = path.states.back();
    if (added.complexity <= cfg.budget)
      path.last_within_budget = static_cast<Index>(path.states.size()) - 1;
    if (added.complexity > cfg.budget) {
      path.stop = StopReason::budget_exceeded;
      if (path.states.size() == 2 && path.last_within_budget == 0)
        path.diagnostic = "budget below the cheapest block complexity; "
                          "within-budget model is empty";
      break;
    }
    if (free_id < 0 && drop < cfg.min_improvement) {
      path.stop = StopReason::stalled;
      break;
    }
  }
  if (path.stop == StopReason::running) path.stop = StopReason::max_iterations;
  return path;
}

}  // namespace structsparse
