#pragma once

#include <vector>

#include "structsparse/tree.hpp"
#include "structsparse/types.hpp"

namespace structsparse {

class CodingScheme;

/// A base block: a candidate support piece with its base code length cl0(B)
/// in bits. base_bits may be +inf (the block exists for coverage only).
struct Block {
  SupportSet indices;
  double base_bits = 0.0;
};

/// Dictionary of base blocks searched by the structured greedy algorithm and
/// used to induce block coding. Invariants: the blocks cover [0, p), every
/// singleton {j} is present (possibly at infinite base length), and the base
/// lengths satisfy the Kraft inequality sum 2^-cl0(B) <= 1 over finite
/// blocks.
struct BlockSet {
  std::vector<Block> blocks;
  Index p = 0;

  Index size() const { return static_cast<Index>(blocks.size()); }

  /// Sum of 2^-cl0 over blocks with finite base length.
  double base_kraft_sum() const;

  /// Throws if any invariant fails.
  void validate() const;
};

/// All singletons {j}, each at cl0 = log2 p.
BlockSet singleton_blocks(Index p);

/// Group dictionary: one block per group at cl0 = log2 m, plus all
/// singletons at infinite base length. Groups must partition [0, p).
BlockSet group_blocks(Index p, const std::vector<SupportSet>& groups);

/// Contiguous intervals of length 1..max_len on the line graph; an interval
/// of length l costs cl0 = log2 p + l (uniform start position plus a length
/// prefix), which satisfies the base Kraft inequality by construction.
BlockSet line_connected_blocks(Index p, Index max_len);

/// Axis-aligned rectangles of area <= max_area on the h x w grid. An r x c
/// rectangle costs cl0 = log2 p + r + c; the side-length surcharge keeps the
/// base Kraft sum below one (a flat per-cell surcharge does not in 2D).
BlockSet grid_connected_blocks(Index h, Index w, Index max_area);

/// Root-closed path blocks of a rooted forest: for each variable v < p, the
/// block {v} union ancestors(v), at cl0 = 1 + log2 p, plus all singletons at
/// cl0 = 2 + log2 p. Unions of path blocks are closed under the parent
/// relation.
BlockSet tree_path_blocks(const Tree& tree, Index p);

/// Default maximum block extent used by the line/grid experiments:
/// max(2, ceil(log2 p)).
Index default_block_extent(Index p);

/// Partition of [0, p) into consecutive groups of the given size (the last
/// group may be short).
std::vector<SupportSet> consecutive_groups(Index p, Index group_size);

struct BlockSetStats {
  double rho0 = 0.0;  // max over finite blocks of rho_+(B)
  double c0 = 0.0;    // max over finite blocks of c(B)
};

/// Extremes over the dictionary's finite blocks: largest restricted
/// eigenvalue and largest coding complexity.
BlockSetStats block_set_stats(const BlockSet& blocks, const Matrix& X,
                              const CodingScheme& scheme);

enum class CoverMode { exact, greedy };

/// Minimum (exact mode, branch and bound, p <= 16) or greedily bounded total
/// complexity sum over block covers of supp(beta): min sum_j c(B_j) subject
/// to supp(beta) inside the union of the chosen blocks. +inf when no cover
/// by finite blocks exists.
double block_cover_complexity(const Vector& beta, const BlockSet& blocks,
                              const CodingScheme& scheme, CoverMode mode);

}  // namespace structsparse
