#include "structsparse/blocks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "structsparse/coding.hpp"
#include "structsparse/eigen_probe.hpp"

namespace structsparse {

double BlockSet::base_kraft_sum() const {
  double sum = 0.0;
  for (const Block& b : blocks)
    if (b.base_bits != kInfiniteBits) sum += std::exp2(-b.base_bits);
  return sum;
}

void BlockSet::validate() const {
  if (p < 1) throw std::invalid_argument("BlockSet: p must be >= 1");
  std::vector<char> covered(static_cast<std::size_t>(p), 0);
  std::vector<char> singleton(static_cast<std::size_t>(p), 0);
  for (const Block& b : blocks) {
    if (b.indices.empty()) throw std::invalid_argument("BlockSet: empty block");
    if (b.indices.max_index() >= p)
      throw std::invalid_argument("BlockSet: block index out of range");
    if (b.base_bits < 0.0)
      throw std::invalid_argument("BlockSet: negative base length");
    for (Index j : b.indices) covered[static_cast<std::size_t>(j)] = 1;
    if (b.indices.size() == 1) singleton[static_cast<std::size_t>(b.indices[0])] = 1;
  }
  for (Index j = 0; j < p; ++j) {
    if (!covered[static_cast<std::size_t>(j)])
      throw std::invalid_argument("BlockSet: blocks do not cover every feature");
    if (!singleton[static_cast<std::size_t>(j)])
      throw std::invalid_argument("BlockSet: missing singleton block");
  }
  if (base_kraft_sum() > 1.0 + 1e-9)
    throw std::invalid_argument("BlockSet: base lengths violate Kraft");
}

BlockSet singleton_blocks(Index p) {
  if (p < 1) throw std::invalid_argument("singleton_blocks: p must be >= 1");
  BlockSet bs;
  bs.p = p;
  const double bits = std::log2(static_cast<double>(p));
  bs.blocks.reserve(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) bs.blocks.push_back({SupportSet{j}, bits});
  return bs;
}

BlockSet group_blocks(Index p, const std::vector<SupportSet>& groups) {
  // Constructing the scheme validates disjointness and coverage.
  GroupCoding partition(p, groups);
  BlockSet bs;
  bs.p = p;
  const double bits = std::log2(static_cast<double>(groups.size()));
  for (const SupportSet& g : groups) bs.blocks.push_back({g, bits});
  for (Index j = 0; j < p; ++j)
    bs.blocks.push_back({SupportSet{j}, kInfiniteBits});
  return bs;
}

BlockSet line_connected_blocks(Index p, Index max_len) {
  if (p < 1 || max_len < 1 || max_len > p)
    throw std::invalid_argument("line_connected_blocks: bad arguments");
  BlockSet bs;
  bs.p = p;
  const double pos_bits = std::log2(static_cast<double>(p));
  for (Index len = 1; len <= max_len; ++len)
    for (Index start = 0; start + len <= p; ++start) {
      std::vector<Index> idx(static_cast<std::size_t>(len));
      std::iota(idx.begin(), idx.end(), start);
      bs.blocks.push_back({SupportSet(std::move(idx)),
                           pos_bits + static_cast<double>(len)});
    }
  return bs;
}

BlockSet grid_connected_blocks(Index h, Index w, Index max_area) {
  if (h < 1 || w < 1 || max_area < 1)
    throw std::invalid_argument("grid_connected_blocks: bad arguments");
  BlockSet bs;
  bs.p = h * w;
  const double pos_bits = std::log2(static_cast<double>(bs.p));
  for (Index rows = 1; rows <= std::min(h, max_area); ++rows)
    for (Index cols = 1; rows * cols <= max_area && cols <= w; ++cols)
      for (Index r0 = 0; r0 + rows <= h; ++r0)
        for (Index c0 = 0; c0 + cols <= w; ++c0) {
          std::vector<Index> idx;
          idx.reserve(static_cast<std::size_t>(rows * cols));
          for (Index r = r0; r < r0 + rows; ++r)
            for (Index c = c0; c < c0 + cols; ++c) idx.push_back(r * w + c);
          bs.blocks.push_back({SupportSet(std::move(idx)),
                               pos_bits + static_cast<double>(rows + cols)});
        }
  return bs;
}

BlockSet tree_path_blocks(const Tree& tree, Index p) {
  tree.validate();
  if (p < 1 || tree.node_count() < p)
    throw std::invalid_argument("tree_path_blocks: tree must contain all variables");
  BlockSet bs;
  bs.p = p;
  const double path_bits = 1.0 + std::log2(static_cast<double>(p));
  for (Index v = 0; v < p; ++v) {
    std::vector<Index> idx;
    Index u = v;
    while (u >= 0) {
      if (u < p) idx.push_back(u);
      u = tree.parent[static_cast<std::size_t>(u)];
    }
    bs.blocks.push_back({SupportSet(std::move(idx)), path_bits});
  }
  for (Index j = 0; j < p; ++j)
    bs.blocks.push_back({SupportSet{j}, path_bits + 1.0});
  return bs;
}

Index default_block_extent(Index p) {
  const auto bits = static_cast<Index>(
      std::ceil(std::log2(static_cast<double>(std::max<Index>(p, 2)))));
  return std::max<Index>(2, bits);
}

std::vector<SupportSet> consecutive_groups(Index p, Index group_size) {
  if (p < 1 || group_size < 1)
    throw std::invalid_argument("consecutive_groups: bad arguments");
  std::vector<SupportSet> groups;
  for (Index start = 0; start < p; start += group_size) {
    std::vector<Index> idx;
    for (Index j = start; j < std::min(p, start + group_size); ++j)
      idx.push_back(j);
    groups.push_back(SupportSet(std::move(idx)));
  }
  return groups;
}

BlockSetStats block_set_stats(const BlockSet& blocks, const Matrix& X,
                              const CodingScheme& scheme) {
  if (X.cols() != blocks.p)
    throw std::invalid_argument("block_set_stats: X width does not match block set");
  BlockSetStats stats;
  bool any = false;
  for (const Block& b : blocks.blocks) {
    if (b.base_bits == kInfiniteBits) continue;
    const auto [lo, hi] = restricted_eigs(X, b.indices);
    stats.rho0 = std::max(stats.rho0, hi);
    stats.c0 = std::max(stats.c0, scheme.complexity(b.indices));
    any = true;
    (void)lo;
  }
  if (!any) throw std::invalid_argument("block_set_stats: no finite blocks");
  return stats;
}

namespace {

struct SupersetCoverSearch {
  double best = kInfiniteBits;

  void run(std::uint64_t uncovered, double cost,
           const std::vector<std::vector<std::pair<std::uint64_t, double>>>& per_bit) {
    if (cost >= best) return;
    if (uncovered == 0) {
      best = cost;
      return;
    }
    const int e = std::countr_zero(uncovered);
    for (const auto& [mask, c] : per_bit[static_cast<std::size_t>(e)])
      run(uncovered & ~mask, cost + c, per_bit);
  }
};

}  // namespace

double block_cover_complexity(const Vector& beta, const BlockSet& blocks,
                              const CodingScheme& scheme, CoverMode mode) {
  const SupportSet supp = support_of(beta);
  if (supp.empty()) return 0.0;
  if (supp.max_index() >= blocks.p)
    throw std::invalid_argument("block_cover_complexity: support exceeds block set");

  // Unlike the induced code length, covers here may stick out of the
  // support: the union only has to contain it. Each block is charged its
  // full coding complexity under the supplied scheme.
  if (mode == CoverMode::exact) {
    if (supp.size() > 60)
      throw std::invalid_argument("block_cover_complexity: support too large for exact mode");
    std::vector<Index> bit_of(static_cast<std::size_t>(blocks.p), -1);
    for (Index i = 0; i < supp.size(); ++i)
      bit_of[static_cast<std::size_t>(supp[i])] = i;
    std::vector<std::vector<std::pair<std::uint64_t, double>>> per_bit(
        static_cast<std::size_t>(supp.size()));
    for (const Block& b : blocks.blocks) {
      if (b.base_bits == kInfiniteBits) continue;
      std::uint64_t mask = 0;
      for (Index j : b.indices) {
        const Index bit = bit_of[static_cast<std::size_t>(j)];
        if (bit >= 0) mask |= std::uint64_t{1} << bit;
      }
      if (mask == 0) continue;
      const double cost = scheme.complexity(b.indices);
      if (cost == kInfiniteBits) continue;
      for (Index bit = 0; bit < supp.size(); ++bit)
        if (mask & (std::uint64_t{1} << bit))
          per_bit[static_cast<std::size_t>(bit)].emplace_back(mask, cost);
    }
    for (const auto& cands : per_bit)
      if (cands.empty()) return kInfiniteBits;
    SupersetCoverSearch search;
    const std::uint64_t full =
        supp.size() == 64 ? ~std::uint64_t{0}
                          : (std::uint64_t{1} << supp.size()) - 1;
    search.run(full, 0.0, per_bit);
    return search.best;
  }

  std::vector<char> covered(static_cast<std::size_t>(blocks.p), 0);
  Index remaining = supp.size();
  double total = 0.0;
  while (remaining > 0) {
    double best_rate = kInfiniteBits;
    const Block* best_block = nullptr;
    for (const Block& b : blocks.blocks) {
      if (b.base_bits == kInfiniteBits) continue;
      Index fresh = 0;
      for (Index j : b.indices)
        if (supp.contains(j) && !covered[static_cast<std::size_t>(j)]) ++fresh;
      if (fresh == 0) continue;
      const double cost = scheme.complexity(b.indices);
      if (cost == kInfiniteBits) continue;
      const double rate = cost / static_cast<double>(fresh);
      if (rate < best_rate) {
        best_rate = rate;
        best_block = &b;
      }
    }
    if (best_block == nullptr) return kInfiniteBits;
    for (Index j : best_block->indices) {
      if (supp.contains(j) && !covered[static_cast<std::size_t>(j)]) --remaining;
      covered[static_cast<std::size_t>(j)] = 1;
    }
    total += scheme.complexity(best_block->indices);
  }
  return total;
}

}  // namespace structsparse
