#include "structsparse/coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace structsparse {

namespace {
constexpr double kLog2Of3 = 1.584962500721156;  // log2(3)

double exp2_neg(double bits) {
  return bits == kInfiniteBits ? 0.0 : std::exp2(-bits);
}
}  // namespace

CodingScheme::CodingScheme(Index p) : p_(p) {
  if (p < 1) throw std::invalid_argument("CodingScheme: p must be >= 1");
}

void CodingScheme::check_support(const SupportSet& F) const {
  if (F.max_index() >= p_)
    throw std::invalid_argument("CodingScheme: support index out of range");
}

// ---------------------------------------------------------------------------
// StandardCoding

StandardCoding::StandardCoding(Index p) : CodingScheme(p) {}

double StandardCoding::code_length(const SupportSet& F) const {
  check_support(F);
  return static_cast<double>(F.size()) * std::log2(2.0 * static_cast<double>(p_));
}

// ---------------------------------------------------------------------------
// NonUniformSingletonCoding

NonUniformSingletonCoding::NonUniformSingletonCoding(
    Index p, std::vector<double> feature_bits)
    : CodingScheme(p), cost_(std::move(feature_bits)) {
  if (static_cast<Index>(cost_.size()) != p)
    throw std::invalid_argument("NonUniformSingletonCoding: need one cost per feature");
  double kraft = 0.0;
  for (double c : cost_) {
    if (c < 0.0) throw std::invalid_argument("NonUniformSingletonCoding: negative cost");
    kraft += exp2_neg(c);
  }
  if (kraft > 1.0 + 1e-9)
    throw std::invalid_argument("NonUniformSingletonCoding: feature costs violate Kraft");
}

double NonUniformSingletonCoding::code_length(const SupportSet& F) const {
  check_support(F);
  double bits = static_cast<double>(F.size());
  for (Index j : F) bits += cost_[static_cast<std::size_t>(j)];
  return F.empty() ? 0.0 : bits;
}

// ---------------------------------------------------------------------------
// GroupCoding

GroupCoding::GroupCoding(Index p, std::vector<SupportSet> groups)
    : CodingScheme(p), groups_(std::move(groups)) {
  group_of_.assign(static_cast<std::size_t>(p), -1);
  for (Index g = 0; g < static_cast<Index>(groups_.size()); ++g) {
    if (groups_[static_cast<std::size_t>(g)].empty())
      throw std::invalid_argument("GroupCoding: empty group");
    for (Index j : groups_[static_cast<std::size_t>(g)]) {
      if (j >= p) throw std::invalid_argument("GroupCoding: group index out of range");
      if (group_of_[static_cast<std::size_t>(j)] >= 0)
        throw std::invalid_argument("GroupCoding: overlapping groups");
      group_of_[static_cast<std::size_t>(j)] = g;
    }
  }
  for (Index j = 0; j < p; ++j)
    if (group_of_[static_cast<std::size_t>(j)] < 0)
      throw std::invalid_argument("GroupCoding: groups must cover every feature");
}

GroupCoding GroupCoding::uniform(Index p, Index group_size) {
  return GroupCoding(p, consecutive_groups(p, group_size));
}

double GroupCoding::code_length(const SupportSet& F) const {
  check_support(F);
  if (F.empty()) return 0.0;
  // Count touched groups; F must be exactly their union.
  std::vector<char> touched(groups_.size(), 0);
  Index g = 0;
  Index covered = 0;
  for (Index j : F) {
    const Index gj = group_of_[static_cast<std::size_t>(j)];
    if (!touched[static_cast<std::size_t>(gj)]) {
      touched[static_cast<std::size_t>(gj)] = 1;
      covered += groups_[static_cast<std::size_t>(gj)].size();
      ++g;
    }
  }
  if (covered != F.size()) return kInfiniteBits;  // partial group present
  const double m = static_cast<double>(groups_.size());
  return static_cast<double>(g) * std::log2(2.0 * m);
}

SupportSet GroupCoding::canonical_cover(const SupportSet& F) const {
  check_support(F);
  std::vector<char> touched(groups_.size(), 0);
  std::vector<Index> idx;
  for (Index j : F) touched[static_cast<std::size_t>(group_of_[static_cast<std::size_t>(j)])] = 1;
  for (std::size_t g = 0; g < groups_.size(); ++g)
    if (touched[g])
      idx.insert(idx.end(), groups_[g].begin(), groups_[g].end());
  return SupportSet(std::move(idx));
}

// ---------------------------------------------------------------------------
// GraphCoding

GraphCoding::GraphCoding(std::vector<std::vector<Index>> adjacency,
                         double node_bits, double component_bits)
    : CodingScheme(static_cast<Index>(adjacency.size())),
      adj_(std::move(adjacency)),
      node_bits_(node_bits),
      component_bits_(component_bits) {
  if (node_bits < 0.0 || component_bits < 0.0)
    throw std::invalid_argument("GraphCoding: negative bit costs");
  for (const auto& nbrs : adj_)
    for (Index u : nbrs)
      if (u < 0 || u >= p_)
        throw std::invalid_argument("GraphCoding: adjacency index out of range");
}

GraphCoding GraphCoding::line(Index p) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    if (j > 0) adj[static_cast<std::size_t>(j)].push_back(j - 1);
    if (j + 1 < p) adj[static_cast<std::size_t>(j)].push_back(j + 1);
  }
  return GraphCoding(std::move(adj), 3.0, std::log2(static_cast<double>(p)));
}

GraphCoding GraphCoding::grid(Index h, Index w) {
  if (h < 1 || w < 1) throw std::invalid_argument("GraphCoding::grid: bad dims");
  const Index p = h * w;
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(p));
  auto at = [w](Index r, Index c) { return r * w + c; };
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c) {
      auto& nbrs = adj[static_cast<std::size_t>(at(r, c))];
      if (r > 0) nbrs.push_back(at(r - 1, c));
      if (r + 1 < h) nbrs.push_back(at(r + 1, c));
      if (c > 0) nbrs.push_back(at(r, c - 1));
      if (c + 1 < w) nbrs.push_back(at(r, c + 1));
    }
  return GraphCoding(std::move(adj), 5.0, std::log2(static_cast<double>(p)));
}

GraphCoding GraphCoding::from_adjacency(std::vector<std::vector<Index>> adjacency) {
  std::size_t max_degree = 0;
  for (const auto& nbrs : adjacency) max_degree = std::max(max_degree, nbrs.size());
  const double p = static_cast<double>(adjacency.size());
  return GraphCoding(std::move(adjacency), 1.0 + static_cast<double>(max_degree),
                     std::log2(p));
}

Index GraphCoding::component_count(const SupportSet& F) const {
  check_support(F);
  if (F.empty()) return 0;
  std::vector<char> in(static_cast<std::size_t>(p_), 0);
  for (Index j : F) in[static_cast<std::size_t>(j)] = 1;
  std::vector<char> seen(static_cast<std::size_t>(p_), 0);
  std::vector<Index> stack;
  Index components = 0;
  for (Index j : F) {
    if (seen[static_cast<std::size_t>(j)]) continue;
    ++components;
    stack.push_back(j);
    seen[static_cast<std::size_t>(j)] = 1;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index u : adj_[static_cast<std::size_t>(v)])
        if (in[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          stack.push_back(u);
        }
    }
  }
  return components;
}

double GraphCoding::code_length(const SupportSet& F) const {
  if (F.empty()) return 0.0;
  return static_cast<double>(component_count(F)) * component_bits_ +
         node_bits_ * static_cast<double>(F.size());
}

// ---------------------------------------------------------------------------
// TreeCoding

TreeCoding::TreeCoding(Tree tree, Index p)
    : CodingScheme(p), tree_(std::move(tree)) {
  tree_.validate();
  if (tree_.node_count() < p)
    throw std::invalid_argument("TreeCoding: tree must contain all variables");
  internal_ = tree_.internal_mask();
}

Index TreeCoding::path_internal_count(const SupportSet& F) const {
  check_support(F);
  std::vector<char> seen(static_cast<std::size_t>(tree_.node_count()), 0);
  Index count = 0;
  for (Index f : F) {
    Index v = f;
    while (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      if (internal_[static_cast<std::size_t>(v)]) ++count;
      v = tree_.parent[static_cast<std::size_t>(v)];
    }
  }
  return count;
}

double TreeCoding::code_length(const SupportSet& F) const {
  if (F.empty()) return 0.0;
  return kLog2Of3 * static_cast<double>(path_internal_count(F));
}

// ---------------------------------------------------------------------------
// BlockInducedCoding

BlockInducedCoding::BlockInducedCoding(BlockSet blocks, Mode mode)
    : CodingScheme(blocks.p), blocks_(std::move(blocks)), mode_(mode) {
  blocks_.validate();
  if (mode_ == Mode::exact && p_ > 16)
    throw std::invalid_argument("BlockInducedCoding: exact mode requires p <= 16");
  touching_.assign(static_cast<std::size_t>(p_), {});
  for (Index b = 0; b < blocks_.size(); ++b) {
    if (blocks_.blocks[static_cast<std::size_t>(b)].base_bits == kInfiniteBits)
      continue;
    for (Index j : blocks_.blocks[static_cast<std::size_t>(b)].indices)
      touching_[static_cast<std::size_t>(j)].push_back(b);
  }
}

namespace {

// Branch and bound over covers of `target` (as a bitmask over [0, p)):
// candidates are (mask, cost) pairs; always branches on the lowest
// uncovered element.
struct CoverSearch {
  const std::vector<std::pair<std::uint64_t, double>>* candidates_by_element;
  double best = kInfiniteBits;

  void run(std::uint64_t uncovered, double cost,
           const std::vector<std::vector<std::pair<std::uint64_t, double>>>& per_element) {
    if (cost >= best) return;
    if (uncovered == 0) {
      best = cost;
      return;
    }
    const int e = std::countr_zero(uncovered);
    for (const auto& [mask, c] : per_element[static_cast<std::size_t>(e)])
      run(uncovered & ~mask, cost + c, per_element);
  }
};

}  // namespace

double BlockInducedCoding::code_length(const SupportSet& F) const {
  check_support(F);
  if (F.empty()) return 0.0;

  if (mode_ == Mode::exact) {
    // Covers must satisfy union == F, so only blocks inside F qualify.
    const std::uint64_t target = F.to_mask();
    std::vector<std::vector<std::pair<std::uint64_t, double>>> per_element(
        static_cast<std::size_t>(p_));
    for (Index j : F) {
      for (Index b : touching_[static_cast<std::size_t>(j)]) {
        const Block& blk = blocks_.blocks[static_cast<std::size_t>(b)];
        const std::uint64_t mask = blk.indices.to_mask();
        if ((mask & ~target) != 0) continue;  // sticks out of F
        per_element[static_cast<std::size_t>(j)].emplace_back(mask, blk.base_bits + 1.0);
      }
      if (per_element[static_cast<std::size_t>(j)].empty()) return kInfiniteBits;
    }
    CoverSearch search;
    search.run(target, 0.0, per_element);
    return search.best;
  }

  // Greedy cover: repeatedly take the block with the best cost per newly
  // covered element. Upper bound on the exact value.
  std::vector<char> covered(static_cast<std::size_t>(p_), 0);
  Index remaining = F.size();
  double bits = 0.0;
  while (remaining > 0) {
    double best_rate = kInfiniteBits;
    Index best_block = -1;
    Index best_new = 0;
    for (Index b = 0; b < blocks_.size(); ++b) {
      const Block& blk = blocks_.blocks[static_cast<std::size_t>(b)];
      if (blk.base_bits == kInfiniteBits) continue;
      if (!is_subset(blk.indices, F)) continue;
      Index fresh = 0;
      for (Index j : blk.indices)
        if (!covered[static_cast<std::size_t>(j)]) ++fresh;
      if (fresh == 0) continue;
      const double rate = (blk.base_bits + 1.0) / static_cast<double>(fresh);
      if (rate < best_rate) {
        best_rate = rate;
        best_block = b;
        best_new = fresh;
      }
    }
    if (best_block < 0) return kInfiniteBits;
    const Block& blk = blocks_.blocks[static_cast<std::size_t>(best_block)];
    for (Index j : blk.indices) {
      if (!covered[static_cast<std::size_t>(j)]) --remaining;
      covered[static_cast<std::size_t>(j)] = 1;
    }
    bits += blk.base_bits + 1.0;
    (void)best_new;
  }
  return bits;
}

// ---------------------------------------------------------------------------
// Verifiers

double kraft_sum(const CodingScheme& scheme) {
  const Index p = scheme.dimension();
  if (p > 12) throw std::invalid_argument("kraft_sum: p > 12 not enumerable");
  double sum = 0.0;
  const std::uint64_t count = std::uint64_t{1} << p;
  for (std::uint64_t mask = 1; mask < count; ++mask)
    sum += exp2_neg(scheme.code_length(SupportSet::from_mask(mask)));
  return sum;
}

SubadditivityReport check_subadditive(const CodingScheme& scheme) {
  const Index p = scheme.dimension();
  if (p > 10) throw std::invalid_argument("check_subadditive: p > 10 not enumerable");
  const std::uint64_t count = std::uint64_t{1} << p;
  std::vector<double> cl(static_cast<std::size_t>(count));
  for (std::uint64_t mask = 0; mask < count; ++mask)
    cl[static_cast<std::size_t>(mask)] =
        scheme.code_length(SupportSet::from_mask(mask));
  constexpr double slack = 1e-9;
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = 0; b < count; ++b) {
      const double lhs = cl[static_cast<std::size_t>(a | b)];
      const double rhs = cl[static_cast<std::size_t>(a)] + cl[static_cast<std::size_t>(b)];
      if (lhs > rhs + slack)
        return {false, SupportSet::from_mask(a), SupportSet::from_mask(b)};
    }
  return {};
}

}  // namespace structsparse
