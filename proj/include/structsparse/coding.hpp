#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "structsparse/blocks.hpp"
#include "structsparse/tree.hpp"
#include "structsparse/types.hpp"

namespace structsparse {

inline constexpr double kInfiniteBits = std::numeric_limits<double>::infinity();

/// Base-2 code length assigned to support sets by a prefix coding scheme.
/// Every shipped scheme gives the empty set length 0 and satisfies the Kraft
/// inequality sum_{F != empty} 2^-cl(F) <= 1 (verifiable by enumeration at
/// small p; see kraft_sum). Lengths are real-valued bits; +inf marks
/// supports the scheme cannot represent.
class CodingScheme {
 public:
  virtual ~CodingScheme() = default;

  Index dimension() const { return p_; }

  /// cl(F) in bits, +inf allowed.
  virtual double code_length(const SupportSet& F) const = 0;

  /// Coding complexity c(F) = |F| + cl(F).
  double complexity(const SupportSet& F) const {
    return static_cast<double>(F.size()) + code_length(F);
  }

  /// min { c(F) : supp(beta) inside F }, evaluated at canonical_cover of the
  /// support (the minimum sits there for every shipped scheme).
  double vector_complexity(const Vector& beta) const {
    return complexity(canonical_cover(support_of(beta)));
  }

  /// Smallest representable superset of F: the union of touched groups for
  /// group coding, F itself for the unconstrained schemes.
  virtual SupportSet canonical_cover(const SupportSet& F) const { return F; }

  virtual std::string name() const = 0;

 protected:
  explicit CodingScheme(Index p);
  void check_support(const SupportSet& F) const;

  Index p_ = 0;
};

/// cl(F) = |F| * log2(2p): every member costs a uniform position code plus
/// the one-bit block surcharge.
class StandardCoding final : public CodingScheme {
 public:
  explicit StandardCoding(Index p);
  double code_length(const SupportSet& F) const override;
  std::string name() const override { return "standard"; }
};

/// cl(F) = |F| + sum_{j in F} c_j with per-feature costs satisfying
/// sum_j 2^-c_j <= 1.
class NonUniformSingletonCoding final : public CodingScheme {
 public:
  NonUniformSingletonCoding(Index p, std::vector<double> feature_bits);
  double code_length(const SupportSet& F) const override;
  std::string name() const override { return "nonuniform"; }
  const std::vector<double>& feature_bits() const { return cost_; }

 private:
  std::vector<double> cost_;
};

/// Strong group sparsity over a partition into m groups: cl(F) = g log2(2m)
/// when F is exactly a union of g groups, +inf otherwise.
class GroupCoding final : public CodingScheme {
 public:
  GroupCoding(Index p, std::vector<SupportSet> groups);
  static GroupCoding uniform(Index p, Index group_size);

  double code_length(const SupportSet& F) const override;
  SupportSet canonical_cover(const SupportSet& F) const override;
  std::string name() const override { return "group"; }

  Index group_count() const { return static_cast<Index>(groups_.size()); }
  const std::vector<SupportSet>& groups() const { return groups_; }
  Index group_of(Index j) const { return group_of_[static_cast<std::size_t>(j)]; }

 private:
  std::vector<SupportSet> groups_;
  std::vector<Index> group_of_;
};

/// Connected-region coding on an undirected graph: cl(F) = g * component_bits
/// + node_bits * |F| where g is the number of connected components of F in
/// the graph. Favors supports forming few connected regions.
class GraphCoding final : public CodingScheme {
 public:
  GraphCoding(std::vector<std::vector<Index>> adjacency, double node_bits,
              double component_bits);

  /// 1D chain: node_bits = 3 (= 1 + max degree), component_bits = log2 p.
  static GraphCoding line(Index p);
  /// 4-neighbor grid: node_bits = 5, component_bits = log2 p.
  static GraphCoding grid(Index h, Index w);
  /// Generic graph with node_bits = 1 + max degree, component_bits = log2 p.
  static GraphCoding from_adjacency(std::vector<std::vector<Index>> adjacency);

  double code_length(const SupportSet& F) const override;
  std::string name() const override { return "graph"; }

  Index component_count(const SupportSet& F) const;
  double node_bits() const { return node_bits_; }
  double component_bits() const { return component_bits_; }
  const std::vector<std::vector<Index>>& adjacency() const { return adj_; }

 private:
  std::vector<std::vector<Index>> adj_;
  double node_bits_ = 0.0;
  double component_bits_ = 0.0;
};

/// Hierarchical coding on a rooted forest: cl(F) = log2(3) times the number
/// of internal nodes lying on the union of root-to-element paths of F. For
/// root-closed F (zero-tree supports) this is at most log2(3) * |F|,
/// independent of the ambient dimension.
class TreeCoding final : public CodingScheme {
 public:
  /// Variables are nodes [0, p); the forest may contain extra nodes.
  TreeCoding(Tree tree, Index p);

  double code_length(const SupportSet& F) const override;
  std::string name() const override { return "tree"; }

  const Tree& tree() const { return tree_; }

  /// Number of internal nodes on the union of root-to-element paths.
  Index path_internal_count(const SupportSet& F) const;

 private:
  Tree tree_;
  std::vector<char> internal_;
};

/// Coding induced by a block dictionary: cl(F) is the minimum of
/// sum_j (cl0(B_j) + 1) over covers F = union B_j. Exact mode solves the
/// weighted cover by branch and bound (p <= 16); greedy mode returns a
/// cost-effectiveness upper bound. Sub-additive by construction.
class BlockInducedCoding final : public CodingScheme {
 public:
  enum class Mode { exact, greedy };

  BlockInducedCoding(BlockSet blocks, Mode mode);

  double code_length(const SupportSet& F) const override;
  std::string name() const override { return "block"; }

  Mode mode() const { return mode_; }
  const BlockSet& block_set() const { return blocks_; }

 private:
  BlockSet blocks_;
  Mode mode_;
  std::vector<std::vector<Index>> touching_;  // block ids containing element j
};

/// Exact Kraft sum over all nonempty subsets; refuses p > 12.
double kraft_sum(const CodingScheme& scheme);

struct SubadditivityReport {
  bool ok = true;
  SupportSet f;        // violating pair, when !ok
  SupportSet f_prime;
};

/// Checks cl(F u F') <= cl(F) + cl(F') over all pairs; refuses p > 10.
SubadditivityReport check_subadditive(const CodingScheme& scheme);

}  // namespace structsparse
