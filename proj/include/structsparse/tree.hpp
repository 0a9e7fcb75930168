#pragma once

#include <vector>

#include "structsparse/types.hpp"

namespace structsparse {

/// Rooted forest over contiguously numbered nodes. parent[v] < 0 marks a
/// root. Variables of a coding problem are the nodes [0, p); the forest may
/// contain additional non-variable nodes above them.
struct Tree {
  std::vector<Index> parent;

  Index node_count() const { return static_cast<Index>(parent.size()); }
  bool is_root(Index v) const { return parent[static_cast<std::size_t>(v)] < 0; }

  /// Throws if a parent index is out of range or the structure has a cycle.
  void validate() const;

  /// mask[v] != 0 iff v has at least one child.
  std::vector<char> internal_mask() const;
};

/// Complete binary tree with 2^depth leaves. Leaves are nodes [0, 2^depth);
/// internal nodes are appended level by level, the root last.
Tree complete_binary_tree(int depth);

/// Closure of F under the parent relation, restricted to nodes < p (ancestor
/// nodes outside the variable range are skipped).
SupportSet zero_tree_closure(const Tree& tree, const SupportSet& F, Index p);

}  // namespace structsparse
