#include "structsparse/tree.hpp"

#include <stdexcept>

namespace structsparse {

void Tree::validate() const {
  const Index n = node_count();
  for (Index v = 0; v < n; ++v) {
    const Index u = parent[static_cast<std::size_t>(v)];
    if (u >= n) throw std::invalid_argument("Tree: parent index out of range");
    if (u == v) throw std::invalid_argument("Tree: self-parent");
  }
  // Walking up from any node must reach a root within n steps.
  for (Index v = 0; v < n; ++v) {
    Index u = v;
    Index steps = 0;
    while (u >= 0) {
      u = parent[static_cast<std::size_t>(u)];
      if (++steps > n) throw std::invalid_argument("Tree: cycle detected");
    }
  }
}

std::vector<char> Tree::internal_mask() const {
  std::vector<char> mask(parent.size(), 0);
  for (Index u : parent)
    if (u >= 0) mask[static_cast<std::size_t>(u)] = 1;
  return mask;
}

Tree complete_binary_tree(int depth) {
  if (depth < 0) throw std::invalid_argument("complete_binary_tree: depth < 0");
  const Index leaves = Index{1} << depth;
  Tree t;
  t.parent.assign(static_cast<std::size_t>(2 * leaves - 1), -1);
  Index level_begin = 0;
  Index level_size = leaves;
  while (level_size > 1) {
    const Index next_begin = level_begin + level_size;
    for (Index i = 0; i < level_size; ++i)
      t.parent[static_cast<std::size_t>(level_begin + i)] = next_begin + i / 2;
    level_begin = next_begin;
    level_size /= 2;
  }
  return t;
}

SupportSet zero_tree_closure(const Tree& tree, const SupportSet& F, Index p) {
  std::vector<char> in(static_cast<std::size_t>(tree.node_count()), 0);
  for (Index f : F) {
    Index v = f;
    while (v >= 0 && !in[static_cast<std::size_t>(v)]) {
      in[static_cast<std::size_t>(v)] = 1;
      v = tree.parent[static_cast<std::size_t>(v)];
    }
  }
  std::vector<Index> idx;
  for (Index v = 0; v < std::min<Index>(p, tree.node_count()); ++v)
    if (in[static_cast<std::size_t>(v)]) idx.push_back(v);
  return SupportSet(std::move(idx));
}

}  // namespace structsparse
