#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace structsparse {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Sorted, duplicate-free set of feature indices.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(std::initializer_list<Index> idx)
      : SupportSet(std::vector<Index>(idx)) {}
  explicit SupportSet(std::vector<Index> idx) : idx_(std::move(idx)) {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    if (!idx_.empty() && idx_.front() < 0)
      throw std::invalid_argument("SupportSet: negative index");
  }

  static SupportSet from_mask(std::uint64_t mask) {
    std::vector<Index> idx;
    for (Index j = 0; mask != 0; ++j, mask >>= 1)
      if (mask & 1u) idx.push_back(j);
    return SupportSet(std::move(idx));
  }

  std::uint64_t to_mask() const {
    std::uint64_t m = 0;
    for (Index j : idx_) {
      if (j >= 64) throw std::domain_error("SupportSet::to_mask: index >= 64");
      m |= std::uint64_t{1} << j;
    }
    return m;
  }

  Index size() const { return static_cast<Index>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  Index operator[](Index i) const { return idx_[static_cast<std::size_t>(i)]; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  const std::vector<Index>& indices() const { return idx_; }
  Index max_index() const { return idx_.empty() ? Index{-1} : idx_.back(); }

  bool contains(Index j) const {
    return std::binary_search(idx_.begin(), idx_.end(), j);
  }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<Index> idx_;
};

SupportSet set_union(const SupportSet& a, const SupportSet& b);
SupportSet set_difference(const SupportSet& a, const SupportSet& b);
bool is_subset(const SupportSet& a, const SupportSet& b);

/// Indices j with |beta[j]| > threshold.
SupportSet support_of(const Vector& beta, double threshold = 0.0);

}  // namespace structsparse
