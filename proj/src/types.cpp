#include "structsparse/types.hpp"

#include <cmath>

namespace structsparse {

SupportSet set_union(const SupportSet& a, const SupportSet& b) {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(a.size() + b.size()));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return SupportSet(std::move(out));
}

SupportSet set_difference(const SupportSet& a, const SupportSet& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return SupportSet(std::move(out));
}

bool is_subset(const SupportSet& a, const SupportSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SupportSet support_of(const Vector& beta, double threshold) {
  std::vector<Index> idx;
  for (Index j = 0; j < beta.size(); ++j)
    if (std::abs(beta[j]) > threshold) idx.push_back(j);
  return SupportSet(std::move(idx));
}

}  // namespace structsparse
