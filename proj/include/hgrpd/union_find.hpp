#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace hgrpd {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t i) {
    // path halving
    while (parent_[i] != i) {
      i = parent_[i] = parent_[parent_[i]];
    }
    return i;
  }

  /// Returns true if two distinct classes were merged.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  /// Dense class labels numbered by the smallest member of each class.
  std::vector<std::uint32_t> classes(std::uint32_t* count = nullptr) {
    const auto n = static_cast<std::uint32_t>(parent_.size());
    std::vector<std::uint32_t> root_label(n, UINT32_MAX), out(n);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      auto r = find(i);
      if (root_label[r] == UINT32_MAX) root_label[r] = next++;
      out[i] = root_label[r];
    }
    if (count) *count = next;
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace hgrpd
