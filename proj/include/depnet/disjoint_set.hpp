#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace depnet {

// Union-find over dense indices. Union keeps the smaller index as the root so
// that class representatives do not depend on merge order.
class DisjointSet {
public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace depnet
