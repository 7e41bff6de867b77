#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace linsand::detail {

  class UnionFind {
   public:
    explicit UnionFind(size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), size_t(0));
    }

    size_t find(size_t x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    void unite(size_t x, size_t y) {
      x = find(x);
      y = find(y);
      if (x != y) {
        // Keep the smaller index as root so roots are deterministic.
        if (y < x) {
          std::swap(x, y);
        }
        _parent[y] = x;
      }
    }

   private:
    std::vector<size_t> _parent;
  };

}  // namespace linsand::detail
