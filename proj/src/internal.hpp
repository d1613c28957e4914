#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nbihom/algebra.hpp"

namespace nbihom::detail {

class EpsCache {
 public:
  explicit EpsCache(const Bicharacter& eps) : eps_(eps) {}
  const Rational& operator()(const GroupElement& a, const GroupElement& b) {
    auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), eps_(a, b)).first;
    return it->second;
  }

 private:
  const Bicharacter& eps_;
  std::map<std::pair<GroupElement, GroupElement>, Rational> cache_;
};

// Columns of m as sparse vectors.
std::vector<SparseVector> sparse_columns(const MatrixQ& m);

inline std::vector<std::size_t> cube(std::size_t dim, std::size_t n) { return std::vector<std::size_t>(n, dim); }

void require_square(const MatrixQ& m, std::size_t n, const char* what);

}  // namespace nbihom::detail
