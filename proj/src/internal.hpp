#pragma once

#include <algorithm>
#include <vector>

#include "delone/geometry.hpp"

namespace delone::internal {

// Entry-wise lexicographic order with a small tolerance, so matrices that
// differ only by roundoff keep a stable relative order.
inline bool canonical_less(const OrthogonalMap& a, const OrthogonalMap& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double x = a.matrix()(i, j);
      const double y = b.matrix()(i, j);
      if (x < y - 1e-9) return true;
      if (y < x - 1e-9) return false;
    }
  return false;
}

inline void sort_canonically(std::vector<OrthogonalMap>& maps) {
  std::stable_sort(maps.begin(), maps.end(), canonical_less);
}

}  // namespace delone::internal
