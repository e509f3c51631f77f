#pragma once

#include <cstdint>
#include <vector>

namespace hamcol {

// Rank of a set of GF(2) vectors packed into 64-bit words, by basis
// insertion: each vector is reduced against the basis rows keyed by their
// highest set bit.
inline int gf2_rank(const std::vector<std::uint64_t>& vectors) {
  std::uint64_t basis[64] = {0};
  int rank = 0;
  for (std::uint64_t v : vectors) {
    while (v != 0) {
      const int hi = 63 - __builtin_clzll(v);
      if (basis[hi] == 0) {
        basis[hi] = v;
        ++rank;
        break;
      }
      v ^= basis[hi];
    }
  }
  return rank;
}

}  // namespace hamcol
