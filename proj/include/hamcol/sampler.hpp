#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hamcol/colouring.hpp"
#include "hamcol/graph.hpp"
#include "hamcol/rng.hpp"

namespace hamcol {

// Identity summand marker inside ColourSample::entries.
constexpr int kIdentityEntry = -1;

// An i.i.d. sequence of d summands. Each entry is a colour id in
// [0, colour_count) or kIdentityEntry. Replayable from (seed, d, n) alone.
struct ColourSample {
  int d = 0;
  std::vector<int> entries;
  std::uint64_t seed = 0;

  bool has_identity() const {
    for (int e : entries)
      if (e == kIdentityEntry) return true;
    return false;
  }
};

// Draws d summands for an even-n colouring with n-1 colours. Each entry is a
// single uniform draw r over {0,...,n-1}: r = n-1 selects the identity
// summand (probability 1/n), anything else selects colour r. This one-draw
// scheme induces the same distribution as drawing a uniform colour and then
// substituting the identity with probability 1/n, but consumes exactly one
// bounded draw per entry, which keeps replays trivial.
inline ColourSample sample_colours(const ProperColouring& c, int d, std::uint64_t seed) {
  if (d < 0) throw std::invalid_argument("sample_colours: need d >= 0");
  if (c.n % 2 != 0 || c.colour_count != c.n - 1)
    throw std::invalid_argument(
        "sample_colours: colouring must have even n and n-1 colours (extend odd colourings first)");
  ColourSample s;
  s.d = d;
  s.seed = seed;
  s.entries.reserve(std::size_t(d));
  SplitMix64 rng(seed);
  for (int l = 0; l < d; ++l) {
    const auto r = int(rng.uniform_below(std::uint64_t(c.n)));
    s.entries.push_back(r == c.n - 1 ? kIdentityEntry : r);
  }
  return s;
}

// The union graph H of a clean sample: simple and d-regular, with every edge
// coloured by one of the d sampled colours.
struct SampledGraph {
  int n = 0;
  int d = 0;
  Graph graph;
  std::vector<int> sampled_colours;  // in draw order
  bool clean = true;
};

// Why a sample failed to be clean.
struct DegeneracyReport {
  std::vector<int> identity_positions;  // entry indices that drew the identity
  std::vector<int> repeated_colours;    // colour ids drawn more than once, ascending
};

using UnionResult = std::variant<SampledGraph, DegeneracyReport>;

// Assembles H = union of the d sampled matchings when the sample is clean
// (pairwise-distinct colours, no identity); otherwise reports the degeneracy
// and builds nothing. Callers decide whether to resample.
inline UnionResult build_union_graph(const ProperColouring& c, const ColourSample& s) {
  DegeneracyReport rep;
  std::vector<int> times(c.colour_count, 0);
  for (int l = 0; l < s.d; ++l) {
    const int e = s.entries[l];
    if (e == kIdentityEntry)
      rep.identity_positions.push_back(l);
    else
      ++times[e];
  }
  for (int a = 0; a < c.colour_count; ++a)
    if (times[a] > 1) rep.repeated_colours.push_back(a);
  if (!rep.identity_positions.empty() || !rep.repeated_colours.empty()) return rep;

  SampledGraph h;
  h.n = c.n;
  h.d = s.d;
  h.graph = Graph(c.n);
  h.sampled_colours = s.entries;
  for (int a : s.entries)
    for (const auto& [u, v] : c.class_edges[a]) h.graph.add_edge(u, v);
  h.graph.sort_adjacency();
  return h;
}

// P[sample of size d is clean] = prod_{l=1..d} (n-l)/n.
inline double distinctness_probability(int n, int d) {
  if (d < 0 || d > n - 1)
    throw std::invalid_argument("distinctness_probability: need 0 <= d <= n-1");
  double p = 1.0;
  for (int l = 1; l <= d; ++l) p *= double(n - l) / double(n);
  return p;
}

}  // namespace hamcol
