#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamcol/colouring.hpp"
#include "hamcol/gf2.hpp"
#include "hamcol/graph.hpp"
#include "hamcol/rng.hpp"

namespace hamcol {

// A Hamilton cycle together with the set of distinct edge colours it uses.
struct HamiltonCycle {
  std::vector<int> order;
  std::vector<int> colours;  // sorted, distinct
  int colour_count = 0;
};

// nullopt when `order` is a Hamilton cycle of g; otherwise the first problem.
inline std::optional<std::string> validate_cycle(const Graph& g, const std::vector<int>& order) {
  if (g.n() < 3) return "graph has fewer than 3 vertices";
  if (int(order.size()) != g.n()) return "order length does not equal vertex count";
  std::vector<char> seen(g.n(), 0);
  for (int v : order) {
    if (v < 0 || v >= g.n()) return "vertex out of range: " + std::to_string(v);
    if (seen[v]) return "vertex repeated: " + std::to_string(v);
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int u = order[i];
    const int v = order[(i + 1) % order.size()];
    if (!g.adjacent(u, v))
      return "consecutive vertices not adjacent: " + std::to_string(u) + " " + std::to_string(v);
  }
  return std::nullopt;
}

namespace detail {

// Last-n ring of endpoints produced by rotations. Lookup is a linear scan;
// capacity stays small (one entry per vertex).
class TabuRing {
 public:
  explicit TabuRing(int capacity) : ring_(capacity, -1) {}
  void clear() { std::fill(ring_.begin(), ring_.end(), -1); }
  void push(int v) {
    ring_[head_] = v;
    head_ = (head_ + 1) % int(ring_.size());
  }
  bool contains(int v) const {
    return std::find(ring_.begin(), ring_.end(), v) != ring_.end();
  }

 private:
  std::vector<int> ring_;
  int head_ = 0;
};

}  // namespace detail

// Rotation-extension heuristic. Grows a path greedily (uniform choice among
// off-path neighbours of the working endpoint); when stuck, rotates at a
// uniformly chosen on-path neighbour, avoiding the last n rotation endpoints
// unless every candidate is excluded. One unit of budget pays for one
// rotation or one dead-end restart; extensions are free. The search restarts
// from a fresh random vertex after 50n rotations without an extension.
// Returns a self-validated cycle, or nullopt once the budget is spent.
inline std::optional<std::vector<int>> find_hamilton_rotation(const Graph& g, std::uint64_t seed,
                                                              long budget) {
  if (budget < 1) throw std::invalid_argument("find_hamilton_rotation: need budget >= 1");
  const int n = g.n();
  if (n < 3) return std::nullopt;

  SplitMix64 rng(seed);
  std::vector<int> path;
  std::vector<int> pos(n, -1);  // position on path, -1 when off it
  detail::TabuRing tabu(n);
  const long stall_limit = 50L * n;
  long since_extension = 0;

  auto restart = [&] {
    for (int v : path) pos[v] = -1;
    path.clear();
    const int start = int(rng.uniform_below(std::uint64_t(n)));
    path.push_back(start);
    pos[start] = 0;
    tabu.clear();
    since_extension = 0;
  };
  restart();

  std::vector<int> candidates;
  for (long used = 0; used < budget;) {
    const int u = path.back();

    if (int(path.size()) == n) {
      if (g.adjacent(u, path.front())) {
        if (auto err = validate_cycle(g, path))
          throw std::logic_error("find_hamilton_rotation: produced invalid cycle: " + *err);
        return path;
      }
    } else {
      candidates.clear();
      for (int v : g.neighbours(u))
        if (pos[v] < 0) candidates.push_back(v);
      if (!candidates.empty()) {
        const int v = candidates[rng.uniform_below(candidates.size())];
        pos[v] = int(path.size());
        path.push_back(v);
        since_extension = 0;
        continue;
      }
    }

    // Rotation: neighbour v of u at path position i < |path|-2 makes
    // path[i+1] the new endpoint after reversing the tail.
    candidates.clear();
    for (int v : g.neighbours(u))
      if (pos[v] >= 0 && pos[v] + 2 < int(path.size())) candidates.push_back(v);
    if (candidates.empty()) {
      ++used;  // dead end: isolated start or unrotatable stub
      restart();
      continue;
    }
    std::vector<int> fresh;
    for (int v : candidates)
      if (!tabu.contains(path[pos[v] + 1])) fresh.push_back(v);
    const std::vector<int>& pool = fresh.empty() ? candidates : fresh;
    const int v = pool[rng.uniform_below(pool.size())];
    std::reverse(path.begin() + pos[v] + 1, path.end());
    for (int i = pos[v] + 1; i < int(path.size()); ++i) pos[path[i]] = i;
    tabu.push(path.back());
    ++used;
    if (++since_extension >= stall_limit) restart();
  }
  return std::nullopt;
}

// Exact Hamilton cycle finder over vertex-subset dynamic programming:
// dp[mask] is the bitmask of endpoints v reachable by a path that starts at
// vertex 0 and visits exactly the vertices of mask. Memory is 4 * 2^n bytes,
// so n is capped at 20.
inline std::optional<std::vector<int>> find_hamilton_exact(const Graph& g) {
  const int n = g.n();
  if (n > 20) throw std::invalid_argument("find_hamilton_exact: need n <= 20");
  if (n < 3) return std::nullopt;

  std::vector<std::uint32_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbours(u)) adj[u] |= std::uint32_t(1) << v;

  const std::uint32_t full = (std::uint32_t(1) << n) - 1;
  std::vector<std::uint32_t> dp(std::size_t(1) << n, 0);
  dp[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1) || dp[mask] == 0) continue;
    for (int u = 1; u < n; ++u) {
      const std::uint32_t bit = std::uint32_t(1) << u;
      if ((mask & bit) || !(adj[u] & dp[mask])) continue;
      dp[mask | bit] |= bit;
    }
  }

  std::uint32_t closable = dp[full] & adj[0];
  if (closable == 0) return std::nullopt;

  std::vector<int> order;
  std::uint32_t mask = full;
  int v = std::countr_zero(closable);
  while (v != 0) {
    order.push_back(v);
    mask ^= std::uint32_t(1) << v;
    v = std::countr_zero(dp[mask] & adj[v]);
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  if (auto err = validate_cycle(g, order))
    throw std::logic_error("find_hamilton_exact: produced invalid cycle: " + *err);
  return order;
}

// Distinct edge colours along a cyclic vertex order of the complete graph.
inline HamiltonCycle cycle_colour_count(const ProperColouring& c, const std::vector<int>& order) {
  if (c.n < 3) throw std::invalid_argument("cycle_colour_count: need n >= 3");
  if (int(order.size()) != c.n)
    throw std::invalid_argument("cycle_colour_count: order length does not equal n");
  std::vector<char> seen(c.n, 0);
  for (int v : order) {
    if (v < 0 || v >= c.n) throw std::invalid_argument("cycle_colour_count: vertex out of range");
    if (seen[v]) throw std::invalid_argument("cycle_colour_count: vertex repeated");
    seen[v] = 1;
  }
  HamiltonCycle cycle;
  cycle.order = order;
  for (std::size_t i = 0; i < order.size(); ++i)
    cycle.colours.push_back(c.colour_of(order[i], order[(i + 1) % order.size()]));
  std::sort(cycle.colours.begin(), cycle.colours.end());
  cycle.colours.erase(std::unique(cycle.colours.begin(), cycle.colours.end()),
                      cycle.colours.end());
  cycle.colour_count = int(cycle.colours.size());
  return cycle;
}

struct MinColourCycle {
  int minimum = 0;
  std::vector<int> witness;
};

// Exhaustive minimum over the (n-1)!/2 Hamilton cycles of K_n of the number
// of distinct edge colours. Anchored at vertex 0; orientation is halved by
// requiring order[1] < order[n-1]. Branches whose used-colour count already
// matches the best are cut.
inline MinColourCycle min_colour_cycle_bruteforce(const ProperColouring& c) {
  const int n = c.n;
  if (n < 3) throw std::invalid_argument("min_colour_cycle_bruteforce: need n >= 3");
  if (n > 10) throw std::invalid_argument("min_colour_cycle_bruteforce: need n <= 10");
  if (c.colour_count > 32)
    throw std::invalid_argument("min_colour_cycle_bruteforce: too many colours");

  MinColourCycle best;
  best.minimum = c.colour_count + 1;
  std::vector<int> order{0};
  std::vector<char> used_vertex(n, 0);
  used_vertex[0] = 1;

  auto rec = [&](auto&& self, std::uint32_t used_colours) -> void {
    if (std::popcount(used_colours) >= best.minimum) return;
    if (int(order.size()) == n) {
      const std::uint32_t closed =
          used_colours | (std::uint32_t(1) << c.colour_of(order.back(), 0));
      const int count = std::popcount(closed);
      if (count < best.minimum) {
        best.minimum = count;
        best.witness = order;
      }
      return;
    }
    const bool last_slot = int(order.size()) == n - 1;
    const int prev = order.back();
    for (int v = 1; v < n; ++v) {
      if (used_vertex[v]) continue;
      if (last_slot && v < order[1]) continue;
      used_vertex[v] = 1;
      order.push_back(v);
      self(self, used_colours | (std::uint32_t(1) << c.colour_of(prev, v)));
      order.pop_back();
      used_vertex[v] = 0;
    }
  };
  rec(rec, 0);
  return best;
}

struct SpanCheck {
  int rank = 0;
  bool pass = false;
};

// Along any Hamilton cycle of K_{2^k} the edge labels u XOR v must span all
// of Z_2^k: prefix XORs walk through every vertex. Verifies the rank of the
// distinct labels for a concrete cycle.
inline SpanCheck verify_span_lower_bound(int k, const std::vector<int>& order) {
  if (k < 2 || k > 11) throw std::invalid_argument("verify_span_lower_bound: need 2 <= k <= 11");
  const int n = 1 << k;
  if (int(order.size()) != n)
    throw std::invalid_argument("verify_span_lower_bound: order length does not equal 2^k");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("verify_span_lower_bound: vertex out of range");
    if (seen[v]) throw std::invalid_argument("verify_span_lower_bound: vertex repeated");
    seen[v] = 1;
  }
  std::vector<std::uint64_t> labels;
  for (std::size_t i = 0; i < order.size(); ++i)
    labels.push_back(std::uint64_t(order[i] ^ order[(i + 1) % order.size()]));
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  SpanCheck check;
  check.rank = gf2_rank(labels);
  check.pass = check.rank == k;
  return check;
}

// Reduction from a Hamilton cycle of K_{n+1} (even) to one of K_n (odd):
// drop vertex n and join its two cycle neighbours directly. The reduced
// cycle's colours are read in the odd colouring c; at most one colour (the
// closing edge's) is new relative to the long cycle.
inline HamiltonCycle close_path_to_cycle(const ProperColouring& c,
                                         const std::vector<int>& extended_order) {
  if (c.n % 2 == 0) throw std::invalid_argument("close_path_to_cycle: colouring must have odd n");
  if (int(extended_order.size()) != c.n + 1)
    throw std::invalid_argument("close_path_to_cycle: order length does not equal n + 1");
  std::vector<char> seen(c.n + 1, 0);
  for (int v : extended_order) {
    if (v < 0 || v > c.n) throw std::invalid_argument("close_path_to_cycle: vertex out of range");
    if (seen[v]) throw std::invalid_argument("close_path_to_cycle: vertex repeated");
    seen[v] = 1;
  }
  std::size_t drop = 0;
  while (extended_order[drop] != c.n) ++drop;
  std::vector<int> reduced;
  for (std::size_t i = 1; i <= extended_order.size() - 1; ++i)
    reduced.push_back(extended_order[(drop + i) % extended_order.size()]);
  return cycle_colour_count(c, reduced);
}

}  // namespace hamcol
