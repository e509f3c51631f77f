#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hamcol {

// Simple undirected graph on vertices 0..n-1. Keeps sorted adjacency lists
// (deterministic iteration) plus a bitset adjacency matrix for O(1) edge
// queries.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n), words_((n + 63) / 64), adj_(n), bits_(std::size_t(n) * words_, 0) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  }

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    g.sort_adjacency();
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }

  static Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("Graph::cycle: need n >= 3");
    Graph g(n);
    for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    g.sort_adjacency();
    return g;
  }

  // One perfect matching {0,1},{2,3},...; n must be even.
  static Graph matching(int n) {
    if (n % 2 != 0) throw std::invalid_argument("Graph::matching: need even n");
    Graph g(n);
    for (int u = 0; u < n; u += 2) g.add_edge(u, u + 1);
    return g;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Graph: loop edge");
    if (adjacent(u, v)) return;
    set_bit(u, v);
    set_bit(v, u);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
  }

  int n() const { return n_; }
  long edge_count() const { return m_; }

  bool adjacent(int u, int v) const {
    return (bits_[std::size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  const std::vector<int>& neighbours(int u) const { return adj_[u]; }
  int degree(int u) const { return int(adj_[u].size()); }

  // Degree if the graph is regular, -1 otherwise.
  int regular_degree() const {
    if (n_ == 0) return -1;
    const int d = degree(0);
    for (int u = 1; u < n_; ++u)
      if (degree(u) != d) return -1;
    return d;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(std::size_t(m_));
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  void sort_adjacency() {
    for (auto& row : adj_) std::sort(row.begin(), row.end());
  }

 private:
  void check_vertex(int u) const {
    if (u < 0 || u >= n_) throw std::invalid_argument("Graph: vertex out of range");
  }
  void set_bit(int u, int v) { bits_[std::size_t(u) * words_ + (v >> 6)] |= std::uint64_t(1) << (v & 63); }

  int n_ = 0;
  int words_ = 0;
  long m_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace hamcol
