#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamcol {

constexpr int kNoColour = -1;

// A proper edge colouring of the complete graph K_n: a total symmetric map
// from unordered vertex pairs to colour ids in [0, colour_count), with no two
// incident edges sharing a colour. Immutable after construction.
//
// Storage is a flat lower-triangular array indexed by the unordered pair, so
// lookups are O(1) and assembly loops stay cache-friendly. The per-vertex
// missing-colour map (defined when a vertex misses exactly one colour) and
// the per-colour edge lists are computed once at construction.
class ProperColouring {
 public:
  int n = 0;
  int colour_count = 0;

  // colours[tri_index(u,v)] for u != v.
  std::vector<int> colours;

  // missing[u] = the unique colour absent at u, or kNoColour.
  std::vector<int> missing;

  // class_edges[c] = edges of colour c, each (u,v) with u < v, sorted.
  std::vector<std::vector<std::pair<int, int>>> class_edges;

  static std::size_t tri_index(int u, int v) {
    if (u > v) std::swap(u, v);
    return std::size_t(v) * (v - 1) / 2 + u;
  }

  int colour_of(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("colour_of: not an edge of K_n");
    return colours[tri_index(u, v)];
  }

  bool operator==(const ProperColouring& o) const {
    return n == o.n && colour_count == o.colour_count && colours == o.colours;
  }

  // Builds the derived maps from a raw edge->colour table. Does not check
  // properness; see validate_proper.
  static ProperColouring from_flat(int n, int colour_count, std::vector<int> flat) {
    if (n < 2) throw std::invalid_argument("ProperColouring: need n >= 2");
    if (colour_count < 1) throw std::invalid_argument("ProperColouring: need colour_count >= 1");
    if (flat.size() != std::size_t(n) * (n - 1) / 2)
      throw std::invalid_argument("ProperColouring: wrong table size");
    ProperColouring c;
    c.n = n;
    c.colour_count = colour_count;
    c.colours = std::move(flat);
    for (int x : c.colours)
      if (x < 0 || x >= colour_count)
        throw std::invalid_argument("ProperColouring: colour id out of range");
    c.build_derived();
    return c;
  }

  void build_derived() {
    class_edges.assign(colour_count, {});
    for (int v = 0; v < n; ++v)
      for (int u = 0; u < v; ++u)
        class_edges[colours[tri_index(u, v)]].emplace_back(u, v);

    // missing(u): defined iff u is incident to all but exactly one colour.
    missing.assign(n, kNoColour);
    std::vector<std::uint8_t> seen(colour_count);
    for (int u = 0; u < n; ++u) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int v = 0; v < n; ++v)
        if (v != u) seen[colours[tri_index(u, v)]] = 1;
      int absent = kNoColour, absent_count = 0;
      for (int a = 0; a < colour_count; ++a)
        if (!seen[a]) {
          absent = a;
          ++absent_count;
        }
      if (absent_count == 1) missing[u] = absent;
    }
  }
};

struct PropernessViolation {
  int vertex;
  int colour;  // colour repeated at vertex
};

struct ValidationReport {
  std::vector<PropernessViolation> violations;
  std::vector<long> class_sizes;
  std::vector<bool> class_is_matching;          // no two class edges share a vertex
  std::vector<bool> class_is_perfect_matching;  // matching of size n/2
  bool proper() const { return violations.empty(); }
};

// Scans every vertex for repeated incident colours and reports per-class
// sizes and matching structure. Purely diagnostic, accepts any colouring.
inline ValidationReport validate_proper(const ProperColouring& c) {
  ValidationReport rep;
  rep.class_sizes.assign(c.colour_count, 0);
  std::vector<int> seen(c.colour_count, -1);
  for (int u = 0; u < c.n; ++u) {
    for (int v = 0; v < c.n; ++v) {
      if (v == u) continue;
      const int a = c.colours[ProperColouring::tri_index(u, v)];
      if (seen[a] == u)
        rep.violations.push_back({u, a});
      else
        seen[a] = u;
    }
  }
  for (int a = 0; a < c.colour_count; ++a) rep.class_sizes[a] = long(c.class_edges[a].size());
  // A class is a matching iff none of its edges share a vertex; with the scan
  // above this fails exactly when some violation mentions the colour, but we
  // recheck directly so the report stands on its own.
  rep.class_is_matching.assign(c.colour_count, true);
  rep.class_is_perfect_matching.assign(c.colour_count, false);
  std::vector<int> touched(c.n, -1);
  for (int a = 0; a < c.colour_count; ++a) {
    bool ok = true;
    for (const auto& [u, v] : c.class_edges[a]) {
      if (touched[u] == a || touched[v] == a) ok = false;
      touched[u] = a;
      touched[v] = a;
    }
    rep.class_is_matching[a] = ok;
    rep.class_is_perfect_matching[a] = ok && c.n % 2 == 0 && rep.class_sizes[a] == c.n / 2;
  }
  return rep;
}

// 1-factorization of K_n for even n, the classic circle construction:
//   colour{i,j} = (i+j) mod (n-1)        for i,j < n-1
//   colour{i,n-1} = 2i mod (n-1)
// Every colour class is a perfect matching; n-1 colours in total.
inline ProperColouring circle_colouring(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("circle_colouring: need even n >= 4");
  const int m = n - 1;
  std::vector<int> flat(std::size_t(n) * (n - 1) / 2);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < v; ++u)
      flat[ProperColouring::tri_index(u, v)] =
          (v == n - 1) ? (2 * u) % m : (u + v) % m;
  return ProperColouring::from_flat(n, m, std::move(flat));
}

// Proper n-colouring of K_n for odd n: colour{i,j} = (i+j) mod n. Colour a is
// missing exactly at the vertex u with 2u = a (mod n); every class has
// (n-1)/2 edges.
inline ProperColouring cyclic_colouring_odd(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("cyclic_colouring_odd: need odd n >= 3");
  std::vector<int> flat(std::size_t(n) * (n - 1) / 2);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < v; ++u) flat[ProperColouring::tri_index(u, v)] = (u + v) % n;
  return ProperColouring::from_flat(n, n, std::move(flat));
}

// Colouring of K_{2^k} on vertex set Z_2^k where edge {i,j} is coloured by
// the nonzero vector i XOR j. Colour ids are the vector value minus 1, so
// colour a corresponds to vector a+1. Forces >= k colours on every Hamilton
// cycle (the colour vectors along a cycle span Z_2^k).
inline ProperColouring xor_colouring(int k) {
  if (k < 1 || k > 11) throw std::invalid_argument("xor_colouring: need 1 <= k <= 11");
  const int n = 1 << k;
  std::vector<int> flat(std::size_t(n) * (n - 1) / 2);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < v; ++u) flat[ProperColouring::tri_index(u, v)] = (u ^ v) - 1;
  return ProperColouring::from_flat(n, n - 1, std::move(flat));
}

// Adds vertex n to an odd proper n-colouring, giving edge {u,n} the colour
// missing at u. Any proper colouring of odd K_n with exactly n colours has a
// totally defined, injective missing map, so the result is a proper
// n-colouring of K_{n+1}.
inline ProperColouring extend_odd_to_even(const ProperColouring& c) {
  if (c.n % 2 == 0) throw std::invalid_argument("extend_odd_to_even: colouring must have odd n");
  if (c.colour_count != c.n)
    throw std::invalid_argument("extend_odd_to_even: colouring must use exactly n colours");
  for (int u = 0; u < c.n; ++u)
    if (c.missing[u] == kNoColour)
      throw std::invalid_argument("extend_odd_to_even: missing colour undefined at a vertex");
  const int n1 = c.n + 1;
  std::vector<int> flat(std::size_t(n1) * (n1 - 1) / 2);
  for (int v = 0; v < c.n; ++v)
    for (int u = 0; u < v; ++u)
      flat[ProperColouring::tri_index(u, v)] = c.colours[ProperColouring::tri_index(u, v)];
  for (int u = 0; u < c.n; ++u) flat[ProperColouring::tri_index(u, c.n)] = c.missing[u];
  return ProperColouring::from_flat(n1, c.colour_count, std::move(flat));
}

// --- text format ------------------------------------------------------------
//
// First non-comment line: "n colour_count". Then exactly n(n-1)/2 lines
// "u v c" with u < v, in any order. Lines starting with '#' are comments.

inline std::string serialize_colouring(const ProperColouring& c) {
  std::ostringstream out;
  out << c.n << ' ' << c.colour_count << '\n';
  for (int u = 0; u < c.n; ++u)
    for (int v = u + 1; v < c.n; ++v)
      out << u << ' ' << v << ' ' << c.colours[ProperColouring::tri_index(u, v)] << '\n';
  return out.str();
}

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses and fully validates a colouring: range checks, duplicate and absent
// edges, and properness are all rejected here so downstream code never sees a
// bad colouring.
inline ProperColouring parse_colouring(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1, colour_count = -1;

  auto next_payload_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos) continue;  // blank
      if (line[i] == '#') continue;          // comment
      return true;
    }
    return false;
  };

  if (!next_payload_line()) throw ParseError(lineno + 1, "missing header");
  {
    std::istringstream h(line);
    std::string extra;
    if (!(h >> n >> colour_count) || (h >> extra))
      throw ParseError(lineno, "malformed header, expected \"n colour_count\"");
    if (n < 2) throw ParseError(lineno, "need n >= 2");
    if (colour_count < 1) throw ParseError(lineno, "need colour_count >= 1");
  }

  const std::size_t edge_total = std::size_t(n) * (n - 1) / 2;
  std::vector<int> flat(edge_total, kNoColour);
  std::size_t filled = 0;
  while (next_payload_line()) {
    std::istringstream e(line);
    int u, v, c;
    std::string extra;
    if (!(e >> u >> v >> c) || (e >> extra))
      throw ParseError(lineno, "malformed edge line, expected \"u v c\"");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw ParseError(lineno, "vertex id out of range");
    if (u > v) throw ParseError(lineno, "edge must be written with u < v");
    if (c < 0 || c >= colour_count)
      throw ParseError(lineno, "colour id out of range [0, colour_count)");
    const std::size_t idx = ProperColouring::tri_index(u, v);
    if (flat[idx] != kNoColour) throw ParseError(lineno, "duplicate edge");
    flat[idx] = c;
    ++filled;
  }
  if (filled != edge_total)
    throw ParseError(lineno, "expected " + std::to_string(edge_total) + " edge lines, got " +
                                 std::to_string(filled));

  ProperColouring c = ProperColouring::from_flat(n, colour_count, std::move(flat));
  ValidationReport rep = validate_proper(c);
  if (!rep.proper())
    throw ParseError(lineno, "colouring is not proper: colour " +
                                 std::to_string(rep.violations.front().colour) +
                                 " repeated at vertex " +
                                 std::to_string(rep.violations.front().vertex));
  return c;
}

}  // namespace hamcol
