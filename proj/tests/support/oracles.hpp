#pragma once

// Test-side oracles, implemented independently of the production code paths
// they check. The eigenvalue oracle avoids the production eigensolver
// entirely: characteristic polynomial by the Faddeev-LeVerrier recurrence,
// roots by Durand-Kerner iteration. Exact enough for n <= 8 on well-scaled
// matrices, which is all the cross-checks need.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hamcol/colouring.hpp"
#include "hamcol/graph.hpp"

namespace oracles {

// Row-major dense n x n matrix.
struct Dense {
  int n = 0;
  std::vector<double> a;
  double& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  double at(int i, int j) const { return a[std::size_t(i) * n + j]; }
  static Dense zero(int n) { return Dense{n, std::vector<double>(std::size_t(n) * n, 0.0)}; }
  static Dense identity(int n) {
    Dense m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline Dense multiply(const Dense& x, const Dense& y) {
  Dense r = Dense::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const double v = x.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

inline double trace(const Dense& x) {
  double t = 0;
  for (int i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

// Coefficients of det(lambda I - A) = lambda^n + c[0] lambda^{n-1} + ... + c[n-1],
// by the Faddeev-LeVerrier recurrence.
inline std::vector<double> char_poly(const Dense& a) {
  const int n = a.n;
  std::vector<double> c(static_cast<std::size_t>(n));
  Dense m = a;
  c[0] = -trace(m);
  for (int k = 2; k <= n; ++k) {
    for (int i = 0; i < n; ++i) m.at(i, i) += c[std::size_t(k) - 2];
    m = multiply(a, m);
    c[std::size_t(k) - 1] = -trace(m) / double(k);
  }
  return c;
}

// All complex roots of lambda^n + c[0] lambda^{n-1} + ... + c[n-1] by
// Durand-Kerner fixed-point iteration.
inline std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
  using cd = std::complex<double>;
  const int n = int(c.size());
  auto eval = [&](cd x) {
    cd p(1.0, 0.0);
    for (double coef : c) p = p * x + cd(coef, 0.0);
    return p;
  };
  std::vector<cd> x(static_cast<std::size_t>(n));
  const cd base(0.4, 0.9);
  cd acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    acc *= base;
    x[std::size_t(i)] = acc;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      cd denom(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= x[std::size_t(i)] - x[std::size_t(j)];
      const cd delta = eval(x[std::size_t(i)]) / denom;
      x[std::size_t(i)] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return x;
}

// Eigenvalues of a small symmetric matrix, descending. Roots of a real
// symmetric characteristic polynomial are real; imaginary residue beyond
// the solver tolerance trips an exception.
inline std::vector<double> symmetric_eigenvalues_oracle(const Dense& a) {
  if (a.n > 8) throw std::invalid_argument("eigenvalue oracle: n <= 8 only");
  double scale = 1.0;
  for (double v : a.a) scale = std::max(scale, std::abs(v));
  std::vector<double> ev;
  for (const std::complex<double>& r : poly_roots(char_poly(a))) {
    if (std::abs(r.imag()) > 1e-6 * scale)
      throw std::runtime_error("eigenvalue oracle: non-real root for symmetric input");
    ev.push_back(r.real());
  }
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

// Hamiltonicity by enumerating all cyclic orders, n <= 8.
inline bool hamiltonian_oracle(const hamcol::Graph& g) {
  const int n = g.n();
  if (n > 8) throw std::invalid_argument("hamiltonian oracle: n <= 8 only");
  if (n < 3) return false;
  std::vector<int> rest;
  for (int v = 1; v < n; ++v) rest.push_back(v);
  do {
    if (!g.adjacent(0, rest.front()) || !g.adjacent(rest.back(), 0)) continue;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < rest.size() && ok; ++i)
      ok = g.adjacent(rest[i], rest[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

// Missing colour of a vertex by direct incident scan: the unique colour in
// [0, colour_count) that appears on no edge at u, or hamcol::kNoColour.
inline int missing_colour_oracle(const hamcol::ProperColouring& c, int u) {
  std::vector<char> present(std::size_t(c.colour_count), 0);
  for (int v = 0; v < c.n; ++v) {
    if (v == u) continue;
    const int col = c.colour_of(u, v);
    if (col >= 0 && col < c.colour_count) present[std::size_t(col)] = 1;
  }
  int found = hamcol::kNoColour;
  int absent = 0;
  for (int a = 0; a < c.colour_count; ++a)
    if (!present[std::size_t(a)]) {
      ++absent;
      found = a;
    }
  return absent == 1 ? found : hamcol::kNoColour;
}

}  // namespace oracles
