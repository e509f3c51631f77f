#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hamcol/colouring.hpp"
#include "hamcol/graph.hpp"
#include "hamcol/rng.hpp"
#include "hamcol/sampler.hpp"

namespace hamcol {

constexpr int kMaxEigenDim = 4096;

// log in the certificate base: 'e' (default) or '2'.
inline double log_base(double x, char base) {
  return base == '2' ? std::log2(x) : std::log(x);
}

// All eigenvalues of a real symmetric matrix, sorted descending. Backed by a
// dense Householder tridiagonalization with implicit-shift iteration
// (Eigen's SelfAdjointEigenSolver); accuracy is ~1e-15 * ||M||, well inside
// the 1e-9 * max(1, ||M||) contract the callers rely on.
inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
  if (m.rows() > kMaxEigenDim) throw std::invalid_argument("symmetric_eigenvalues: n > 4096");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric_eigenvalues: eigensolver failed");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v : g.neighbours(u)) a(u, v) = 1.0;
  return a;
}

// Adjacency matrix of one summand: the perfect matching of a colour class,
// or the identity for kIdentityEntry. Rejects classes that are not perfect
// matchings (odd-n colourings), since the summand must be a symmetric
// permutation matrix.
inline Eigen::MatrixXd summand_matrix(const ProperColouring& c, int entry) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(c.n, c.n);
  if (entry == kIdentityEntry) {
    m.setIdentity(c.n, c.n);
    return m;
  }
  if (entry < 0 || entry >= c.colour_count)
    throw std::invalid_argument("summand_matrix: colour id out of range");
  if (long(c.class_edges[entry].size()) * 2 != c.n)
    throw std::invalid_argument("summand_matrix: colour class is not a perfect matching");
  for (const auto& [u, v] : c.class_edges[entry]) {
    m(u, v) = 1.0;
    m(v, u) = 1.0;
  }
  return m;
}

struct LambdaRoutes {
  double by_sorting;    // second-largest |eigenvalue| of A
  double by_deflation;  // ||A - (d/n) J||, the all-ones direction deflated
};

// lambda(H) = max_{i>=2} |eigenvalue_i| of the adjacency matrix of a
// d-regular graph H. Computed along both algebraic routes; for a regular
// graph they coincide because the all-ones vector is the top eigenvector.
// A disagreement beyond 1e-8 means a broken invariant and throws.
inline LambdaRoutes lambda_routes(const Graph& g) {
  const int d = g.regular_degree();
  if (d < 0) throw std::invalid_argument("lambda_of_graph: graph is not regular");
  const int n = g.n();
  if (n < 2) throw std::invalid_argument("lambda_of_graph: need n >= 2");

  Eigen::MatrixXd a = adjacency_matrix(g);
  const std::vector<double> ev = symmetric_eigenvalues(a);
  if (std::abs(ev.front() - double(d)) > 1e-9 * std::max(1.0, double(d)))
    throw std::logic_error("lambda_of_graph: top eigenvalue of a regular graph must equal d");
  LambdaRoutes r{};
  r.by_sorting = std::max(std::abs(ev[1]), std::abs(ev.back()));

  a.array() -= double(d) / double(n);
  const std::vector<double> dev = symmetric_eigenvalues(a);
  r.by_deflation = std::max(std::abs(dev.front()), std::abs(dev.back()));

  if (std::abs(r.by_sorting - r.by_deflation) > 1e-8)
    throw std::logic_error("lambda_of_graph: spectral identity violated");
  return r;
}

inline double lambda_of_graph(const Graph& g) { return lambda_routes(g).by_deflation; }

// Hamiltonicity threshold for an (n,d,lambda)-graph:
//   lambda <= (loglog n)^2 / (1000 log n (logloglog n)) * d.
// Needs logloglog n > 0, i.e. n above e^e (n >= 16 for integers in base e).
inline double ks_threshold(double n, double d, char base = 'e') {
  const double ln = log_base(n, base);
  const double lln = ln > 0 ? log_base(ln, base) : -1.0;
  const double llln = lln > 0 ? log_base(lln, base) : -1.0;
  if (!(llln > 0))
    throw std::domain_error("ks_threshold: needs logloglog n > 0");
  return lln * lln / (1000.0 * ln * llln) * d;
}

// Operator Hoeffding tail for a martingale with increments in [-I/2, I/2]:
//   P[||X_d - E X_d|| >= d t] <= 2 n exp(-2 d t^2),   0 < t < 1/2.
inline double hoeffding_tail(double n, double d, double t) {
  if (!(t > 0.0 && t < 0.5))
    throw std::invalid_argument("hoeffding_tail: need 0 < t < 1/2");
  return 2.0 * n * std::exp(-2.0 * d * t * t);
}

// Specialization at t = loglog n / log n and d = (log n)^3 (natural logs):
// the tail collapses to 2 n^(1 - 2 (loglog n)^2).
inline double hoeffding_tail_specialized(double n) {
  const double lln = std::log(std::log(n));
  return 2.0 * std::pow(n, 1.0 - 2.0 * lln * lln);
}

// Pseudo-randomness certificate for a sampled union graph.
struct SpectralCertificate {
  int n = 0;
  int d = 0;
  double lambda = 0.0;
  double t = 0.0;                    // loglog n / log n in log_base
  double empirical_bound = 0.0;      // 2 d t
  std::optional<double> ks_bound;    // absent when logloglog n <= 0
  std::optional<double> tail_bound;  // 2n exp(-2dt^2); absent when t >= 1/2
  bool pass_empirical = false;
  std::optional<bool> pass_ks;
  char log_base = 'e';
};

inline SpectralCertificate certify(const SampledGraph& h, char base = 'e') {
  if (!h.clean) throw std::invalid_argument("certify: sample is not clean");
  if (h.n < 4) throw std::invalid_argument("certify: need n >= 4");
  SpectralCertificate cert;
  cert.n = h.n;
  cert.d = h.d;
  cert.log_base = base;
  cert.lambda = lambda_of_graph(h.graph);
  const double ln = log_base(double(h.n), base);
  cert.t = log_base(ln, base) / ln;
  cert.empirical_bound = 2.0 * double(h.d) * cert.t;
  cert.pass_empirical = cert.lambda <= cert.empirical_bound;
  if (cert.t > 0.0 && cert.t < 0.5)
    cert.tail_bound = hoeffding_tail(double(h.n), double(h.d), cert.t);
  try {
    cert.ks_bound = ks_threshold(double(h.n), double(h.d), base);
    cert.pass_ks = cert.lambda <= *cert.ks_bound;
  } catch (const std::domain_error&) {
    // small n: reference comparison undefined, empirical one still reported
  }
  return cert;
}

// One realized martingale path: X_i = sum_{l<=i} (A^(l) - J/n)/2, with the
// operator norm recorded after each step.
struct MartingaleTrace {
  ColourSample sample;
  std::vector<double> norms;  // ||X_1||, ..., ||X_d||
};

struct MartingaleStats {
  int n = 0;
  int d = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> ts;
  std::vector<double> bounds;       // hoeffding_tail(n, d, t) per t
  std::vector<double> frequencies;  // empirical P[||X_d|| >= d t] per t
  std::vector<double> norms;        // ||X_d|| per trial
  std::vector<MartingaleTrace> traces;
};

namespace detail {

inline void add_summand(Eigen::MatrixXd& sum, const ProperColouring& c, int entry) {
  if (entry == kIdentityEntry) {
    sum.diagonal().array() += 1.0;
    return;
  }
  for (const auto& [u, v] : c.class_edges[entry]) {
    sum(u, v) += 1.0;
    sum(v, u) += 1.0;
  }
}

inline double operator_norm_symmetric(const Eigen::MatrixXd& m) {
  const std::vector<double> ev = symmetric_eigenvalues(m);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace detail

// Draws `trials` unconditioned samples (repeats and identity summands are
// legal: the martingale is defined on every outcome), forms
// X_d = (A - (d/n) J)/2 with A the summand sum, and measures how often
// ||X_d|| >= d t for each requested t. The first `trace_count` trials also
// record the whole norm path ||X_1||..||X_d||.
inline MartingaleStats simulate_martingale(const ProperColouring& c, int d, int trials,
                                           std::uint64_t seed, const std::vector<double>& ts,
                                           int trace_count = 0) {
  if (d < 1) throw std::invalid_argument("simulate_martingale: need d >= 1");
  if (trials < 1) throw std::invalid_argument("simulate_martingale: need trials >= 1");
  if (c.n % 2 != 0 || c.colour_count != c.n - 1)
    throw std::invalid_argument("simulate_martingale: need an even-n colouring with n-1 colours");
  MartingaleStats stats;
  stats.n = c.n;
  stats.d = d;
  stats.trials = trials;
  stats.seed = seed;
  stats.ts = ts;
  for (double t : ts) stats.bounds.push_back(hoeffding_tail(double(c.n), double(d), t));

  const double dn = double(d) / double(c.n);
  Eigen::MatrixXd sum(c.n, c.n);
  Eigen::MatrixXd x(c.n, c.n);
  for (int trial = 0; trial < trials; ++trial) {
    const ColourSample s = sample_colours(c, d, derive_seed(seed, std::uint64_t(trial)));
    sum.setZero();
    if (trial < trace_count) {
      MartingaleTrace trace;
      trace.sample = s;
      const double in = 1.0 / double(c.n);
      for (int i = 0; i < d; ++i) {
        detail::add_summand(sum, c, s.entries[i]);
        x = 0.5 * (sum - Eigen::MatrixXd::Constant(c.n, c.n, double(i + 1) * in));
        trace.norms.push_back(detail::operator_norm_symmetric(x));
      }
      stats.norms.push_back(trace.norms.back());
      stats.traces.push_back(std::move(trace));
    } else {
      for (int i = 0; i < d; ++i) detail::add_summand(sum, c, s.entries[i]);
      x = 0.5 * (sum - Eigen::MatrixXd::Constant(c.n, c.n, dn));
      stats.norms.push_back(detail::operator_norm_symmetric(x));
    }
  }

  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double threshold = double(d) * ts[j];
    long hits = 0;
    for (double norm : stats.norms)
      if (norm >= threshold) ++hits;
    stats.frequencies.push_back(double(hits) / double(trials));
  }
  return stats;
}

}  // namespace hamcol
