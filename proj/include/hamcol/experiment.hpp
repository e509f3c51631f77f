#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hamcol/colouring.hpp"
#include "hamcol/hamilton.hpp"
#include "hamcol/rng.hpp"
#include "hamcol/sampler.hpp"
#include "hamcol/spectral.hpp"

namespace hamcol {

enum class Family { circle, cyclic, xor_, file };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::circle: return "circle";
    case Family::cyclic: return "cyclic";
    case Family::xor_: return "xor";
    case Family::file: return "file";
  }
  return "?";
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TrialConfig {
  int n = 0;
  Family family = Family::circle;
  std::string file_path;  // family == file only
  int d_override = 0;     // 0 selects the default ceil((ln n)^3), clamped
  int trials = 1;
  std::uint64_t master_seed = 0;
  long budget = 0;  // rotation budget per trial; 0 selects 500 * (even n)
  int resample_limit = 100;
  char log_base = 'e';
  int workers = 1;
};

inline long d_default_formula(int n) {
  const double ln = std::log(double(n));
  return long(std::ceil(ln * ln * ln));
}

// Immutable per-batch state shared by all workers. `sampling` is the even
// colouring actually drawn from; for odd n it is the one-vertex extension
// and `odd` keeps the original for the reduction step.
struct BatchContext {
  TrialConfig cfg;
  std::optional<ProperColouring> odd;
  ProperColouring sampling;
  int d = 0;
  long budget = 0;
};

inline BatchContext prepare_batch(const TrialConfig& cfg_in) {
  BatchContext ctx;
  ctx.cfg = cfg_in;
  TrialConfig& cfg = ctx.cfg;
  if (cfg.trials < 1) throw std::invalid_argument("prepare_batch: need trials >= 1");
  if (cfg.resample_limit < 0) throw std::invalid_argument("prepare_batch: need resample_limit >= 0");
  if (cfg.workers < 1) throw std::invalid_argument("prepare_batch: need workers >= 1");
  if (cfg.log_base != 'e' && cfg.log_base != '2')
    throw std::invalid_argument("prepare_batch: log base must be e or 2");

  switch (cfg.family) {
    case Family::circle:
      ctx.sampling = circle_colouring(cfg.n);
      break;
    case Family::cyclic:
      ctx.odd = cyclic_colouring_odd(cfg.n);
      ctx.sampling = extend_odd_to_even(*ctx.odd);
      break;
    case Family::xor_: {
      int k = 0;
      while ((1 << k) < cfg.n) ++k;
      if (cfg.n < 4 || (1 << k) != cfg.n)
        throw std::invalid_argument("prepare_batch: xor family needs n a power of two, n >= 4");
      ctx.sampling = xor_colouring(k);
      break;
    }
    case Family::file: {
      ProperColouring c = parse_colouring(read_text_file(cfg.file_path));
      cfg.n = c.n;
      if (c.n % 2 == 0) {
        if (c.colour_count != c.n - 1)
          throw std::invalid_argument("prepare_batch: even-n colouring file must use n - 1 colours");
        ctx.sampling = std::move(c);
      } else {
        ctx.odd = std::move(c);
        ctx.sampling = extend_odd_to_even(*ctx.odd);
      }
      break;
    }
  }
  if (cfg.n < 4) throw std::invalid_argument("prepare_batch: need n >= 4");

  const int colour_count = ctx.sampling.colour_count;
  if (cfg.d_override != 0) {
    if (cfg.d_override < 1 || cfg.d_override > colour_count)
      throw std::invalid_argument("prepare_batch: d must lie in [1, colour_count]");
    ctx.d = cfg.d_override;
  } else {
    ctx.d = int(std::min(d_default_formula(cfg.n), long(colour_count)));
  }
  ctx.budget = cfg.budget > 0 ? cfg.budget : 500L * ctx.sampling.n;
  return ctx;
}

struct TrialRecord {
  int trial_index = 0;
  std::uint64_t seed = 0;  // derive_seed(master_seed, trial_index)
  bool clean = false;
  int resamples = 0;  // attempts beyond the first; == resample_limit when degenerate
  std::vector<int> entries;
  std::optional<SpectralCertificate> certificate;
  bool found = false;
  std::optional<HamiltonCycle> cycle;           // on K_n, the configured graph
  std::optional<HamiltonCycle> extended_cycle;  // on K_{n+1} when n is odd
  double ms_sample = 0.0;
  double ms_spectral = 0.0;
  double ms_hamilton = 0.0;
  std::vector<std::string> violations;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace detail

// One unit of work: resample until clean (bounded), certify the union graph,
// hunt for a Hamilton cycle, reduce to K_n when the configured n was odd.
// Every stage outcome lands in the record; invariant breaches are listed,
// not thrown, so a batch can carry them to the exit code.
inline TrialRecord run_trial(const BatchContext& ctx, int trial_index) {
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.seed = derive_seed(ctx.cfg.master_seed, std::uint64_t(trial_index));
  const std::uint64_t seed_sampling = derive_seed(rec.seed, 0);
  const std::uint64_t seed_finder = derive_seed(rec.seed, 1);

  auto start = std::chrono::steady_clock::now();
  std::optional<SampledGraph> h;
  for (int attempt = 0; attempt <= ctx.cfg.resample_limit; ++attempt) {
    ColourSample s =
        sample_colours(ctx.sampling, ctx.d, derive_seed(seed_sampling, std::uint64_t(attempt)));
    UnionResult r = build_union_graph(ctx.sampling, s);
    rec.entries = s.entries;
    rec.resamples = attempt;
    if (auto* g = std::get_if<SampledGraph>(&r)) {
      h = std::move(*g);
      rec.clean = true;
      break;
    }
  }
  rec.ms_sample = detail::ms_since(start);
  if (!rec.clean) return rec;

  start = std::chrono::steady_clock::now();
  rec.certificate = certify(*h, ctx.cfg.log_base);
  rec.ms_spectral = detail::ms_since(start);

  start = std::chrono::steady_clock::now();
  std::optional<std::vector<int>> order = find_hamilton_rotation(h->graph, seed_finder, ctx.budget);
  if (order) {
    rec.found = true;
    if (ctx.odd) {
      rec.extended_cycle = cycle_colour_count(ctx.sampling, *order);
      rec.cycle = close_path_to_cycle(*ctx.odd, *order);
      if (rec.cycle->colour_count > rec.extended_cycle->colour_count + 1)
        rec.violations.push_back("reduced cycle gained more than one colour");
      if (rec.cycle->colour_count > ctx.d + 1)
        rec.violations.push_back("odd-n colour count exceeds d + 1");
    } else {
      rec.cycle = cycle_colour_count(ctx.sampling, *order);
      if (rec.cycle->colour_count > ctx.d)
        rec.violations.push_back("colour count exceeds d");
    }
  }
  rec.ms_hamilton = detail::ms_since(start);
  return rec;
}

inline TrialRecord run_trial(const TrialConfig& cfg, int trial_index) {
  return run_trial(prepare_batch(cfg), trial_index);
}

struct BatchSummary {
  int trials = 0;
  int clean_count = 0;
  int degenerate_count = 0;
  int found_count = 0;
  double clean_frequency = 0.0;
  double expected_clean = 0.0;  // distinctness probability at (even n, d)
  double finder_success_rate = 0.0;  // found / clean; 0 when no clean trial
  // min, q25, median, q75, max of lambda/d over clean trials (empty if none)
  std::vector<double> lambda_over_d_quantiles;
  double pass_empirical_fraction = 0.0;  // over clean trials
  int ks_defined_count = 0;
  double pass_ks_fraction = 0.0;  // over clean trials with a KS bound
  int colour_count_min = 0;
  int colour_count_max = 0;
  double colour_count_mean = 0.0;
  long formula_d = 0;       // ceil((ln n)^3), unclamped
  double sqrt_bound = 0.0;  // 8 sqrt(n)
  bool formula_below_sqrt = false;
  std::vector<std::string> violations;
};

struct BatchResult {
  BatchContext ctx;
  std::vector<TrialRecord> records;
  BatchSummary summary;
};

namespace detail {

inline std::vector<double> five_point_quantiles(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> q;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double idx = p * double(v.size() - 1);
    const std::size_t lo = std::size_t(idx);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    q.push_back(v[lo] + (idx - double(lo)) * (v[hi] - v[lo]));
  }
  return q;
}

}  // namespace detail

inline BatchSummary summarize(const BatchContext& ctx, const std::vector<TrialRecord>& records) {
  BatchSummary s;
  s.trials = int(records.size());
  std::vector<double> lod;
  std::vector<int> counts;
  int pass_emp = 0;
  int pass_ks = 0;
  for (const TrialRecord& r : records) {
    if (r.clean) {
      ++s.clean_count;
      if (r.certificate) {
        lod.push_back(r.certificate->lambda / double(r.certificate->d));
        if (r.certificate->pass_empirical) ++pass_emp;
        if (r.certificate->pass_ks.has_value()) {
          ++s.ks_defined_count;
          if (*r.certificate->pass_ks) ++pass_ks;
        }
      }
    } else {
      ++s.degenerate_count;
    }
    if (r.found && r.cycle) {
      ++s.found_count;
      counts.push_back(r.cycle->colour_count);
    }
    for (const std::string& v : r.violations)
      s.violations.push_back("trial " + std::to_string(r.trial_index) + ": " + v);
  }
  s.clean_frequency = s.trials ? double(s.clean_count) / double(s.trials) : 0.0;
  s.expected_clean = distinctness_probability(ctx.sampling.n, ctx.d);
  s.finder_success_rate = s.clean_count ? double(s.found_count) / double(s.clean_count) : 0.0;
  if (!lod.empty()) s.lambda_over_d_quantiles = detail::five_point_quantiles(lod);
  s.pass_empirical_fraction = s.clean_count ? double(pass_emp) / double(s.clean_count) : 0.0;
  s.pass_ks_fraction = s.ks_defined_count ? double(pass_ks) / double(s.ks_defined_count) : 0.0;
  if (!counts.empty()) {
    s.colour_count_min = *std::min_element(counts.begin(), counts.end());
    s.colour_count_max = *std::max_element(counts.begin(), counts.end());
    double sum = 0;
    for (int c : counts) sum += c;
    s.colour_count_mean = sum / double(counts.size());
  }
  s.formula_d = d_default_formula(ctx.cfg.n);
  s.sqrt_bound = 8.0 * std::sqrt(double(ctx.cfg.n));
  s.formula_below_sqrt = double(s.formula_d) < s.sqrt_bound;
  return s;
}

// Runs trials 0..trials-1 over a small worker pool. Trials are independent;
// the shared context is immutable, records land in their own slots, and the
// result is identical for every worker count.
inline BatchResult run_batch(const TrialConfig& cfg) {
  BatchResult result;
  result.ctx = prepare_batch(cfg);
  const BatchContext& ctx = result.ctx;
  const int trials = ctx.cfg.trials;
  result.records.resize(std::size_t(trials));

  const int workers = std::min(ctx.cfg.workers, trials);
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        result.records[std::size_t(i)] = run_trial(ctx, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  result.summary = summarize(ctx, result.records);
  return result;
}

struct LowerBoundReport {
  int k = 0;
  int n = 0;
  int minimum = 0;
  std::vector<int> witness;
  std::vector<int> witness_colours;
  int rank = 0;
  bool rank_pass = false;
  bool bound_holds = false;  // minimum >= k
};

// Exhaustive minimum-colour report for the XOR colouring on Z_2^k. Only the
// brute-force regime is served here; larger k would need the sampling route
// through verify_span_lower_bound on heuristically found cycles.
inline LowerBoundReport lower_bound_report(int k) {
  if (k < 2) throw std::invalid_argument("lower_bound_report: need k >= 2");
  if (k > 3)
    throw std::invalid_argument(
        "lower_bound_report: k > 3 exceeds the brute-force regime; sample cycles and check them "
        "with verify_span_lower_bound instead");
  const ProperColouring c = xor_colouring(k);
  const MinColourCycle mc = min_colour_cycle_bruteforce(c);
  LowerBoundReport rep;
  rep.k = k;
  rep.n = c.n;
  rep.minimum = mc.minimum;
  rep.witness = mc.witness;
  rep.witness_colours = cycle_colour_count(c, mc.witness).colours;
  const SpanCheck span = verify_span_lower_bound(k, mc.witness);
  rep.rank = span.rank;
  rep.rank_pass = span.pass;
  rep.bound_holds = rep.minimum >= k;
  if (!rep.bound_holds)
    throw std::logic_error("lower_bound_report: minimum fell below the dimension bound");
  return rep;
}

}  // namespace hamcol
