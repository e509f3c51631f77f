// Command-line driver: generate colouring files, run trial batches, print
// the exhaustive lower-bound report, and measure martingale tail frequencies.
//
// Exit codes: 0 clean run (an exhausted cycle search is still clean),
// 1 an internal invariant was violated, 2 bad usage or bad input.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hamcol/colouring.hpp"
#include "hamcol/experiment.hpp"
#include "hamcol/io.hpp"
#include "hamcol/spectral.hpp"

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

hamcol::ProperColouring make_colouring(const std::string& family, int n, int k) {
  if (family == "circle") return hamcol::circle_colouring(n);
  if (family == "cyclic") return hamcol::cyclic_colouring_odd(n);
  if (family == "xor") {
    if (k == 0) {
      while ((1 << k) < n) ++k;
      if (n < 2 || (1 << k) != n)
        throw std::invalid_argument("xor family needs --k, or --n a power of two");
    }
    return hamcol::xor_colouring(k);
  }
  throw std::invalid_argument("unknown family: " + family);
}

void print_summary(std::ostream& os, const hamcol::BatchResult& r) {
  const hamcol::BatchSummary& s = r.summary;
  os << "n=" << r.ctx.cfg.n << " family=" << hamcol::family_name(r.ctx.cfg.family)
     << " d=" << r.ctx.d << " trials=" << s.trials << " seed=" << r.ctx.cfg.master_seed << "\n";
  os << "clean " << s.clean_count << "/" << s.trials << " (frequency "
     << hamcol::format_double(s.clean_frequency) << ", expected "
     << hamcol::format_double(s.expected_clean) << "), degenerate " << s.degenerate_count << "\n";
  if (!s.lambda_over_d_quantiles.empty()) {
    os << "lambda/d quantiles (min q25 med q75 max):";
    for (double q : s.lambda_over_d_quantiles) os << " " << hamcol::format_double(q);
    os << "\n";
  }
  os << "pass_empirical " << hamcol::format_double(s.pass_empirical_fraction)
     << " of clean; pass_ks " << hamcol::format_double(s.pass_ks_fraction) << " of "
     << s.ks_defined_count << " where the reference bound is defined\n";
  os << "cycles found " << s.found_count << "/" << s.clean_count << " clean trials";
  if (s.found_count > 0)
    os << "; colour count min/mean/max " << s.colour_count_min << "/"
       << hamcol::format_double(s.colour_count_mean) << "/" << s.colour_count_max;
  os << "\n";
  os << "ceil((ln n)^3) = " << s.formula_d << " vs 8*sqrt(n) = "
     << hamcol::format_double(s.sqrt_bound) << ": formula "
     << (s.formula_below_sqrt ? "below" : "NOT below") << " the sqrt bound at this n\n";
  if (!s.violations.empty()) {
    os << "INVARIANT VIOLATIONS:\n";
    for (const std::string& v : s.violations) os << "  " << v << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-coloured Hamilton cycle experiments"};
  app.require_subcommand(1);

  std::string family = "circle";
  int n = 0;
  int k = 0;
  std::string out_path;
  std::string in_path;

  CLI::App* gen = app.add_subcommand("gen", "write a proper colouring file");
  gen->add_option("--family", family, "circle|cyclic|xor")->required();
  gen->add_option("--n", n, "vertex count (circle: even, cyclic: odd)");
  gen->add_option("--k", k, "dimension for the xor family (n = 2^k)");
  gen->add_option("--out", out_path, "output file (default stdout)");

  hamcol::TrialConfig cfg;
  std::string log_base = "e";
  CLI::App* run = app.add_subcommand("run", "run a batch of seeded trials");
  run->add_option("--family", family, "circle|cyclic|xor|file")->required();
  run->add_option("--n", n, "vertex count");
  run->add_option("--k", k, "dimension for the xor family");
  run->add_option("--in", in_path, "colouring file for --family file");
  run->add_option("--d", cfg.d_override, "colours to sample (default ceil((ln n)^3), clamped)");
  run->add_option("--trials", cfg.trials, "number of trials")->required();
  run->add_option("--seed", cfg.master_seed, "master seed");
  run->add_option("--budget", cfg.budget, "rotation budget per trial (default 500n)");
  run->add_option("--resample-limit", cfg.resample_limit, "degenerate-sample retries per trial");
  run->add_option("--log-base", log_base, "e|2")->check(CLI::IsMember({"e", "2"}));
  run->add_option("--workers", cfg.workers, "worker threads");
  run->add_option("--out", out_path, "results file, .json or .csv (default JSON to stdout)");

  int lb_k = 0;
  CLI::App* lower = app.add_subcommand("lowerbound", "exhaustive minimum-colour report for Z_2^k");
  lower->add_option("--k", lb_k, "dimension, 2 or 3")->required();
  lower->add_option("--out", out_path, "JSON report file (default text to stdout)");

  int m_d = 0;
  int m_trials = 0;
  int m_traces = 0;
  std::uint64_t m_seed = 0;
  std::vector<double> m_ts;
  CLI::App* mart = app.add_subcommand("martingale", "tail frequencies of the summand martingale");
  mart->add_option("--n", n, "vertex count (even)")->required();
  mart->add_option("--d", m_d, "number of summands")->required();
  mart->add_option("--trials", m_trials, "number of sampled paths")->required();
  mart->add_option("--t", m_ts, "thresholds, comma separated")->required()->delimiter(',');
  mart->add_option("--seed", m_seed, "master seed");
  mart->add_option("--traces", m_traces, "record full norm paths for the first trials");
  mart->add_option("--out", out_path, "JSON output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const hamcol::ProperColouring c = make_colouring(family, n, k);
      const std::string text = hamcol::serialize_colouring(c);
      if (out_path.empty())
        std::cout << text;
      else
        hamcol::write_text_file(out_path, text);
      return 0;
    }

    if (run->parsed()) {
      cfg.n = n;
      cfg.log_base = log_base[0];
      if (family == "circle") {
        cfg.family = hamcol::Family::circle;
      } else if (family == "cyclic") {
        cfg.family = hamcol::Family::cyclic;
      } else if (family == "xor") {
        cfg.family = hamcol::Family::xor_;
        if (cfg.n == 0 && k > 0) cfg.n = 1 << k;
      } else if (family == "file") {
        cfg.family = hamcol::Family::file;
        if (in_path.empty()) throw std::invalid_argument("--family file needs --in");
        cfg.file_path = in_path;
      } else {
        throw std::invalid_argument("unknown family: " + family);
      }
      const hamcol::BatchResult result = hamcol::run_batch(cfg);
      if (out_path.empty()) {
        std::cout << hamcol::batch_json(result).dump(2) << "\n";
        print_summary(std::cerr, result);
      } else if (ends_with(out_path, ".csv")) {
        hamcol::write_text_file(out_path, hamcol::batch_csv(result));
        print_summary(std::cout, result);
      } else if (ends_with(out_path, ".json")) {
        hamcol::write_text_file(out_path, hamcol::batch_json(result).dump(2) + "\n");
        print_summary(std::cout, result);
      } else {
        throw std::invalid_argument("--out must end in .json or .csv");
      }
      return result.summary.violations.empty() ? 0 : 1;
    }

    if (lower->parsed()) {
      const hamcol::LowerBoundReport rep = hamcol::lower_bound_report(lb_k);
      if (!out_path.empty()) {
        hamcol::write_text_file(out_path, hamcol::lower_bound_json(rep).dump(2) + "\n");
      } else {
        std::cout << "k=" << rep.k << " n=" << rep.n << " minimum=" << rep.minimum
                  << " (bound k holds: " << (rep.bound_holds ? "yes" : "NO") << ")\n";
        std::cout << "witness cycle:";
        for (int v : rep.witness) std::cout << " " << v;
        std::cout << "\nwitness colours:";
        for (int c : rep.witness_colours) std::cout << " " << c;
        std::cout << "\nGF(2) rank of witness colours = " << rep.rank
                  << (rep.rank_pass ? " (= k)" : " (!= k)") << "\n";
      }
      return rep.bound_holds && rep.rank_pass ? 0 : 1;
    }

    if (mart->parsed()) {
      const hamcol::ProperColouring c = hamcol::circle_colouring(n);
      const hamcol::MartingaleStats stats =
          hamcol::simulate_martingale(c, m_d, m_trials, m_seed, m_ts, m_traces);
      std::cout << "n=" << stats.n << " d=" << stats.d << " trials=" << stats.trials
                << " seed=" << stats.seed << "\n";
      std::cout << "t,hoeffding_bound,empirical_frequency\n";
      for (std::size_t i = 0; i < stats.ts.size(); ++i)
        std::cout << hamcol::format_double(stats.ts[i]) << ","
                  << hamcol::format_double(stats.bounds[i]) << ","
                  << hamcol::format_double(stats.frequencies[i]) << "\n";
      if (!out_path.empty())
        hamcol::write_text_file(out_path, hamcol::martingale_json(stats).dump(2) + "\n");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // the libraries reserve plain logic_error for broken internal invariants
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
