#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hamcol/experiment.hpp"
#include "hamcol/spectral.hpp"

namespace hamcol {

using ojson = nlohmann::ordered_json;

// Shortest decimal string that round-trips the exact double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// One row per trial. Certificate fields are empty for degenerate trials, the
// ks pair is empty when the bound is undefined, colour_count is empty until
// a cycle is found. Booleans are 0/1.
inline std::string batch_csv(const BatchResult& r) {
  std::string out =
      "trial,seed,clean,resamples,lambda,t,empirical_bound,ks_bound,"
      "pass_empirical,pass_ks,found,colour_count,ms_sample,ms_spectral,ms_hamilton\n";
  for (const TrialRecord& rec : r.records) {
    out += std::to_string(rec.trial_index);
    out += ',';
    out += std::to_string(rec.seed);
    out += ',';
    out += rec.clean ? '1' : '0';
    out += ',';
    out += std::to_string(rec.resamples);
    out += ',';
    if (rec.certificate) {
      const SpectralCertificate& c = *rec.certificate;
      out += format_double(c.lambda);
      out += ',';
      out += format_double(c.t);
      out += ',';
      out += format_double(c.empirical_bound);
      out += ',';
      if (c.ks_bound) out += format_double(*c.ks_bound);
      out += ',';
      out += c.pass_empirical ? '1' : '0';
      out += ',';
      if (c.pass_ks) out += *c.pass_ks ? '1' : '0';
      out += ',';
    } else {
      out += ",,,,,,";
    }
    out += rec.found ? '1' : '0';
    out += ',';
    if (rec.cycle) out += std::to_string(rec.cycle->colour_count);
    out += ',';
    out += format_double(rec.ms_sample);
    out += ',';
    out += format_double(rec.ms_spectral);
    out += ',';
    out += format_double(rec.ms_hamilton);
    out += '\n';
  }
  return out;
}

inline ojson certificate_json(const SpectralCertificate& c) {
  ojson j;
  j["n"] = c.n;
  j["d"] = c.d;
  j["lambda"] = c.lambda;
  j["t"] = c.t;
  j["empirical_bound"] = c.empirical_bound;
  j["ks_bound"] = c.ks_bound ? ojson(*c.ks_bound) : ojson(nullptr);
  j["tail_bound"] = c.tail_bound ? ojson(*c.tail_bound) : ojson(nullptr);
  j["pass_empirical"] = c.pass_empirical;
  j["pass_ks"] = c.pass_ks ? ojson(*c.pass_ks) : ojson(nullptr);
  j["log_base"] = std::string(1, c.log_base);
  return j;
}

inline ojson cycle_json(const HamiltonCycle& c) {
  ojson j;
  j["order"] = c.order;
  j["colours"] = c.colours;
  j["colour_count"] = c.colour_count;
  return j;
}

inline ojson record_json(const TrialRecord& r) {
  ojson j;
  j["trial"] = r.trial_index;
  j["seed"] = r.seed;
  j["clean"] = r.clean;
  j["resamples"] = r.resamples;
  j["entries"] = r.entries;
  j["certificate"] = r.certificate ? certificate_json(*r.certificate) : ojson(nullptr);
  j["found"] = r.found;
  j["cycle"] = r.cycle ? cycle_json(*r.cycle) : ojson(nullptr);
  j["extended_cycle"] = r.extended_cycle ? cycle_json(*r.extended_cycle) : ojson(nullptr);
  j["ms_sample"] = r.ms_sample;
  j["ms_spectral"] = r.ms_spectral;
  j["ms_hamilton"] = r.ms_hamilton;
  return j;
}

inline ojson summary_json(const BatchSummary& s) {
  ojson j;
  j["trials"] = s.trials;
  j["clean_count"] = s.clean_count;
  j["degenerate_count"] = s.degenerate_count;
  j["found_count"] = s.found_count;
  j["clean_frequency"] = s.clean_frequency;
  j["expected_clean"] = s.expected_clean;
  j["finder_success_rate"] = s.finder_success_rate;
  j["lambda_over_d_quantiles"] = s.lambda_over_d_quantiles;
  j["pass_empirical_fraction"] = s.pass_empirical_fraction;
  j["ks_defined_count"] = s.ks_defined_count;
  j["pass_ks_fraction"] = s.pass_ks_fraction;
  j["colour_count_min"] = s.colour_count_min;
  j["colour_count_max"] = s.colour_count_max;
  j["colour_count_mean"] = s.colour_count_mean;
  j["formula_d"] = s.formula_d;
  j["sqrt_bound"] = s.sqrt_bound;
  j["formula_below_sqrt"] = s.formula_below_sqrt;
  j["violations"] = s.violations;
  return j;
}

inline ojson config_json(const BatchContext& ctx) {
  ojson j;
  j["n"] = ctx.cfg.n;
  j["family"] = family_name(ctx.cfg.family);
  if (ctx.cfg.family == Family::file) j["file"] = ctx.cfg.file_path;
  j["d"] = ctx.d;
  j["trials"] = ctx.cfg.trials;
  j["master_seed"] = ctx.cfg.master_seed;
  j["budget"] = ctx.budget;
  j["resample_limit"] = ctx.cfg.resample_limit;
  j["log_base"] = std::string(1, ctx.cfg.log_base);
  j["workers"] = ctx.cfg.workers;
  return j;
}

inline ojson batch_json(const BatchResult& r) {
  ojson j;
  j["config"] = config_json(r.ctx);
  j["summary"] = summary_json(r.summary);
  ojson records = ojson::array();
  for (const TrialRecord& rec : r.records) records.push_back(record_json(rec));
  j["records"] = std::move(records);
  return j;
}

inline ojson martingale_json(const MartingaleStats& s) {
  ojson j;
  j["n"] = s.n;
  j["d"] = s.d;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["ts"] = s.ts;
  j["bounds"] = s.bounds;
  j["frequencies"] = s.frequencies;
  j["norms"] = s.norms;
  ojson traces = ojson::array();
  for (const MartingaleTrace& tr : s.traces) {
    ojson t;
    t["entries"] = tr.sample.entries;
    t["norms"] = tr.norms;
    traces.push_back(std::move(t));
  }
  j["traces"] = std::move(traces);
  return j;
}

inline ojson lower_bound_json(const LowerBoundReport& r) {
  ojson j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["minimum"] = r.minimum;
  j["witness"] = r.witness;
  j["witness_colours"] = r.witness_colours;
  j["rank"] = r.rank;
  j["rank_pass"] = r.rank_pass;
  j["bound_holds"] = r.bound_holds;
  return j;
}

}  // namespace hamcol
