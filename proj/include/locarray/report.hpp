#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "locarray/coverage.hpp"
#include "locarray/deadline.hpp"
#include "locarray/nonloc.hpp"
#include "locarray/pipeline.hpp"
#include "locarray/rowmap.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

inline const char *dset_mode_name(DSetMode mode) {
  return mode == DSetMode::at_most ? "at-most" : "exact";
}

// Stage-1 census of an existing array: coverage, bucket histogram, and the
// surviving non-locating pairs with their separations.
struct AnalyzeResult {
  Params params;
  DSetMode mode = DSetMode::at_most;
  int rows = 0;
  int min_coverage = 0;
  bool covering = false;
  bool locating = false;
  std::uint64_t dsets = 0;
  std::map<int, std::uint64_t> bucket_histogram;
  std::uint64_t nonloc_count = 0;
  std::map<int, std::uint64_t> residual_histogram;
  double seconds_rho = 0;
  double seconds_partition = 0;
  double seconds_scan = 0;
};

inline AnalyzeResult analyze_array(const TestArray &a, const Params &p,
                                   DSetMode mode = DSetMode::at_most,
                                   int threads = 1,
                                   const Deadline &deadline = Deadline::never()) {
  validate(p);
  AnalyzeResult out;
  out.params = p;
  out.mode = mode;
  out.rows = a.rows();

  const CoverageReport coverage = verify_ca(a, p.strength, p.redundancy, deadline);
  out.min_coverage = coverage.min_coverage;
  out.covering = coverage.covering();

  auto t0 = std::chrono::steady_clock::now();
  RhoTable table = compute_all_rho(a, p, deadline);
  out.seconds_rho = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  RowMap map = build_rowmap(a, p, table, mode, deadline);
  out.seconds_partition = detail::seconds_since(t0);
  out.bucket_histogram = map.histogram();
  out.dsets = map.total_dsets();

  t0 = std::chrono::steady_clock::now();
  const std::vector<NonLocEntry> nonloc =
      find_nonlocating(map, p.redundancy, threads, deadline);
  out.seconds_scan = detail::seconds_since(t0);
  out.nonloc_count = nonloc.size();
  for (const NonLocEntry &e : nonloc) ++out.residual_histogram[e.residual];

  out.locating = out.covering && nonloc.empty();
  return out;
}

namespace detail {

inline nlohmann::json params_to_json(const Params &p) {
  return {{"factors", p.factors},
          {"levels", p.levels},
          {"strength", p.strength},
          {"max_faults", p.max_faults},
          {"redundancy", p.redundancy}};
}

inline nlohmann::json histogram_to_json(const std::map<int, std::uint64_t> &h) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto &[key, value] : h) out[std::to_string(key)] = value;
  return out;
}

inline std::string histogram_to_text(const std::map<int, std::uint64_t> &h) {
  std::ostringstream out;
  bool first = true;
  for (const auto &[key, value] : h) {
    if (!first) out << "  ";
    out << key << ":" << value;
    first = false;
  }
  return out.str();
}

} // namespace detail

inline nlohmann::json analyze_to_json(const AnalyzeResult &r) {
  nlohmann::json j;
  j["schema"] = "locarray-analyze/1";
  j["params"] = detail::params_to_json(r.params);
  j["dset_mode"] = dset_mode_name(r.mode);
  j["rows"] = r.rows;
  j["min_coverage"] = r.min_coverage;
  j["covering"] = r.covering;
  j["locating"] = r.locating;
  j["dsets"] = r.dsets;
  j["bucket_histogram"] = detail::histogram_to_json(r.bucket_histogram);
  j["nonloc_count"] = r.nonloc_count;
  j["residual_histogram"] = detail::histogram_to_json(r.residual_histogram);
  j["timings"] = {{"rho_seconds", r.seconds_rho},
                  {"partition_seconds", r.seconds_partition},
                  {"scan_seconds", r.seconds_scan}};
  return j;
}

inline std::string render_analyze_text(const AnalyzeResult &r) {
  std::ostringstream out;
  const Params &p = r.params;
  out << "array: " << r.rows << " rows, " << p.factors << " factors, "
      << p.levels << " levels (t=" << p.strength << ", d=" << p.max_faults
      << ", lambda=" << p.redundancy << ", " << dset_mode_name(r.mode)
      << "-d sets)\n";
  out << "coverage: min " << r.min_coverage << " -> "
      << (r.covering ? "covering" : "NOT covering") << "\n";
  out << "d-sets: " << r.dsets << "\n";
  out << "bucket histogram (|rho| : d-sets): "
      << detail::histogram_to_text(r.bucket_histogram) << "\n";
  out << "non-locating pairs: " << r.nonloc_count << "\n";
  if (r.nonloc_count)
    out << "residual histogram (l : pairs): "
        << detail::histogram_to_text(r.residual_histogram) << "\n";
  out << "locating: " << (r.locating ? "yes" : "no") << "\n";
  out << "timings: rho " << r.seconds_rho << "s, partition "
      << r.seconds_partition << "s, scan " << r.seconds_scan << "s\n";
  return out.str();
}

inline nlohmann::json pipeline_to_json(const PipelineResult &r) {
  nlohmann::json j;
  j["schema"] = "locarray-run/1";
  j["params"] = detail::params_to_json(r.params);
  j["generator"] = generator_name(r.generator);
  j["seed"] = r.seed;
  j["verified"] = r.verified;
  j["timed_out"] = r.timed_out;
  j["status"] = status_name(r.status);
  if (!r.failure_reason.empty()) j["failure"] = r.failure_reason;
  j["rows"] = r.array.rows();
  j["base_rows"] = r.base_rows;
  j["added_rows"] = r.added_rows;
  j["nonloc_count"] = r.nonloc_count;
  j["bucket_histogram"] = detail::histogram_to_json(r.bucket_histogram);
  j["residual_histogram"] = detail::histogram_to_json(r.residual_histogram);
  if (r.generator == Generator::lll) j["lll_resamples"] = r.lll_resamples;
  j["timings"] = {{"generation_seconds", r.timings.generation},
                  {"rho_seconds", r.timings.rho},
                  {"partition_seconds", r.timings.partition},
                  {"scan_seconds", r.timings.scan},
                  {"ga_seconds", r.timings.ga},
                  {"verify_seconds", r.timings.verify}};
  nlohmann::json trace = nlohmann::json::array();
  for (const SearchPhase &phase : r.search_trace)
    trace.push_back({{"height", phase.height},
                     {"success", phase.success},
                     {"best_fitness", phase.best_fitness},
                     {"generations", phase.generations_run}});
  j["search_trace"] = trace;
  nlohmann::json reps = nlohmann::json::array();
  for (const RepetitionStats &s : r.repetitions) {
    nlohmann::json rep = {{"index", s.index},
                          {"base_rows", s.base_rows},
                          {"added_rows", s.added_rows},
                          {"nonloc_count", s.nonloc_count},
                          {"ga_ran", s.ga_ran},
                          {"verified", s.verified},
                          {"seconds", s.seconds}};
    if (s.lll_resamples) rep["lll_resamples"] = s.lll_resamples;
    if (!s.failure.empty()) rep["failure"] = s.failure;
    reps.push_back(rep);
  }
  j["repetitions"] = reps;
  return j;
}

inline std::string render_pipeline_text(const PipelineResult &r) {
  std::ostringstream out;
  const Params &p = r.params;
  out << "pipeline: generator " << generator_name(r.generator) << ", seed "
      << r.seed << ", k=" << p.factors << " v=" << p.levels
      << " t=" << p.strength << " d=" << p.max_faults
      << " lambda=" << p.redundancy << "\n";
  for (const RepetitionStats &s : r.repetitions) {
    out << "  rep " << s.index << ": base " << s.base_rows << " rows, nonloc "
        << s.nonloc_count;
    if (s.ga_ran) out << ", added " << s.added_rows;
    out << (s.verified ? ", verified" : ", FAILED");
    if (!s.failure.empty()) out << " (" << s.failure << ")";
    out << " [" << s.seconds << "s]\n";
  }
  if (r.verified) {
    out << "result: verified locating array with " << r.array.rows()
        << " rows (" << r.base_rows << " base + " << r.added_rows
        << " added)\n";
  } else {
    out << "result: FAILED";
    if (!r.failure_reason.empty()) out << " — " << r.failure_reason;
    out << "\n";
  }
  if (r.timed_out) out << "timed out before completing all repetitions\n";
  out << "timings: generation " << r.timings.generation << "s, rho "
      << r.timings.rho << "s, partition " << r.timings.partition << "s, scan "
      << r.timings.scan << "s, ga " << r.timings.ga << "s, verify "
      << r.timings.verify << "s\n";
  return out.str();
}

} // namespace locarray
