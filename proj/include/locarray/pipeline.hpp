#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locarray/deadline.hpp"
#include "locarray/ga.hpp"
#include "locarray/ipo.hpp"
#include "locarray/lll.hpp"
#include "locarray/nonloc.hpp"
#include "locarray/params.hpp"
#include "locarray/rng.hpp"
#include "locarray/rowmap.hpp"
#include "locarray/search.hpp"
#include "locarray/test_array.hpp"
#include "locarray/verify_la.hpp"

namespace locarray {

enum class Generator { ipo, lll };

inline const char *generator_name(Generator g) {
  return g == Generator::ipo ? "ipo" : "lll";
}

struct StageSeconds {
  double generation = 0;
  double rho = 0;
  double partition = 0;
  double scan = 0;
  double ga = 0;
  double verify = 0;
};

struct PipelineConfig {
  Generator generator = Generator::ipo;
  LllConfig lll;   // seed field is overridden per repetition
  GaParams ga;     // seed field is overridden per repetition
  std::uint64_t seed = 0;
  int repetitions = 1;
  DSetMode mode = DSetMode::at_most;
  int threads = 1;
  SearchOptions search;
  bool brute_force_verify = false;
  std::uint64_t pair_cap = kDefaultPairCap;
  PhaseCallback phase_progress;
};

struct RepetitionStats {
  int index = 0;
  int base_rows = 0;
  int added_rows = 0;
  std::uint64_t nonloc_count = 0;
  std::uint64_t lll_resamples = 0;
  bool ga_ran = false;
  bool verified = false;
  double seconds = 0;
  std::string failure; // empty when the repetition produced a verified array
};

enum class PipelineStatus {
  ok,            // verified artifact produced
  timeout,       // wall-clock budget expired first
  budget,        // GA evolve-call budget or LLL resample cap exhausted
  verify_failed, // an artifact was produced but re-verification rejected it
};

inline const char *status_name(PipelineStatus s) {
  switch (s) {
  case PipelineStatus::ok: return "ok";
  case PipelineStatus::timeout: return "timeout";
  case PipelineStatus::budget: return "budget";
  case PipelineStatus::verify_failed: return "verify_failed";
  }
  return "unknown";
}

struct PipelineResult {
  Params params;
  Generator generator = Generator::ipo;
  std::uint64_t seed = 0;

  TestArray array; // best verified artifact (empty if none)
  bool verified = false;
  bool timed_out = false;
  PipelineStatus status = PipelineStatus::ok;
  std::string failure_reason;

  // Statistics of the repetition that produced `array` (or of the last
  // attempt when nothing verified).
  int base_rows = 0;
  int added_rows = 0;
  std::uint64_t nonloc_count = 0;
  std::map<int, std::uint64_t> bucket_histogram;
  std::map<int, std::uint64_t> residual_histogram;
  std::uint64_t lll_resamples = 0;
  StageSeconds timings;
  std::vector<SearchPhase> search_trace;

  std::vector<RepetitionStats> repetitions;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct RepetitionOutcome {
  TestArray array;
  bool verified = false;
  PipelineStatus fail_status = PipelineStatus::ok;
  std::uint64_t nonloc_count = 0;
  std::map<int, std::uint64_t> bucket_histogram;
  std::map<int, std::uint64_t> residual_histogram;
  std::uint64_t lll_resamples = 0;
  StageSeconds timings;
  std::vector<SearchPhase> search_trace;
  int base_rows = 0;
  int added_rows = 0;
  bool ga_ran = false;
  std::string failure;
};

} // namespace detail

// Full two-stage run: generate (or reuse) a covering array, find the
// non-locating pairs, evolve an appended block when any remain, and re-verify
// the final artifact before reporting success.  A deterministic generator is
// built once and only stage 2 varies across repetitions; the randomized
// generator redraws both stages.  The smallest verified array wins.
inline PipelineResult run_pipeline(const Params &p, const PipelineConfig &config,
                                   const Deadline &deadline = Deadline::never()) {
  validate(p);
  validate(config.ga);
  if (config.repetitions < 1)
    throw std::invalid_argument("repetitions must be at least 1");

  PipelineResult result;
  result.params = p;
  result.generator = config.generator;
  result.seed = config.seed;

  std::optional<TestArray> shared_base; // IPO base, generated once
  double shared_base_seconds = 0;

  auto run_repetition = [&](int rep) {
    detail::RepetitionOutcome out;

    // Stage 1a: covering array.
    TestArray base;
    if (config.generator == Generator::ipo) {
      if (!shared_base) {
        const auto t0 = std::chrono::steady_clock::now();
        shared_base = generate_ipo(p, config.seed, deadline);
        shared_base_seconds = detail::seconds_since(t0);
      }
      base = *shared_base;
      out.timings.generation = shared_base_seconds;
    } else {
      LllConfig lll = config.lll;
      lll.seed = mix_seed(config.seed, static_cast<std::uint64_t>(2 * rep));
      const auto t0 = std::chrono::steady_clock::now();
      LllResult lres = generate_lll(p, lll, deadline);
      out.timings.generation = detail::seconds_since(t0);
      base = std::move(lres.array);
      out.lll_resamples = lres.resamples;
    }
    out.base_rows = base.rows();

    // Stage 1b-1c: row-sets and partition.
    auto t0 = std::chrono::steady_clock::now();
    RhoTable table = compute_all_rho(base, p, deadline);
    out.timings.rho = detail::seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    RowMap map = build_rowmap(base, p, table, config.mode, deadline);
    out.timings.partition = detail::seconds_since(t0);
    out.bucket_histogram = map.histogram();

    // Stage 1d: non-locating pairs.
    t0 = std::chrono::steady_clock::now();
    std::vector<NonLocEntry> nonloc =
        find_nonlocating(map, p.redundancy, config.threads, deadline);
    out.timings.scan = detail::seconds_since(t0);
    out.nonloc_count = nonloc.size();
    for (const NonLocEntry &e : nonloc) ++out.residual_histogram[e.residual];

    // Stage 2: appended-block search, skipped when stage 1 already locates.
    TestArray candidate = base;
    if (!nonloc.empty()) {
      out.ga_ran = true;
      GaParams ga = config.ga;
      ga.seed = mix_seed(config.seed, static_cast<std::uint64_t>(2 * rep + 1));
      t0 = std::chrono::steady_clock::now();
      SearchResult search = search_rows(nonloc, p, ga, config.search, deadline,
                                        config.phase_progress);
      out.timings.ga = detail::seconds_since(t0);
      out.search_trace = search.trace;
      if (!search.success) {
        out.failure =
            "block search exhausted its evolve-call budget (best fitness " +
            std::to_string(search.best_fitness) + "/" +
            std::to_string(search.target) + ")";
        out.fail_status = PipelineStatus::budget;
        out.array = std::move(candidate);
        return out;
      }
      for (int r = 0; r < search.block.rows; ++r) {
        std::vector<int> row(p.factors);
        for (int c = 0; c < p.factors; ++c) row[c] = search.block.at(r, c);
        candidate.append_row(row);
      }
      out.added_rows = search.block.rows;
    }

    // Re-verification of the artifact, never skipped.
    t0 = std::chrono::steady_clock::now();
    LaVerdict verdict = verify_la(candidate, p, config.mode, false,
                                  config.threads, config.pair_cap, deadline);
    bool ok = verdict.locating;
    if (ok && config.brute_force_verify) {
      LaVerdict brute = verify_la(candidate, p, config.mode, true,
                                  config.threads, config.pair_cap, deadline);
      ok = brute.locating;
    }
    out.timings.verify = detail::seconds_since(t0);
    out.verified = ok;
    if (!ok) {
      out.failure = "final verification rejected the array";
      out.fail_status = PipelineStatus::verify_failed;
    }
    out.array = std::move(candidate);
    return out;
  };

  int best_rows = -1;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    RepetitionStats stats;
    stats.index = rep;
    const auto rep_t0 = std::chrono::steady_clock::now();
    try {
      detail::RepetitionOutcome out = run_repetition(rep);
      stats.base_rows = out.base_rows;
      stats.added_rows = out.added_rows;
      stats.nonloc_count = out.nonloc_count;
      stats.lll_resamples = out.lll_resamples;
      stats.ga_ran = out.ga_ran;
      stats.verified = out.verified;
      stats.failure = out.failure;
      stats.seconds = detail::seconds_since(rep_t0);
      result.repetitions.push_back(stats);

      const bool better =
          out.verified && (best_rows < 0 || out.array.rows() < best_rows);
      const bool last_resort = !result.verified && best_rows < 0;
      if (better || last_resort) {
        if (out.verified) best_rows = out.array.rows();
        result.array = std::move(out.array);
        result.verified = out.verified;
        result.base_rows = out.base_rows;
        result.added_rows = out.added_rows;
        result.nonloc_count = out.nonloc_count;
        result.bucket_histogram = std::move(out.bucket_histogram);
        result.residual_histogram = std::move(out.residual_histogram);
        result.lll_resamples = out.lll_resamples;
        result.timings = out.timings;
        result.search_trace = std::move(out.search_trace);
        result.failure_reason = out.failure;
        result.status = out.verified ? PipelineStatus::ok : out.fail_status;
      }
    } catch (const TimeoutError &e) {
      stats.failure = e.what();
      stats.seconds = detail::seconds_since(rep_t0);
      result.repetitions.push_back(stats);
      result.timed_out = true;
      if (!result.verified) {
        result.failure_reason = e.what();
        result.status = PipelineStatus::timeout;
      }
      break;
    } catch (const LllFailure &e) {
      stats.failure = e.what();
      stats.lll_resamples = e.resamples;
      stats.seconds = detail::seconds_since(rep_t0);
      result.repetitions.push_back(stats);
      if (!result.verified && result.failure_reason.empty()) {
        result.failure_reason = e.what();
        result.status = PipelineStatus::budget;
      }
    }
  }
  return result;
}

} // namespace locarray
