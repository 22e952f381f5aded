#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "locarray/deadline.hpp"
#include "locarray/ga.hpp"
#include "locarray/nonloc.hpp"
#include "locarray/params.hpp"

namespace locarray {

struct SearchOptions {
  std::uint64_t max_evolve_calls = 64;
  // Start the doubling search at the largest recorded residual (clamped to
  // 1) instead of the tighter deficit bound max(λ − ℓ).
  bool literal_initial_height = false;
  GenerationCallback on_generation; // forwarded to every evolve call
};

struct SearchPhase {
  int height = 0;
  bool success = false;
  int best_fitness = 0;
  int generations_run = 0;
};

struct SearchResult {
  bool success = false;
  Block block;          // smallest successful block; best partial on failure
  int target = 0;       // |NonLoc|
  int best_fitness = 0; // equals target on success
  std::uint64_t evolve_calls = 0;
  std::vector<SearchPhase> trace;
};

using PhaseCallback = std::function<void(const SearchPhase &)>;

namespace detail {

// Decorrelates the per-height GA runs while keeping the whole search a pure
// function of (seed, params, nonloc).
inline GaParams phase_params(const GaParams &ga, std::uint64_t phase) {
  GaParams out = ga;
  out.seed = ga.seed + phase * 0x9E3779B97F4A7C15ULL;
  return out;
}

inline std::vector<Block> keep_top_half(std::vector<Block> population) {
  population.resize(population.size() / 2);
  return population;
}

} // namespace detail

// Find the smallest block height the GA can make work: double the height
// until a run succeeds, then binary-search the gap, reusing each phase's
// fittest individuals as warm starts for the next.  The height never searches
// below max(λ − ℓ), which any solution provably needs.
inline SearchResult search_rows(const std::vector<NonLocEntry> &nonloc,
                                const Params &p, const GaParams &ga,
                                const SearchOptions &options = {},
                                const Deadline &deadline = Deadline::never(),
                                const PhaseCallback &on_phase = {}) {
  validate(p);
  validate(ga);
  SearchResult result;
  result.target = static_cast<int>(nonloc.size());
  if (nonloc.empty()) {
    result.success = true;
    result.block = Block(0, p.factors);
    return result;
  }

  int lower_bound = 1;
  int largest_ell = 0;
  for (const NonLocEntry &e : nonloc) {
    lower_bound = std::max(lower_bound, p.redundancy - e.residual);
    largest_ell = std::max(largest_ell, e.residual);
  }
  const int initial =
      options.literal_initial_height ? std::max(largest_ell, 1) : lower_bound;

  std::vector<Block> warm;
  std::uint64_t phase = 0;
  auto run_phase = [&](int height) {
    EvolveResult res = evolve(nonloc, p, detail::phase_params(ga, phase), height,
                              warm, deadline, options.on_generation);
    ++phase;
    ++result.evolve_calls;
    warm = detail::keep_top_half(std::move(res.population));
    result.trace.push_back(
        {height, res.success, res.best_fitness, res.generations_run});
    if (on_phase) on_phase(result.trace.back());
    return res;
  };

  // Doubling until some height works.
  int n_lo = lower_bound - 1;
  int n_hi = 0;
  int height = initial;
  while (true) {
    if (result.evolve_calls >= options.max_evolve_calls) {
      result.best_fitness = result.trace.empty() ? 0 : result.trace.back().best_fitness;
      result.block = warm.empty() ? Block(height, p.factors) : warm.front();
      return result; // failure: budget spent without any success
    }
    EvolveResult res = run_phase(height);
    if (res.success) {
      n_hi = height;
      result.block = std::move(res.block);
      break;
    }
    n_lo = height;
    if (height > std::numeric_limits<int>::max() / 2)
      throw std::overflow_error("block height overflow during doubling");
    height *= 2;
  }

  // Binary search on (n_lo, n_hi].
  while (n_hi - n_lo > 1 && result.evolve_calls < options.max_evolve_calls) {
    const int mid = n_lo + (n_hi - n_lo) / 2;
    EvolveResult res = run_phase(mid);
    if (res.success) {
      n_hi = mid;
      result.block = std::move(res.block);
    } else {
      n_lo = mid;
    }
  }

  result.success = true;
  result.best_fitness = result.target;
  return result;
}

} // namespace locarray
