#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "locarray/deadline.hpp"
#include "locarray/interaction.hpp"
#include "locarray/nonloc.hpp"
#include "locarray/params.hpp"
#include "locarray/rng.hpp"

namespace locarray {

struct GaParams {
  int population_size = 100;
  int generations = 100;
  double mutation_rate = 0.30;
  double crossover_rate = 0.10;
  std::uint64_t seed = 0;
};

inline void validate(const GaParams &g) {
  if (g.population_size < 2 || g.population_size % 2 != 0)
    throw std::invalid_argument("population_size must be even and at least 2");
  if (g.generations < 1)
    throw std::invalid_argument("generations must be at least 1");
  if (g.mutation_rate < 0.0 || g.mutation_rate > 1.0)
    throw std::invalid_argument("mutation_rate must lie in [0, 1]");
  if (g.crossover_rate < 0.0 || g.crossover_rate > 1.0)
    throw std::invalid_argument("crossover_rate must lie in [0, 1]");
}

// The row block a GA individual represents: rows to be appended to the base
// array.  Deliberately lighter than TestArray — no Params attached.
struct Block {
  int rows = 0;
  int cols = 0;
  std::vector<int> cells;

  Block() = default;
  Block(int r, int c) : rows(r), cols(c), cells(static_cast<size_t>(r) * c, 0) {}

  int at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
  int &at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const Block &) const = default;
};

struct Individual {
  Block block;
  int fitness = 0;
};

namespace detail {

inline bool block_row_covers(const Block &b, int row, const Interaction &ia) {
  for (const FactorLevel &fl : ia.pairs)
    if (b.at(row, fl.factor) != fl.level) return false;
  return true;
}

} // namespace detail

// Symmetric difference of the two d̄-sets' row memberships computed on the
// block's rows alone (the base array is already accounted for by ℓ).
inline int block_separation(const Block &b, const NonLocEntry &entry) {
  int delta = 0;
  for (int r = 0; r < b.rows; ++r) {
    bool in_first = false, in_second = false;
    for (const Interaction &ia : entry.first.members)
      if (detail::block_row_covers(b, r, ia)) {
        in_first = true;
        break;
      }
    for (const Interaction &ia : entry.second.members)
      if (detail::block_row_covers(b, r, ia)) {
        in_second = true;
        break;
      }
    if (in_first != in_second) ++delta;
  }
  return delta;
}

// Number of NonLoc entries the block settles: entry (D1, D2, ℓ) is settled
// when the block alone separates the pair by at least λ − ℓ.
inline int fitness(const Block &b, const std::vector<NonLocEntry> &nonloc,
                   const Params &p) {
  int fit = 0;
  for (const NonLocEntry &e : nonloc)
    if (block_separation(b, e) >= p.redundancy - e.residual) ++fit;
  return fit;
}

// Precomputed evaluator for the hot loop: member interactions are deduplicated
// across entries, each gets a per-row coverage bitmask, and an entry's block
// separation is a popcount of XORed masks.  Results equal `fitness` exactly.
class FitnessEvaluator {
public:
  FitnessEvaluator(const std::vector<NonLocEntry> &nonloc, const Params &p)
      : lambda_(p.redundancy) {
    std::map<Interaction, int> index;
    auto intern = [&](const DSet &d, std::vector<int> &out) {
      for (const Interaction &ia : d.members) {
        auto [it, fresh] = index.try_emplace(ia, static_cast<int>(interactions_.size()));
        if (fresh) interactions_.push_back(ia);
        out.push_back(it->second);
      }
    };
    entries_.reserve(nonloc.size());
    for (const NonLocEntry &e : nonloc) {
      Entry entry;
      entry.need = lambda_ - e.residual;
      intern(e.first, entry.first_ids);
      intern(e.second, entry.second_ids);
      entries_.push_back(std::move(entry));
    }
  }

  int target() const { return static_cast<int>(entries_.size()); }

  int evaluate(const Block &b) const {
    const std::size_t words = (static_cast<std::size_t>(b.rows) + 63) / 64;
    masks_.assign(interactions_.size() * words, 0);
    for (std::size_t id = 0; id < interactions_.size(); ++id)
      for (int r = 0; r < b.rows; ++r)
        if (detail::block_row_covers(b, r, interactions_[id]))
          masks_[id * words + r / 64] |= std::uint64_t{1} << (r % 64);

    scratch_a_.assign(words, 0);
    scratch_b_.assign(words, 0);
    int fit = 0;
    for (const Entry &e : entries_) {
      std::fill(scratch_a_.begin(), scratch_a_.end(), 0);
      std::fill(scratch_b_.begin(), scratch_b_.end(), 0);
      for (int id : e.first_ids)
        for (std::size_t w = 0; w < words; ++w) scratch_a_[w] |= masks_[id * words + w];
      for (int id : e.second_ids)
        for (std::size_t w = 0; w < words; ++w) scratch_b_[w] |= masks_[id * words + w];
      int delta = 0;
      for (std::size_t w = 0; w < words; ++w)
        delta += std::popcount(scratch_a_[w] ^ scratch_b_[w]);
      if (delta >= e.need) ++fit;
    }
    return fit;
  }

private:
  struct Entry {
    std::vector<int> first_ids;
    std::vector<int> second_ids;
    int need = 1;
  };

  int lambda_;
  std::vector<Interaction> interactions_;
  std::vector<Entry> entries_;
  mutable std::vector<std::uint64_t> masks_;
  mutable std::vector<std::uint64_t> scratch_a_;
  mutable std::vector<std::uint64_t> scratch_b_;
};

// Exactly one of three edits, chosen uniformly: redraw a whole row, redraw a
// whole column, or redraw a single entry (which may redraw the same value).
inline Block mutate(Block b, int levels, Rng &rng) {
  assert(b.rows > 0 && b.cols > 0);
  const std::uint64_t variant = uniform_below(rng, 3);
  if (variant == 0) {
    const int r = static_cast<int>(uniform_below(rng, b.rows));
    for (int c = 0; c < b.cols; ++c) b.at(r, c) = random_level(rng, levels);
  } else if (variant == 1) {
    const int c = static_cast<int>(uniform_below(rng, b.cols));
    for (int r = 0; r < b.rows; ++r) b.at(r, c) = random_level(rng, levels);
  } else {
    const int r = static_cast<int>(uniform_below(rng, b.rows));
    const int c = static_cast<int>(uniform_below(rng, b.cols));
    b.at(r, c) = random_level(rng, levels);
  }
  return b;
}

// Row-wise 1-point or 2-point crossover, chosen uniformly.  Cuts may fall on
// the boundaries, so a child can equal one parent.
inline Block crossover(const Block &a, const Block &b, Rng &rng) {
  assert(a.rows == b.rows && a.cols == b.cols);
  Block child(a.rows, a.cols);
  const std::uint64_t variant = uniform_below(rng, 2);
  int from_b_begin, from_b_end;
  if (variant == 0) {
    const int cut = static_cast<int>(uniform_below(rng, a.rows + 1));
    from_b_begin = cut;
    from_b_end = a.rows;
  } else {
    int c1 = static_cast<int>(uniform_below(rng, a.rows + 1));
    int c2 = static_cast<int>(uniform_below(rng, a.rows + 1));
    if (c1 > c2) std::swap(c1, c2);
    from_b_begin = c1;
    from_b_end = c2;
  }
  for (int r = 0; r < a.rows; ++r) {
    const Block &src = (r >= from_b_begin && r < from_b_end) ? b : a;
    for (int c = 0; c < a.cols; ++c) child.at(r, c) = src.at(r, c);
  }
  return child;
}

struct EvolveResult {
  bool success = false;
  Block block;      // the winning block, or the fittest block on failure
  int best_fitness = 0;
  int generations_run = 0;
  std::vector<Block> population; // final population, fittest first
};

using GenerationCallback = std::function<void(int generation, int best, double mean)>;

// One GA run at a fixed block height.  Warm-start blocks (from another
// height) are truncated or padded with fresh random rows; the rest of the
// population starts fully random.  Survivor selection keeps the top half;
// offspring come from uniformly chosen survivors with independent crossover
// and mutation coin flips.  Stops as soon as any individual settles every
// entry.
inline EvolveResult evolve(const std::vector<NonLocEntry> &nonloc,
                           const Params &p, const GaParams &ga, int n_prime,
                           const std::vector<Block> &warm_start = {},
                           const Deadline &deadline = Deadline::never(),
                           const GenerationCallback &on_generation = {}) {
  validate(p);
  validate(ga);
  if (n_prime < 1) throw std::invalid_argument("n_prime must be at least 1");
  if (nonloc.empty()) throw std::invalid_argument("nonloc must be nonempty");

  const FitnessEvaluator eval(nonloc, p);
  const int target = eval.target();
  Rng rng(ga.seed);

  auto fresh_row = [&](Block &b, int r) {
    for (int c = 0; c < b.cols; ++c) b.at(r, c) = random_level(rng, p.levels);
  };

  std::vector<Individual> pop;
  pop.reserve(ga.population_size);
  for (int i = 0; i < ga.population_size; ++i) {
    Block b(n_prime, p.factors);
    if (i < static_cast<int>(warm_start.size())) {
      const Block &w = warm_start[i];
      const int keep = std::min(w.rows, n_prime);
      for (int r = 0; r < keep; ++r)
        for (int c = 0; c < p.factors; ++c) b.at(r, c) = w.at(r, c);
      for (int r = keep; r < n_prime; ++r) fresh_row(b, r);
    } else {
      for (int r = 0; r < n_prime; ++r) fresh_row(b, r);
    }
    const int fit = eval.evaluate(b);
    pop.push_back({std::move(b), fit});
  }

  EvolveResult result;
  const int half = ga.population_size / 2;
  for (int gen = 0;; ++gen) {
    int best = 0;
    long sum = 0;
    int best_index = 0;
    for (int i = 0; i < ga.population_size; ++i) {
      sum += pop[i].fitness;
      if (pop[i].fitness > best) {
        best = pop[i].fitness;
        best_index = i;
      }
    }
    if (on_generation)
      on_generation(gen, best, static_cast<double>(sum) / ga.population_size);
    result.best_fitness = best;
    result.generations_run = gen;
    if (best == target) {
      result.success = true;
      result.block = pop[best_index].block;
      break;
    }
    if (gen == ga.generations) break;
    deadline.check("genetic algorithm");

    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual &x, const Individual &y) {
                       return x.fitness > y.fitness;
                     });
    pop.resize(half);
    while (static_cast<int>(pop.size()) < ga.population_size) {
      Block child;
      if (uniform_unit(rng) < ga.crossover_rate) {
        const Individual &pa = pop[uniform_below(rng, half)];
        const Individual &pb = pop[uniform_below(rng, half)];
        child = crossover(pa.block, pb.block, rng);
      } else {
        child = pop[uniform_below(rng, half)].block;
      }
      if (uniform_unit(rng) < ga.mutation_rate)
        child = mutate(std::move(child), p.levels, rng);
      const int fit = eval.evaluate(child);
      pop.push_back({std::move(child), fit});
    }
  }

  std::stable_sort(pop.begin(), pop.end(),
                   [](const Individual &x, const Individual &y) {
                     return x.fitness > y.fitness;
                   });
  if (!result.success) result.block = pop.front().block;
  result.population.reserve(pop.size());
  for (Individual &ind : pop) result.population.push_back(std::move(ind.block));
  return result;
}

} // namespace locarray
