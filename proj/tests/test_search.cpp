#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "locarray/search.hpp"
#include "locarray/verify_la.hpp"

using namespace locarray;
using test_helpers::example_ca;

namespace {

std::vector<NonLocEntry> example_nonloc(int lambda) {
  const Params p = make_params(4, 2, 2, 1, lambda);
  return find_nonlocating(build_rowmap(example_ca(), p), lambda);
}

} // namespace

TEST_CASE("empty input succeeds with an empty block") {
  const Params p = make_params(4, 2, 2, 1, 1);
  const SearchResult r = search_rows({}, p, GaParams{});
  CHECK(r.success);
  CHECK(r.block.rows == 0);
  CHECK(r.block.cols == 4);
  CHECK(r.target == 0);
  CHECK(r.evolve_calls == 0);
  CHECK(r.trace.empty());
}

TEST_CASE("the found block settles the example and is minimal per the trace") {
  const auto nonloc = example_nonloc(1);
  REQUIRE_FALSE(nonloc.empty());
  const Params p = make_params(4, 2, 2, 1, 1);
  GaParams ga;
  ga.seed = 11;

  std::vector<SearchPhase> phases;
  const SearchResult r = search_rows(nonloc, p, ga, {}, Deadline::never(),
                                     [&](const SearchPhase &ph) { phases.push_back(ph); });
  REQUIRE(r.success);
  CHECK(r.target == static_cast<int>(nonloc.size()));
  CHECK(r.best_fitness == r.target);
  CHECK(fitness(r.block, nonloc, p) == r.target);
  CHECK(r.evolve_calls == r.trace.size());
  REQUIRE(phases.size() == r.trace.size());

  // The returned block's height is the smallest successful height seen, and
  // every smaller attempted height failed.
  int smallest_success = std::numeric_limits<int>::max();
  for (const SearchPhase &ph : r.trace)
    if (ph.success) smallest_success = std::min(smallest_success, ph.height);
  CHECK(r.block.rows == smallest_success);
  for (const SearchPhase &ph : r.trace)
    if (ph.height < smallest_success) CHECK_FALSE(ph.success);

  // Appending the block makes the array locating.
  TestArray extended = example_ca();
  for (int row = 0; row < r.block.rows; ++row) {
    std::vector<int> cells(r.block.cols);
    for (int c = 0; c < r.block.cols; ++c) cells[c] = r.block.at(row, c);
    extended.append_row(cells);
  }
  CHECK(verify_la(extended, p).locating);
}

TEST_CASE("search is deterministic for a fixed seed") {
  const auto nonloc = example_nonloc(2);
  REQUIRE_FALSE(nonloc.empty());
  const Params p = make_params(4, 2, 2, 1, 2);
  GaParams ga;
  ga.population_size = 30;
  ga.generations = 30;
  ga.seed = 9;
  const SearchResult r1 = search_rows(nonloc, p, ga);
  const SearchResult r2 = search_rows(nonloc, p, ga);
  CHECK(r1.success == r2.success);
  CHECK(r1.block == r2.block);
  CHECK(r1.evolve_calls == r2.evolve_calls);
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].height == r2.trace[i].height);
    CHECK(r1.trace[i].success == r2.trace[i].success);
    CHECK(r1.trace[i].best_fitness == r2.trace[i].best_fitness);
  }
}

TEST_CASE("the initial height respects the residual lower bound") {
  // Entries with residual 0 at lambda 3 force height >= 3; the literal rule
  // starts from max(ell) = 0 -> 1 instead.
  const auto nonloc = example_nonloc(3);
  REQUIRE_FALSE(nonloc.empty());
  int max_need = 0, max_ell = 0;
  for (const NonLocEntry &e : nonloc) {
    max_need = std::max(max_need, 3 - e.residual);
    max_ell = std::max(max_ell, e.residual);
  }
  REQUIRE(max_need > std::max(max_ell, 1)); // the two rules genuinely differ

  const Params p = make_params(4, 2, 2, 1, 3);
  GaParams ga;
  ga.population_size = 20;
  ga.generations = 10;

  const SearchResult bound = search_rows(nonloc, p, ga);
  REQUIRE_FALSE(bound.trace.empty());
  CHECK(bound.trace.front().height == max_need);

  SearchOptions literal;
  literal.literal_initial_height = true;
  const SearchResult lit = search_rows(nonloc, p, ga, literal);
  REQUIRE_FALSE(lit.trace.empty());
  CHECK(lit.trace.front().height == std::max(max_ell, 1));

  // No successful height below the provable bound can ever be reported.
  if (bound.success) CHECK(bound.block.rows >= max_need);
}

TEST_CASE("an exhausted budget reports failure with a partial block") {
  const auto nonloc = example_nonloc(2);
  REQUIRE_FALSE(nonloc.empty());
  const Params p = make_params(4, 2, 2, 1, 2);
  GaParams ga;
  ga.population_size = 4;
  ga.generations = 1; // too weak to succeed
  ga.seed = 2;
  SearchOptions opts;
  opts.max_evolve_calls = 3;

  const SearchResult r = search_rows(nonloc, p, ga, opts);
  CHECK_FALSE(r.success);
  CHECK(r.evolve_calls == 3);
  CHECK(r.trace.size() == 3);
  CHECK(r.block.rows > 0); // best partial is still handed back
  CHECK(r.best_fitness < r.target);
}

TEST_CASE("per-generation callbacks flow through the search") {
  const auto nonloc = example_nonloc(1);
  const Params p = make_params(4, 2, 2, 1, 1);
  GaParams ga;
  ga.population_size = 10;
  ga.generations = 5;
  SearchOptions opts;
  int calls = 0;
  opts.on_generation = [&](int, int, double) { ++calls; };
  search_rows(nonloc, p, ga, opts);
  CHECK(calls > 0);
}
