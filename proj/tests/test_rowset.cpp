#include <algorithm>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "locarray/rng.hpp"
#include "locarray/rowset.hpp"

using namespace locarray;

namespace {

RowSet random_rowset(Rng &rng, int universe) {
  std::set<std::int32_t> s;
  const std::uint64_t n = uniform_below(rng, universe + 1);
  for (std::uint64_t i = 0; i < n; ++i)
    s.insert(static_cast<std::int32_t>(uniform_below(rng, universe)));
  return RowSet(s.begin(), s.end());
}

// Oracle built on std::set algorithms instead of hand-rolled merges.
int oracle_sym_diff(const RowSet &a, const RowSet &b) {
  RowSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return static_cast<int>(out.size());
}

} // namespace

TEST_CASE("canonicity check accepts sorted unique sequences only") {
  CHECK(rowset_is_canonical({}));
  CHECK(rowset_is_canonical({3}));
  CHECK(rowset_is_canonical({0, 2, 5}));
  CHECK_FALSE(rowset_is_canonical({0, 0}));
  CHECK_FALSE(rowset_is_canonical({2, 1}));
}

TEST_CASE("union and symmetric difference match std algorithms on random sets") {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const RowSet a = random_rowset(rng, 40);
    const RowSet b = random_rowset(rng, 40);

    RowSet expected_union;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(expected_union));
    CHECK(rowset_union(a, b) == expected_union);

    const int delta = oracle_sym_diff(a, b);
    CHECK(sym_diff_size(a, b) == delta);

    for (int cap : {1, 2, 3, 80}) {
      CHECK(sym_diff_size_capped(a, b, cap) == std::min(delta, cap));
    }
  }
}

TEST_CASE("symmetric difference basics") {
  auto delta = [](const RowSet &a, const RowSet &b) {
    return sym_diff_size(a, b);
  };
  CHECK(delta({}, {}) == 0);
  CHECK(delta({1, 2}, {1, 2}) == 0);
  CHECK(delta({1, 2}, {3, 4}) == 4);
  CHECK(delta({1, 2, 3}, {2}) == 2);
  CHECK(delta({}, {7}) == 1);
}

TEST_CASE("rowset rendering is 1-based") {
  CHECK(rowset_to_string({0, 3, 5}) == "{1,4,6}");
  CHECK(rowset_to_string({}) == "{}");
}

TEST_CASE("uniform_below stays in range and hits every value") {
  Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t x = uniform_below(rng, 7);
    CHECK(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("uniform_unit stays in [0,1) and mix_seed separates streams") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double u = uniform_unit(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(0, 0) != mix_seed(1, 0));
  CHECK(mix_seed(5, 2) == mix_seed(5, 2));
}
