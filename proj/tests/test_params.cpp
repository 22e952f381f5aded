#include <catch2/catch_amalgamated.hpp>

#include "locarray/params.hpp"

using namespace locarray;

TEST_CASE("valid parameters pass validation") {
  CHECK_NOTHROW(validate(Params{4, 2, 2, 1, 1}));
  CHECK_NOTHROW(validate(Params{10, 3, 2, 2, 2}));
  CHECK_NOTHROW(validate(Params{2, 2, 2, 1, 5}));
  CHECK_NOTHROW(validate(Params{3, 2, 3, 1, 1})); // t == k is allowed
}

TEST_CASE("each invalid field is rejected") {
  CHECK_THROWS_AS(validate(Params{0, 2, 2, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Params{4, 1, 2, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Params{4, 2, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Params{4, 2, 5, 1, 1}), std::invalid_argument); // t > k
  CHECK_THROWS_AS(validate(Params{4, 2, 2, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Params{4, 2, 2, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Params{-3, 2, 2, 1, 1}), std::invalid_argument);
}

TEST_CASE("faulty-set size at or above the level count is a soft warning") {
  CHECK(warnings(Params{4, 3, 2, 2, 1}).empty());
  CHECK(warnings(Params{4, 2, 2, 2, 1}).size() == 1);
  CHECK(warnings(Params{4, 2, 2, 3, 1}).size() == 1);

  CHECK_NOTHROW(make_params(4, 2, 2, 2, 1));
  CHECK_THROWS_AS(make_params(4, 2, 2, 2, 1, /*strict=*/true),
                  std::invalid_argument);
  CHECK_NOTHROW(make_params(4, 3, 2, 2, 1, /*strict=*/true));
}

TEST_CASE("make_params fills every field") {
  const Params p = make_params(10, 3, 2, 2, 4);
  CHECK(p.factors == 10);
  CHECK(p.levels == 3);
  CHECK(p.strength == 2);
  CHECK(p.max_faults == 2);
  CHECK(p.redundancy == 4);
}
