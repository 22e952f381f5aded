#pragma once

#include <string>

#include "locarray/array_io.hpp"
#include "locarray/test_array.hpp"

namespace test_helpers {

inline std::string fixture_path(const std::string &name) {
  return std::string(LOCARRAY_FIXTURE_DIR) + "/" + name;
}

inline locarray::TestArray load_fixture(const std::string &name) {
  return locarray::read_array_file(fixture_path(name));
}

// The worked 6x4 covering array example, 0-based levels.
inline locarray::TestArray example_ca() { return load_fixture("ca_n6_k4_v2.txt"); }

// The worked 7x4 locating array.
inline locarray::TestArray example_la() { return load_fixture("la_n7_k4_v2.txt"); }

// The row-optimal 7x15 covering array with the 165/195/60 coverage profile.
inline locarray::TestArray example_ca15() { return load_fixture("ca_n7_k15_v2.txt"); }

} // namespace test_helpers
