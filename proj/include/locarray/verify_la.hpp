#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locarray/coverage.hpp"
#include "locarray/deadline.hpp"
#include "locarray/nonloc.hpp"
#include "locarray/params.hpp"
#include "locarray/rowmap.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

struct LaVerdict {
  bool locating = false;
  // A non-locating pair, when one exists.
  std::optional<NonLocEntry> witness;
  // An interaction covered fewer than lambda times, when coverage fails.
  std::optional<std::pair<Interaction, int>> coverage_witness;
  std::vector<std::string> warnings;
};

// Full locating-array check: lambda-coverage plus "every pair of distinct
// d̄-sets separated by at least lambda rows".  With `brute` the pair scan uses
// the all-pairs oracle instead of the RowMap path, giving a verification run
// that shares nothing with the partition shortcuts.
inline LaVerdict verify_la(const TestArray &a, const Params &p,
                           DSetMode mode = DSetMode::at_most, bool brute = false,
                           int threads = 1,
                           std::uint64_t pair_cap = kDefaultPairCap,
                           const Deadline &deadline = Deadline::never()) {
  validate(p);
  LaVerdict verdict;
  verdict.warnings = warnings(p);

  const CoverageReport coverage = verify_ca(a, p.strength, p.redundancy, deadline);
  if (!coverage.covering())
    verdict.coverage_witness = coverage.deficient.front();

  const std::vector<NonLocEntry> nonloc =
      brute ? brute_force_nonlocating(a, p, mode, pair_cap, deadline)
            : find_nonlocating(build_rowmap(a, p, mode, deadline), p.redundancy,
                               threads, deadline);
  if (!nonloc.empty()) verdict.witness = nonloc.front();

  verdict.locating = coverage.covering() && nonloc.empty();
  return verdict;
}

} // namespace locarray
