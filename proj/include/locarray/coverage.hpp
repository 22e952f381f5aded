#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "locarray/deadline.hpp"
#include "locarray/interaction.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

// Per-interaction coverage census of an array.
struct CoverageReport {
  int min_coverage = 0;
  // interactions covered fewer than lambda times, canonical order
  std::vector<std::pair<Interaction, int>> deficient;
  // coverage count -> number of interactions with that count
  std::map<int, std::uint64_t> histogram;

  bool covering() const { return deficient.empty(); }
};

namespace detail {

// Index of a row's level tuple on the given factor combination, base v.
inline std::uint64_t tuple_index(const TestArray &a, int row,
                                 const std::vector<int> &combo, int levels) {
  std::uint64_t idx = 0;
  for (int f : combo) idx = idx * levels + static_cast<std::uint64_t>(a.at(row, f));
  return idx;
}

inline Interaction interaction_from_tuple(const std::vector<int> &combo,
                                          std::uint64_t tuple, int levels) {
  Interaction ia;
  ia.pairs.resize(combo.size());
  for (int i = static_cast<int>(combo.size()) - 1; i >= 0; --i) {
    ia.pairs[i].factor = combo[i];
    ia.pairs[i].level = static_cast<int>(tuple % levels);
    tuple /= levels;
  }
  return ia;
}

} // namespace detail

// Exhaustive coverage check: one pass per factor combination, independent of
// how the array was generated.
inline CoverageReport verify_ca(const TestArray &a, int strength, int lambda,
                                const Deadline &deadline = Deadline::never()) {
  const Params &p = a.params();
  if (strength < 1 || strength > p.factors)
    throw std::invalid_argument("strength out of range for this array");

  CoverageReport report;
  report.min_coverage = a.rows() + 1; // above any possible count

  const std::uint64_t vt = pow_u64(p.levels, static_cast<unsigned>(strength));
  std::vector<int> combo(strength);
  for (int i = 0; i < strength; ++i) combo[i] = i;
  std::vector<std::uint32_t> counts(vt);

  while (true) {
    deadline.check("coverage verification");
    std::fill(counts.begin(), counts.end(), 0);
    for (int r = 0; r < a.rows(); ++r)
      ++counts[detail::tuple_index(a, r, combo, p.levels)];
    for (std::uint64_t tup = 0; tup < vt; ++tup) {
      const int c = static_cast<int>(counts[tup]);
      ++report.histogram[c];
      if (c < report.min_coverage) report.min_coverage = c;
      if (c < lambda)
        report.deficient.emplace_back(
            detail::interaction_from_tuple(combo, tup, p.levels), c);
    }
    if (!InteractionCursor::next_combination(combo, p.factors)) break;
  }
  return report;
}

inline CoverageReport verify_ca(const TestArray &a,
                                const Deadline &deadline = Deadline::never()) {
  return verify_ca(a, a.params().strength, a.params().redundancy, deadline);
}

// First interaction (canonical order) covered fewer than lambda times, if any.
// Cheaper than a full report when only the existence of a gap matters.
inline std::optional<Interaction> first_deficient(const TestArray &a, int strength,
                                                  int lambda) {
  const Params &p = a.params();
  const std::uint64_t vt = pow_u64(p.levels, static_cast<unsigned>(strength));
  std::vector<int> combo(strength);
  for (int i = 0; i < strength; ++i) combo[i] = i;
  std::vector<std::uint32_t> counts(vt);

  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int r = 0; r < a.rows(); ++r)
      ++counts[detail::tuple_index(a, r, combo, p.levels)];
    for (std::uint64_t tup = 0; tup < vt; ++tup) {
      if (static_cast<int>(counts[tup]) < lambda)
        return detail::interaction_from_tuple(combo, tup, p.levels);
    }
    if (!InteractionCursor::next_combination(combo, p.factors)) break;
  }
  return std::nullopt;
}

} // namespace locarray
