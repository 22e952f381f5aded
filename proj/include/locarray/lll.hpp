#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "locarray/coverage.hpp"
#include "locarray/deadline.hpp"
#include "locarray/interaction.hpp"
#include "locarray/params.hpp"
#include "locarray/rng.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

struct LllConfig {
  std::optional<int> initial_rows; // overrides the derived row count
  double growth_constant = 1.0;    // multiplier on the v^t·ln(...) term
  std::uint64_t max_resamples = 100000;
  std::uint64_t seed = 0;
};

inline void validate(const LllConfig &c) {
  if (c.initial_rows && *c.initial_rows < 1)
    throw std::invalid_argument("initial_rows must be at least 1");
  if (!(c.growth_constant > 0.0))
    throw std::invalid_argument("growth_constant must be positive");
  if (c.max_resamples < 1)
    throw std::invalid_argument("max_resamples must be at least 1");
}

// Row count for the random initial array:
//   ceil(growth_constant · v^t · ln(C(k,t)·v^t)) + λ·v^t.
// The logarithmic form follows the asymptotic v^t·(t ln k + ...) shape; the
// constant is calibrated so (k=10..16, v=3, t=2, λ=2) lands in the low 70s
// to low 80s.
inline int lll_default_rows(const Params &p, double growth_constant = 1.0) {
  const double vt = std::pow(static_cast<double>(p.levels), p.strength);
  const double interactions =
      static_cast<double>(binomial_u64(p.factors, p.strength)) * vt;
  const double base = growth_constant * vt * std::log(interactions);
  return static_cast<int>(std::ceil(base)) + p.redundancy * static_cast<int>(vt);
}

// Thrown when the resampling loop gives up; carries the best coverage
// evidence so the caller can tell "rows too few" from "unlucky run".
class LllFailure : public std::runtime_error {
public:
  LllFailure(std::string what, CoverageReport report, std::uint64_t resamples)
      : std::runtime_error(std::move(what)), report(std::move(report)),
        resamples(resamples) {}

  CoverageReport report;
  std::uint64_t resamples;
};

struct LllResult {
  TestArray array;
  std::uint64_t resamples = 0;
};

// Moser–Tardos style construction: draw an N×k array uniformly at random and,
// while some interaction is covered fewer than lambda times, redraw all t
// columns of the first deficient interaction (canonical order).  Rows are
// never added.  Cells are drawn row-major on the initial fill and
// column-by-column (ascending factor, then ascending row) on each resample,
// so a fixed seed reproduces the array exactly.
inline LllResult generate_lll(const Params &p, const LllConfig &config = {},
                              const Deadline &deadline = Deadline::never()) {
  validate(p);
  validate(config);
  const int n = config.initial_rows
                    ? *config.initial_rows
                    : lll_default_rows(p, config.growth_constant);
  Rng rng(config.seed);

  TestArray a(p, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < p.factors; ++c) a.at(r, c) = random_level(rng, p.levels);

  const std::uint64_t min_rows =
      checked_mul(static_cast<std::uint64_t>(p.redundancy),
                  pow_u64(p.levels, static_cast<unsigned>(p.strength)));
  if (static_cast<std::uint64_t>(n) < min_rows)
    throw LllFailure("initial_rows " + std::to_string(n) +
                         " is below the lambda*v^t floor of " +
                         std::to_string(min_rows) + " rows",
                     verify_ca(a, p.strength, p.redundancy), 0);

  std::uint64_t resamples = 0;
  while (true) {
    deadline.check("covering-array generation (lll)");
    const auto deficient = first_deficient(a, p.strength, p.redundancy);
    if (!deficient) return {std::move(a), resamples};
    if (resamples >= config.max_resamples)
      throw LllFailure("no covering array after " + std::to_string(resamples) +
                           " resamples (initial_rows may be too small)",
                       verify_ca(a, p.strength, p.redundancy), resamples);
    for (const FactorLevel &fl : deficient->pairs)
      for (int r = 0; r < n; ++r) a.at(r, fl.factor) = random_level(rng, p.levels);
    ++resamples;
  }
}

} // namespace locarray
