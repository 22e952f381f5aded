#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace locarray {

// Problem parameters shared by every stage.
//
//   factors     k  - number of columns / configurable components
//   levels      v  - values each factor can take (same for all factors)
//   strength    t  - interaction size that must be covered
//   max_faults  d  - largest candidate set of faulty interactions
//   redundancy  λ  - minimum coverage per interaction, and the required
//                    row-set separation between candidate sets
struct Params {
  int factors = 0;
  int levels = 0;
  int strength = 0;
  int max_faults = 1;
  int redundancy = 1;

  bool operator==(const Params &) const = default;
};

// Hard validation; throws std::invalid_argument on violations.
inline void validate(const Params &p) {
  if (p.factors < 1) throw std::invalid_argument("factor count must be >= 1");
  if (p.levels < 2) throw std::invalid_argument("levels per factor must be >= 2");
  if (p.strength < 1) throw std::invalid_argument("strength must be >= 1");
  if (p.strength > p.factors)
    throw std::invalid_argument("strength " + std::to_string(p.strength) +
                                " exceeds factor count " + std::to_string(p.factors));
  if (p.max_faults < 1) throw std::invalid_argument("max faulty-set size must be >= 1");
  if (p.redundancy < 1) throw std::invalid_argument("redundancy must be >= 1");
}

// Soft checks: conditions under which construction is still attempted but a
// locating array may not exist.
inline std::vector<std::string> warnings(const Params &p) {
  std::vector<std::string> out;
  if (p.max_faults >= p.levels) {
    out.push_back("a locating array may not exist when the faulty-set size (" +
                  std::to_string(p.max_faults) + ") is >= the level count (" +
                  std::to_string(p.levels) + ")");
  }
  return out;
}

// Validates hard constraints; in strict mode the soft warnings are errors too.
inline Params make_params(int factors, int levels, int strength, int max_faults,
                          int redundancy, bool strict = false) {
  Params p{factors, levels, strength, max_faults, redundancy};
  validate(p);
  if (strict) {
    for (const auto &w : warnings(p)) throw std::invalid_argument(w);
  }
  return p;
}

} // namespace locarray
