#pragma once

#include <gmpxx.h>

#include "locarray/interaction.hpp"
#include "locarray/params.hpp"

namespace locarray {

// Exact closed-form counts.  These routinely exceed 64 bits (pair counts pass
// 10^11 even at moderate parameters), hence arbitrary precision throughout.

// C(k,t) * v^t
inline mpz_class interaction_count(const Params &p) {
  mpz_class combos;
  mpz_bin_uiui(combos.get_mpz_t(), static_cast<unsigned long>(p.factors),
               static_cast<unsigned long>(p.strength));
  mpz_class vt;
  mpz_ui_pow_ui(vt.get_mpz_t(), static_cast<unsigned long>(p.levels),
                static_cast<unsigned long>(p.strength));
  return combos * vt;
}

// Number of candidate sets: C(S1, d) in exact mode, sum of C(S1, i) for
// i = 1..d in at-most mode.
inline mpz_class dset_count(const Params &p, DSetMode mode = DSetMode::at_most) {
  const mpz_class s1 = interaction_count(p);
  mpz_class total = 0;
  const int lo = (mode == DSetMode::exact) ? p.max_faults : 1;
  for (int i = lo; i <= p.max_faults; ++i) {
    mpz_class c;
    mpz_bin_ui(c.get_mpz_t(), s1.get_mpz_t(), static_cast<unsigned long>(i));
    total += c;
  }
  return total;
}

// Number of unordered pairs of candidate sets that a full scan would compare.
inline mpz_class count_pairs(const Params &p, DSetMode mode = DSetMode::exact) {
  const mpz_class s = dset_count(p, mode);
  return s * (s - 1) / 2;
}

} // namespace locarray
