#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "locarray/counting.hpp"
#include "locarray/deadline.hpp"
#include "locarray/interaction.hpp"
#include "locarray/rowmap.hpp"
#include "locarray/rowset.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

// A pair of d̄-sets whose row-sets differ in fewer than lambda rows, together
// with the current separation ℓ.
struct NonLocEntry {
  DSet first;
  DSet second;
  int residual = 0; // ℓ = |ρ(D1) Δ ρ(D2)|, always < lambda

  friend bool operator==(const NonLocEntry &a, const NonLocEntry &b) {
    return a.first == b.first && a.second == b.second && a.residual == b.residual;
  }
  friend bool operator<(const NonLocEntry &a, const NonLocEntry &b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  }
};

class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline NonLocEntry make_entry(const RowMapEntry &x, const RowMapEntry &y, int ell) {
  if (y.dset < x.dset) return {y.dset, x.dset, ell};
  return {x.dset, y.dset, ell};
}

// Scan partner entries of `mine` inside `others`, starting at `from`.
// `gap` = difference of the bucket keys (0 for same-bucket scans).  When
// cut_ok, entries whose smallest row exceeds mine can be skipped wholesale:
// min(R2) > min(R1) puts min(R1) in R1\R2, so |R2\R1| >= gap+1 and
// Δ >= gap+2 >= lambda.  Buckets are sorted by row-set, so the first such
// entry ends the scan.
inline void scan_against(const RowMapEntry &mine,
                         const std::vector<RowMapEntry> &others, std::size_t from,
                         int gap, int lambda, std::vector<NonLocEntry> &out) {
  const bool cut_ok = !mine.rows.empty() && gap + 2 >= lambda;
  const std::int32_t my_min = mine.rows.empty() ? 0 : mine.rows.front();
  for (std::size_t j = from; j < others.size(); ++j) {
    const RowMapEntry &other = others[j];
    if (cut_ok && !other.rows.empty() && other.rows.front() > my_min) break;
    const int delta = sym_diff_size_capped(mine.rows, other.rows, lambda);
    if (delta < lambda) out.push_back(make_entry(mine, other, delta));
  }
}

} // namespace detail

// Alg.-4 style scan over the RowMap: bucket pairs whose keys differ by at
// least lambda are skipped outright (||R1|-|R2|| <= |R1 Δ R2|); the rest are
// compared pairwise with capped merges plus the min-row cut above.  Output is
// canonically sorted, so it does not depend on `threads`.
inline std::vector<NonLocEntry>
find_nonlocating(const RowMap &map, int lambda, int threads = 1,
                 const Deadline &deadline = Deadline::never()) {
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");

  std::vector<int> keys;
  std::vector<const std::vector<RowMapEntry> *> buckets;
  keys.reserve(map.buckets.size());
  for (const auto &[key, entries] : map.buckets) {
    keys.push_back(key);
    buckets.push_back(&entries);
  }

  // One work unit per left-hand entry keeps the split deterministic and
  // fine-grained enough to balance.
  struct Unit {
    std::size_t bucket;
    std::size_t index;
  };
  std::vector<Unit> units;
  for (std::size_t b = 0; b < buckets.size(); ++b)
    for (std::size_t i = 0; i < buckets[b]->size(); ++i) units.push_back({b, i});

  auto run_unit = [&](const Unit &u, std::vector<NonLocEntry> &out) {
    const RowMapEntry &mine = (*buckets[u.bucket])[u.index];
    detail::scan_against(mine, *buckets[u.bucket], u.index + 1, 0, lambda, out);
    for (std::size_t b = u.bucket + 1; b < buckets.size(); ++b) {
      const int gap = keys[b] - keys[u.bucket];
      if (gap >= lambda) break; // keys ascend, the gap only grows
      detail::scan_against(mine, *buckets[b], 0, gap, lambda, out);
    }
  };

  std::vector<NonLocEntry> result;
  if (threads <= 1 || units.size() < 2) {
    for (std::size_t u = 0; u < units.size(); ++u) {
      if ((u & 0x3F) == 0) deadline.check("non-locating scan");
      run_unit(units[u], result);
    }
  } else {
    const int nthreads = std::min<int>(threads, static_cast<int>(units.size()));
    std::vector<std::vector<NonLocEntry>> partial(nthreads);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t u = w; u < units.size(); u += nthreads) {
            if (failed.load(std::memory_order_relaxed)) return;
            if ((u & 0x3F) == 0) deadline.check("non-locating scan");
            run_unit(units[u], partial[w]);
          }
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      });
    }
    for (auto &th : pool) th.join();
    if (error) std::rethrow_exception(error);
    for (auto &part : partial)
      result.insert(result.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
  }

  std::sort(result.begin(), result.end());
  return result;
}

inline constexpr std::uint64_t kDefaultPairCap = 50'000'000;

// Testing oracle: enumerate every d̄-set, hold its row membership as a bitmask
// per row, and compare all pairs directly — no partition, no key skipping, no
// early exits.  Refuses outright when the pair count exceeds `pair_cap`.
inline std::vector<NonLocEntry>
brute_force_nonlocating(const TestArray &a, const Params &p,
                        DSetMode mode = DSetMode::at_most,
                        std::uint64_t pair_cap = kDefaultPairCap,
                        const Deadline &deadline = Deadline::never()) {
  validate(p);
  const mpz_class sets = dset_count(p, mode);
  const mpz_class pairs = sets * (sets - 1) / 2;
  if (pairs > mpz_class(static_cast<unsigned long>(pair_cap)))
    throw BudgetError("brute-force pair count " + pairs.get_str() +
                      " exceeds the cap of " + std::to_string(pair_cap));

  const int lambda = p.redundancy;
  const std::size_t words = (static_cast<std::size_t>(a.rows()) + 63) / 64;

  RhoTable table = compute_all_rho(a, p, deadline);
  std::vector<std::uint64_t> masks_by_rank(table.by_rank.size() * words, 0);
  for (std::size_t rank = 0; rank < table.by_rank.size(); ++rank)
    for (std::int32_t r : table.by_rank[rank])
      masks_by_rank[rank * words + r / 64] |= std::uint64_t{1} << (r % 64);

  std::vector<DSet> dsets;
  std::vector<std::uint64_t> masks; // words per d-set, concatenated
  for (DSetCursor cur(p, mode); !cur.done(); cur.advance()) {
    dsets.push_back(cur.current());
    const std::size_t base = masks.size();
    masks.insert(masks.end(), words, 0);
    for (std::uint64_t id : cur.current_ids())
      for (std::size_t w = 0; w < words; ++w)
        masks[base + w] |= masks_by_rank[id * words + w];
  }

  std::vector<NonLocEntry> out;
  for (std::size_t i = 0; i < dsets.size(); ++i) {
    deadline.check("brute-force non-locating scan");
    for (std::size_t j = i + 1; j < dsets.size(); ++j) {
      int delta = 0;
      for (std::size_t w = 0; w < words; ++w)
        delta += std::popcount(masks[i * words + w] ^ masks[j * words + w]);
      if (delta < lambda) out.push_back({dsets[i], dsets[j], delta});
    }
  }
  return out;
}

} // namespace locarray
