#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "locarray/deadline.hpp"
#include "locarray/interaction.hpp"
#include "locarray/params.hpp"
#include "locarray/rowset.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

// Rows of the array in which the interaction appears.
inline RowSet compute_rho(const TestArray &a, const Interaction &ia) {
  const Params &p = a.params();
  int prev = -1;
  for (const FactorLevel &fl : ia.pairs) {
    if (fl.factor < 0 || fl.factor >= p.factors)
      throw std::invalid_argument("interaction factor out of range");
    if (fl.level < 0 || fl.level >= p.levels)
      throw std::invalid_argument("interaction level out of range");
    if (fl.factor <= prev)
      throw std::invalid_argument("interaction factors must be strictly ascending");
    prev = fl.factor;
  }
  RowSet rows;
  for (int r = 0; r < a.rows(); ++r) {
    bool match = true;
    for (const FactorLevel &fl : ia.pairs)
      if (a.at(r, fl.factor) != fl.level) {
        match = false;
        break;
      }
    if (match) rows.push_back(r);
  }
  return rows;
}

// Union of member row-sets (Alg. 2's per-set union).
inline RowSet compute_rho_dset(const TestArray &a, const DSet &d) {
  RowSet acc;
  for (const Interaction &ia : d.members) acc = rowset_union(acc, compute_rho(a, ia));
  return acc;
}

// Row-sets of every t-way interaction, indexed by interaction_rank.  Built
// with one pass per factor combination so the whole table costs O(N·t) per
// combination instead of O(N·t) per interaction.
struct RhoTable {
  std::vector<RowSet> by_rank;

  const RowSet &at(std::uint64_t rank) const { return by_rank[rank]; }
};

inline RhoTable compute_all_rho(const TestArray &a, const Params &p,
                                const Deadline &deadline = Deadline::never()) {
  validate(p);
  if (p.factors != a.cols())
    throw std::invalid_argument("params factor count does not match array");
  const int v = p.levels;
  const int t = p.strength;
  const std::uint64_t vt = pow_u64(v, static_cast<unsigned>(t));

  RhoTable table;
  table.by_rank.resize(interaction_count_u64(p));

  std::vector<int> combo(t);
  for (int i = 0; i < t; ++i) combo[i] = i;
  std::uint64_t combo_rank = 0;
  while (true) {
    deadline.check("row-set computation");
    const std::uint64_t base = combo_rank * vt;
    for (int r = 0; r < a.rows(); ++r) {
      std::uint64_t tup = 0;
      for (int f : combo) tup = tup * v + static_cast<std::uint64_t>(a.at(r, f));
      table.by_rank[base + tup].push_back(r);
    }
    if (!InteractionCursor::next_combination(combo, p.factors)) break;
    ++combo_rank;
  }
  return table;
}

struct RowMapEntry {
  DSet dset;
  RowSet rows;
};

// Partition of all d̄-sets keyed by |ρ|.  Buckets are sorted lexicographically
// by row-set (ties by d̄-set) so scans and cuts see a deterministic order.
// Only nonempty buckets are stored; keys always lie in [0, N].
struct RowMap {
  std::map<int, std::vector<RowMapEntry>> buckets;
  int array_rows = 0;

  std::map<int, std::uint64_t> histogram() const {
    std::map<int, std::uint64_t> h;
    for (const auto &[key, entries] : buckets) h[key] = entries.size();
    return h;
  }

  std::uint64_t total_dsets() const {
    std::uint64_t n = 0;
    for (const auto &[key, entries] : buckets) n += entries.size();
    return n;
  }
};

inline RowMap build_rowmap(const TestArray &a, const Params &p,
                           const RhoTable &table,
                           DSetMode mode = DSetMode::at_most,
                           const Deadline &deadline = Deadline::never()) {
  RowMap map;
  map.array_rows = a.rows();

  std::uint64_t since_check = 0;
  for (DSetCursor cur(p, mode); !cur.done(); cur.advance()) {
    if ((++since_check & 0xFFF) == 0) deadline.check("d-set partitioning");
    const auto &ids = cur.current_ids();
    RowSet rows = table.at(ids[0]);
    for (std::size_t i = 1; i < ids.size(); ++i)
      rows = rowset_union(rows, table.at(ids[i]));
    const int key = static_cast<int>(rows.size());
    map.buckets[key].push_back(RowMapEntry{cur.current(), std::move(rows)});
  }

  for (auto &[key, entries] : map.buckets) {
    (void)key;
    std::sort(entries.begin(), entries.end(),
              [](const RowMapEntry &x, const RowMapEntry &y) {
                if (x.rows != y.rows) return x.rows < y.rows;
                return x.dset < y.dset;
              });
  }
  return map;
}

inline RowMap build_rowmap(const TestArray &a, const Params &p,
                           DSetMode mode = DSetMode::at_most,
                           const Deadline &deadline = Deadline::never()) {
  return build_rowmap(a, p, compute_all_rho(a, p, deadline), mode, deadline);
}

} // namespace locarray
