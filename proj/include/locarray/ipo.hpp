#pragma once

#include <cstdint>
#include <vector>

#include "locarray/deadline.hpp"
#include "locarray/interaction.hpp"
#include "locarray/params.hpp"
#include "locarray/test_array.hpp"

namespace locarray {

namespace detail {

// All (t-1)-subsets of {0..limit-1}, lexicographic.  For t == 1 this is the
// single empty subset.
inline std::vector<std::vector<int>> subsets_below(int limit, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> combo(size);
  for (int i = 0; i < size; ++i) combo[i] = i;
  out.push_back(combo);
  while (InteractionCursor::next_combination(combo, limit)) out.push_back(combo);
  return out;
}

} // namespace detail

// In-parameter-order construction.  Start from the exhaustive array on the
// first t columns repeated lambda times, then add one column at a time:
//   - horizontal extension assigns the new cell of every existing row the
//     level that newly lambda-covers the most interactions (ties: lowest
//     level);
//   - vertical extension appends rows until every interaction involving the
//     new column is lambda-covered; each row is seeded with the first
//     still-deficient interaction and the remaining cells are filled
//     left-to-right to cover as many further deficient interactions as
//     possible (ties: lowest level, i.e. lexicographically smallest row).
// The greedy rules are deterministic; `seed` is accepted only so all
// generators share a call shape.
inline TestArray generate_ipo(const Params &p, std::uint64_t seed = 0,
                              const Deadline &deadline = Deadline::never()) {
  validate(p);
  (void)seed;
  const int k = p.factors;
  const int v = p.levels;
  const int t = p.strength;
  const int lam = p.redundancy;

  // Exhaustive base on columns 0..t-1, index lambda.
  std::vector<std::vector<int>> rows;
  for (int copy = 0; copy < lam; ++copy) {
    std::vector<int> tuple(t, 0);
    while (true) {
      rows.push_back(tuple);
      int pos = t - 1;
      while (pos >= 0 && tuple[pos] == v - 1) tuple[pos--] = 0;
      if (pos < 0) break;
      ++tuple[pos];
    }
  }

  const std::uint64_t vp = pow_u64(v, static_cast<unsigned>(t - 1));
  for (int col = t; col < k; ++col) {
    deadline.check("covering-array generation (ipo)");
    const auto combos = detail::subsets_below(col, t - 1);
    const std::size_t nc = combos.size();

    // cnt[(ci*vp + tup)*v + x]: coverage of the interaction made of
    // combos[ci] at levels `tup` (base-v digits) plus (col, x).
    std::vector<int> cnt(nc * vp * v, 0);
    auto tuple_of = [&](const std::vector<int> &row, const std::vector<int> &combo) {
      std::uint64_t tup = 0;
      for (int f : combo) tup = tup * v + static_cast<std::uint64_t>(row[f]);
      return tup;
    };

    // Horizontal extension.
    std::vector<std::uint64_t> tup_of_row(nc);
    for (auto &row : rows) {
      for (std::size_t ci = 0; ci < nc; ++ci) tup_of_row[ci] = tuple_of(row, combos[ci]);
      int best_x = 0, best_gain = -1;
      for (int x = 0; x < v; ++x) {
        int gain = 0;
        for (std::size_t ci = 0; ci < nc; ++ci)
          if (cnt[(ci * vp + tup_of_row[ci]) * v + x] == lam - 1) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best_x = x;
        }
      }
      row.push_back(best_x);
      for (std::size_t ci = 0; ci < nc; ++ci)
        ++cnt[(ci * vp + tup_of_row[ci]) * v + best_x];
    }

    // Vertical extension: flat indices of still-deficient interactions, kept
    // in canonical order (combo-major, then level tuple, then new-column
    // level).
    std::vector<std::size_t> defic;
    for (std::size_t flat = 0; flat < cnt.size(); ++flat)
      if (cnt[flat] < lam) defic.push_back(flat);

    std::vector<int> row(col + 1, -1);
    std::vector<int> seed_levels(t - 1);
    while (!defic.empty()) {
      deadline.check("covering-array generation (ipo)");
      std::fill(row.begin(), row.end(), -1);

      const std::size_t first = defic.front();
      const std::size_t ci0 = first / (vp * v);
      std::uint64_t tup0 = (first / v) % vp;
      const int x0 = static_cast<int>(first % v);
      row[col] = x0;
      for (int i = t - 2; i >= 0; --i) {
        seed_levels[i] = static_cast<int>(tup0 % v);
        tup0 /= v;
      }
      for (int i = 0; i < t - 1; ++i) row[combos[ci0][i]] = seed_levels[i];

      for (int pos = 0; pos < col; ++pos) {
        if (row[pos] != -1) continue;
        int best_y = 0, best_gain = -1;
        for (int y = 0; y < v; ++y) {
          int gain = 0;
          for (std::size_t flat : defic) {
            if (static_cast<int>(flat % v) != row[col]) continue;
            const auto &combo = combos[flat / (vp * v)];
            std::uint64_t tup = (flat / v) % vp;
            bool match = false, decided = true;
            for (int i = t - 2; i >= 0; --i) {
              const int f = combo[i];
              const int lvl = static_cast<int>(tup % v);
              tup /= v;
              if (f == pos) {
                match = (lvl == y);
                if (!match) decided = false;
              } else if (row[f] == -1 || row[f] != lvl) {
                decided = false;
              }
              if (!decided) break;
            }
            if (decided && match) ++gain;
          }
          if (gain > best_gain) {
            best_gain = gain;
            best_y = y;
          }
        }
        row[pos] = best_y;
      }

      rows.push_back(row);
      for (std::size_t ci = 0; ci < nc; ++ci)
        ++cnt[(ci * vp + tuple_of(row, combos[ci])) * v + row[col]];
      std::erase_if(defic, [&](std::size_t flat) { return cnt[flat] >= lam; });
    }
  }

  return TestArray::from_rows(p, rows);
}

} // namespace locarray
