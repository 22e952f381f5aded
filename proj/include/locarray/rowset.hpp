#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace locarray {

// Strictly ascending, duplicate-free row indices.  Kept as a sorted vector so
// unions and symmetric differences are linear merges.
using RowSet = std::vector<std::int32_t>;

inline bool rowset_is_canonical(const RowSet &s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return true;
}

inline RowSet rowset_union(std::span<const std::int32_t> a,
                           std::span<const std::int32_t> b) {
  RowSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// |a Δ b| by a single merge pass.
inline int sym_diff_size(std::span<const std::int32_t> a,
                         std::span<const std::int32_t> b) {
  size_t i = 0, j = 0;
  int count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++count;
      ++i;
    } else if (b[j] < a[i]) {
      ++count;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  count += static_cast<int>((a.size() - i) + (b.size() - j));
  return count;
}

// Same merge, but stops as soon as the count reaches `cap` and returns `cap`.
// Callers that only need to know whether |a Δ b| < cap use this.
inline int sym_diff_size_capped(std::span<const std::int32_t> a,
                                std::span<const std::int32_t> b, int cap) {
  size_t i = 0, j = 0;
  int count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      if (++count >= cap) return cap;
      ++i;
    } else if (b[j] < a[i]) {
      if (++count >= cap) return cap;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  count += static_cast<int>((a.size() - i) + (b.size() - j));
  return std::min(count, cap);
}

inline std::string rowset_to_string(const RowSet &s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1); // rows are 1-based in reports
  }
  return out + "}";
}

} // namespace locarray
