#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "locarray/params.hpp"

namespace locarray {

// One (factor, level) assignment.  Factors and levels are 0-based internally;
// reports render factors and rows 1-based.
struct FactorLevel {
  int factor = 0;
  int level = 0;
  auto operator<=>(const FactorLevel &) const = default;
};

// A t-way interaction: level assignments to t distinct factors, kept sorted
// by factor.  The canonical order sorts by the factor tuple first and the
// level tuple second, which is exactly the order enumeration yields.
struct Interaction {
  std::vector<FactorLevel> pairs;

  int strength() const { return static_cast<int>(pairs.size()); }

  bool operator==(const Interaction &) const = default;

  friend bool operator<(const Interaction &a, const Interaction &b) {
    const size_t n = std::min(a.pairs.size(), b.pairs.size());
    for (size_t i = 0; i < n; ++i) {
      if (a.pairs[i].factor != b.pairs[i].factor)
        return a.pairs[i].factor < b.pairs[i].factor;
    }
    if (a.pairs.size() != b.pairs.size()) return a.pairs.size() < b.pairs.size();
    for (size_t i = 0; i < n; ++i) {
      if (a.pairs[i].level != b.pairs[i].level)
        return a.pairs[i].level < b.pairs[i].level;
    }
    return false;
  }

  // Renders like {(1,0),(3,1)} with 1-based factor indices.
  std::string to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (i) s += ",";
      s += "(" + std::to_string(pairs[i].factor + 1) + "," +
           std::to_string(pairs[i].level) + ")";
    }
    return s + "}";
  }
};

// A candidate faulty set: between 1 and d distinct interactions, sorted.
// Ordered by size first, then member-wise, matching enumeration order.
struct DSet {
  std::vector<Interaction> members;

  int size() const { return static_cast<int>(members.size()); }

  bool operator==(const DSet &) const = default;

  friend bool operator<(const DSet &a, const DSet &b) {
    if (a.members.size() != b.members.size())
      return a.members.size() < b.members.size();
    return std::lexicographical_compare(a.members.begin(), a.members.end(),
                                        b.members.begin(), b.members.end());
  }

  std::string to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < members.size(); ++i) {
      if (i) s += " ";
      s += members[i].to_string();
    }
    return s + "]";
  }
};

// ---- small exact-integer helpers -----------------------------------------

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("64-bit overflow in combinatorial count");
  return a * b;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // result grows as C(n-r+1, 1), C(n-r+2, 2), ... so each division is exact;
    // cancel gcds first to keep intermediates in range.
    std::uint64_t num = n - r + i;
    std::uint64_t den = i;
    std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    g = std::gcd(result, den);
    result /= g;
    den /= g;
    assert(den == 1);
    result = checked_mul(result, num);
  }
  return result;
}

inline std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Number of t-way interactions, C(k,t) * v^t; throws on 64-bit overflow.
inline std::uint64_t interaction_count_u64(const Params &p) {
  return checked_mul(binomial_u64(p.factors, p.strength),
                     pow_u64(p.levels, static_cast<unsigned>(p.strength)));
}

// ---- combination ranking (lexicographic) ----------------------------------

inline std::uint64_t combination_rank(const std::vector<int> &combo, int n) {
  std::uint64_t rank = 0;
  const int t = static_cast<int>(combo.size());
  int prev = -1;
  for (int i = 0; i < t; ++i) {
    for (int x = prev + 1; x < combo[i]; ++x)
      rank += binomial_u64(n - 1 - x, t - 1 - i);
    prev = combo[i];
  }
  return rank;
}

inline std::vector<int> combination_unrank(std::uint64_t rank, int n, int t) {
  std::vector<int> combo(t);
  int x = 0;
  for (int i = 0; i < t; ++i) {
    while (true) {
      std::uint64_t block = binomial_u64(n - 1 - x, t - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    combo[i] = x++;
  }
  return combo;
}

// ---- interaction ranking ---------------------------------------------------

// Dense ids in [0, C(k,t)*v^t): factor combination major, level tuple minor.
inline std::uint64_t interaction_rank(const Params &p, const Interaction &ia) {
  std::vector<int> combo(ia.pairs.size());
  std::uint64_t level_rank = 0;
  for (size_t i = 0; i < ia.pairs.size(); ++i) {
    combo[i] = ia.pairs[i].factor;
    level_rank = level_rank * p.levels + ia.pairs[i].level;
  }
  const std::uint64_t vt = pow_u64(p.levels, static_cast<unsigned>(p.strength));
  return combination_rank(combo, p.factors) * vt + level_rank;
}

inline Interaction interaction_at(const Params &p, std::uint64_t rank) {
  const std::uint64_t vt = pow_u64(p.levels, static_cast<unsigned>(p.strength));
  std::vector<int> combo =
      combination_unrank(rank / vt, p.factors, p.strength);
  std::uint64_t level_rank = rank % vt;
  Interaction ia;
  ia.pairs.resize(combo.size());
  for (int i = static_cast<int>(combo.size()) - 1; i >= 0; --i) {
    ia.pairs[i].factor = combo[i];
    ia.pairs[i].level = static_cast<int>(level_rank % p.levels);
    level_rank /= p.levels;
  }
  return ia;
}

// ---- lazy enumeration ------------------------------------------------------

// Steps through all t-way interactions in canonical order without
// materializing the whole space.
class InteractionCursor {
public:
  explicit InteractionCursor(const Params &p) : params_(p) {
    combo_.resize(p.strength);
    for (int i = 0; i < p.strength; ++i) combo_[i] = i;
    levels_.assign(p.strength, 0);
  }

  bool done() const { return done_; }

  Interaction current() const {
    Interaction ia;
    ia.pairs.resize(combo_.size());
    for (size_t i = 0; i < combo_.size(); ++i)
      ia.pairs[i] = {combo_[i], levels_[i]};
    return ia;
  }

  void advance() {
    assert(!done_);
    // level odometer, last position fastest
    for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) {
      if (++levels_[i] < params_.levels) return;
      levels_[i] = 0;
    }
    if (!next_combination(combo_, params_.factors)) done_ = true;
  }

  // Advances `combo` to the next t-subset of [0,n) in lexicographic order.
  static bool next_combination(std::vector<int> &combo, int n) {
    const int t = static_cast<int>(combo.size());
    for (int i = t - 1; i >= 0; --i) {
      if (combo[i] < n - (t - i)) {
        ++combo[i];
        for (int j = i + 1; j < t; ++j) combo[j] = combo[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

private:
  Params params_;
  std::vector<int> combo_;
  std::vector<int> levels_;
  bool done_ = false;
};

enum class DSetMode { at_most, exact };

// Steps through candidate sets: all sizes 1..d (at_most) or exactly d
// (exact), each a lexicographic id-combination over the interaction space.
class DSetCursor {
public:
  DSetCursor(const Params &p, DSetMode mode)
      : params_(p), total_(interaction_count_u64(p)), mode_(mode) {
    size_ = (mode == DSetMode::at_most) ? 1 : p.max_faults;
    if (size_ > static_cast<int>(std::min<std::uint64_t>(
                    total_, std::numeric_limits<int>::max()))) {
      done_ = true;
      return;
    }
    reset_combo();
  }

  bool done() const { return done_; }

  const std::vector<std::uint64_t> &current_ids() const { return ids_; }

  DSet current() const {
    DSet d;
    d.members.reserve(ids_.size());
    for (std::uint64_t id : ids_) d.members.push_back(interaction_at(params_, id));
    return d;
  }

  void advance() {
    assert(!done_);
    const int s = static_cast<int>(ids_.size());
    for (int i = s - 1; i >= 0; --i) {
      if (ids_[i] < total_ - static_cast<std::uint64_t>(s - i)) {
        ++ids_[i];
        for (int j = i + 1; j < s; ++j) ids_[j] = ids_[j - 1] + 1;
        return;
      }
    }
    // exhausted this size
    ++size_;
    if (mode_ == DSetMode::exact || size_ > params_.max_faults ||
        static_cast<std::uint64_t>(size_) > total_) {
      done_ = true;
      return;
    }
    reset_combo();
  }

private:
  void reset_combo() {
    ids_.resize(size_);
    for (int i = 0; i < size_; ++i) ids_[i] = static_cast<std::uint64_t>(i);
  }

  Params params_;
  std::uint64_t total_;
  DSetMode mode_;
  int size_ = 1;
  std::vector<std::uint64_t> ids_;
  bool done_ = false;
};

struct CursorSentinel {};

template <class Cursor> class CursorIterator {
public:
  explicit CursorIterator(Cursor c) : cursor_(std::move(c)) {}
  auto operator*() const { return cursor_.current(); }
  CursorIterator &operator++() {
    cursor_.advance();
    return *this;
  }
  bool operator==(CursorSentinel) const { return cursor_.done(); }

private:
  Cursor cursor_;
};

class InteractionSequence {
public:
  explicit InteractionSequence(const Params &p) : params_(p) { validate(p); }
  CursorIterator<InteractionCursor> begin() const {
    return CursorIterator<InteractionCursor>(InteractionCursor(params_));
  }
  CursorSentinel end() const { return {}; }

private:
  Params params_;
};

class DSetSequence {
public:
  DSetSequence(const Params &p, DSetMode mode) : params_(p), mode_(mode) {
    validate(p);
  }
  CursorIterator<DSetCursor> begin() const {
    return CursorIterator<DSetCursor>(DSetCursor(params_, mode_));
  }
  CursorSentinel end() const { return {}; }

private:
  Params params_;
  DSetMode mode_;
};

inline InteractionSequence enumerate_interactions(const Params &p) {
  return InteractionSequence(p);
}

inline DSetSequence enumerate_dsets(const Params &p,
                                    DSetMode mode = DSetMode::at_most) {
  return DSetSequence(p, mode);
}

} // namespace locarray
