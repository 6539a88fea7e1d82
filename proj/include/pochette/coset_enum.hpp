#ifndef POCHETTE_COSET_ENUM_HPP
#define POCHETTE_COSET_ENUM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pochette/presentation.hpp"

namespace pochette {

inline constexpr std::size_t default_max_cosets = 100'000;

/// Column of a signed generator: 2g for g, 2g + 1 for g^-1.
inline constexpr std::size_t column_of(const Letter &l) noexcept {
  return 2 * static_cast<std::size_t>(l.generator) + (l.sign < 0 ? 1 : 0);
}

/// Closed coset table of a completed enumeration. Coset 0 is the subgroup;
/// cosets are numbered in order of definition.
class CosetTable {
public:
  static constexpr std::int32_t undefined = -1;

  CosetTable() = default;
  CosetTable(std::size_t num_generators, std::size_t num_cosets)
      : num_generators_(num_generators), num_cosets_(num_cosets),
        entries_(num_cosets * 2 * num_generators, undefined) {}

  std::size_t num_generators() const noexcept { return num_generators_; }
  std::size_t size() const noexcept { return num_cosets_; }

  std::int32_t entry(std::size_t coset, std::size_t column) const {
    return entries_[coset * 2 * num_generators_ + column];
  }
  void set(std::size_t coset, std::size_t column, std::int32_t value) {
    entries_[coset * 2 * num_generators_ + column] = value;
  }

  /// Coset reached from `coset` by reading `w`, or nullopt on a gap.
  std::optional<std::size_t> trace(std::size_t coset, const Word &w) const {
    std::size_t c = coset;
    for (const Letter &l : w.letters()) {
      const std::int32_t next = entry(c, column_of(l));
      if (next == undefined)
        return std::nullopt;
      c = static_cast<std::size_t>(next);
    }
    return c;
  }

  /// Every entry defined, g and g^-1 columns mutually inverse, and every
  /// relator closing at every coset.
  bool is_closed_under(const FinitePresentation &p) const {
    for (std::size_t c = 0; c < num_cosets_; ++c)
      for (std::size_t col = 0; col < 2 * num_generators_; ++col) {
        const std::int32_t d = entry(c, col);
        if (d == undefined || static_cast<std::size_t>(d) >= num_cosets_)
          return false;
        if (entry(static_cast<std::size_t>(d), col ^ 1) != static_cast<std::int32_t>(c))
          return false;
      }
    for (std::size_t c = 0; c < num_cosets_; ++c)
      for (const Word &r : p.relators())
        if (trace(c, r) != c)
          return false;
    return true;
  }

private:
  std::size_t num_generators_ = 0;
  std::size_t num_cosets_ = 0;
  std::vector<std::int32_t> entries_;
};

struct EnumerationStats {
  std::size_t cosets_defined = 0;
  std::size_t coincidences = 0;
  std::size_t max_live = 0;
};

struct EnumerationResult {
  enum class Outcome { Completed, Overflow };

  Outcome outcome = Outcome::Overflow;
  std::size_t index = 0; ///< valid when Completed
  CosetTable table;      ///< valid when Completed
  EnumerationStats stats;

  bool completed() const noexcept { return outcome == Outcome::Completed; }
};

namespace detail {

/// HLT enumeration: every live coset, in order, has the subgroup generators
/// (coset 0 only) and every relator scanned with gaps filled by new
/// definitions, then its remaining row entries defined. Coincidences are
/// processed as soon as they arise.
class HltEnumerator {
public:
  HltEnumerator(const FinitePresentation &p, std::size_t max_cosets)
      : presentation_(p), columns_(2 * p.num_generators()), max_cosets_(max_cosets) {}

  EnumerationResult run(const std::vector<Word> &subgroup) {
    new_coset();
    for (const Word &h : subgroup) {
      scan_and_fill(0, h);
      if (overflow_)
        return overflow_result();
    }
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (const Word &r : presentation_.relators()) {
        if (!is_live(c))
          break;
        scan_and_fill(c, r);
        if (overflow_)
          return overflow_result();
      }
      for (std::size_t col = 0; col < columns_ && is_live(c); ++col) {
        if (at(c, col) == CosetTable::undefined) {
          define(c, col);
          if (overflow_)
            return overflow_result();
        }
      }
      maybe_compact(c);
    }
    return completed_result();
  }

private:
  std::int32_t &at(std::size_t c, std::size_t col) { return table_[c * columns_ + col]; }

  bool is_live(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  std::size_t new_coset() {
    const std::size_t c = parent_.size();
    parent_.push_back(static_cast<std::int32_t>(c));
    table_.resize(table_.size() + columns_, CosetTable::undefined);
    ++live_;
    ++stats_.cosets_defined;
    stats_.max_live = std::max(stats_.max_live, live_);
    return c;
  }

  void define(std::size_t c, std::size_t col) {
    if (live_ >= max_cosets_) {
      overflow_ = true;
      return;
    }
    const std::size_t d = new_coset();
    at(c, col) = static_cast<std::int32_t>(d);
    at(d, col ^ 1) = static_cast<std::int32_t>(c);
  }

  void scan_and_fill(std::size_t coset, const Word &w) {
    const auto &ls = w.letters();
    if (ls.empty())
      return;
    std::size_t f = coset, b = coset;
    std::size_t i = 0, j = ls.size();
    while (true) {
      while (i < j && at(f, column_of(ls[i])) != CosetTable::undefined)
        f = static_cast<std::size_t>(at(f, column_of(ls[i++])));
      if (i == j) {
        if (f != b)
          coincidence(f, b);
        return;
      }
      while (j > i && at(b, column_of(ls[j - 1]) ^ 1) != CosetTable::undefined)
        b = static_cast<std::size_t>(at(b, column_of(ls[--j]) ^ 1));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        // Deduction closes the cycle.
        const std::size_t col = column_of(ls[i]);
        at(f, col) = static_cast<std::int32_t>(b);
        at(b, col ^ 1) = static_cast<std::int32_t>(f);
        return;
      }
      define(f, column_of(ls[i]));
      if (overflow_)
        return;
    }
  }

  std::size_t rep(std::size_t c) {
    std::size_t root = c;
    while (parent_[root] != static_cast<std::int32_t>(root))
      root = static_cast<std::size_t>(parent_[root]);
    while (parent_[c] != static_cast<std::int32_t>(root)) {
      const std::size_t next = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int32_t>(root);
      c = next;
    }
    return root;
  }

  void merge(std::size_t a, std::size_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b)
      return;
    if (b < a)
      std::swap(a, b);
    parent_[b] = static_cast<std::int32_t>(a);
    queue_.push_back(b);
    --live_;
    ++stats_.coincidences;
  }

  void coincidence(std::size_t a, std::size_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const std::size_t e = queue_[qi];
      for (std::size_t col = 0; col < columns_; ++col) {
        const std::int32_t f_raw = at(e, col);
        if (f_raw == CosetTable::undefined)
          continue;
        const std::size_t f = static_cast<std::size_t>(f_raw);
        if (at(f, col ^ 1) == static_cast<std::int32_t>(e))
          at(f, col ^ 1) = CosetTable::undefined;
        const std::size_t e1 = rep(e);
        const std::size_t f1 = rep(f);
        if (at(e1, col) != CosetTable::undefined) {
          merge(f1, static_cast<std::size_t>(at(e1, col)));
        } else if (at(f1, col ^ 1) != CosetTable::undefined) {
          merge(e1, static_cast<std::size_t>(at(f1, col ^ 1)));
        } else {
          at(e1, col) = static_cast<std::int32_t>(f1);
          at(f1, col ^ 1) = static_cast<std::int32_t>(e1);
        }
      }
    }
    queue_.clear();
  }

  // Renumbers live cosets order-preservingly once dead rows dominate; the run
  // is identical to one without compaction. `cursor` is the caller's loop
  // index and is remapped in place.
  void maybe_compact(std::size_t &cursor) {
    if (parent_.size() < 4096 || parent_.size() < 4 * live_)
      return;
    std::vector<std::int32_t> remap(parent_.size(), CosetTable::undefined);
    std::size_t next = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (is_live(c))
        remap[c] = static_cast<std::int32_t>(next++);
    std::vector<std::int32_t> table(next * columns_, CosetTable::undefined);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!is_live(c))
        continue;
      for (std::size_t col = 0; col < columns_; ++col) {
        const std::int32_t d = at(c, col);
        table[static_cast<std::size_t>(remap[c]) * columns_ + col] =
            d == CosetTable::undefined ? d : remap[static_cast<std::size_t>(d)];
      }
    }
    // The loop resumes after the last coset at or before the cursor.
    std::size_t kept = 0;
    for (std::size_t c = 0; c <= cursor; ++c)
      if (remap[c] != CosetTable::undefined)
        ++kept;
    const std::size_t new_cursor = kept - 1;
    table_ = std::move(table);
    parent_.resize(next);
    for (std::size_t c = 0; c < next; ++c)
      parent_[c] = static_cast<std::int32_t>(c);
    cursor = new_cursor;
  }

  EnumerationResult overflow_result() const {
    EnumerationResult r;
    r.outcome = EnumerationResult::Outcome::Overflow;
    r.stats = stats_;
    return r;
  }

  EnumerationResult completed_result() {
    std::vector<std::int32_t> remap(parent_.size(), CosetTable::undefined);
    std::size_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (is_live(c))
        remap[c] = static_cast<std::int32_t>(n++);
    CosetTable table(presentation_.num_generators(), n);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!is_live(c))
        continue;
      for (std::size_t col = 0; col < columns_; ++col) {
        const std::int32_t d = at(c, col);
        table.set(static_cast<std::size_t>(remap[c]), col,
                  d == CosetTable::undefined ? d : remap[static_cast<std::size_t>(d)]);
      }
    }
    EnumerationResult r;
    r.outcome = EnumerationResult::Outcome::Completed;
    r.index = n;
    r.table = std::move(table);
    r.stats = stats_;
    return r;
  }

  const FinitePresentation &presentation_;
  std::size_t columns_;
  std::size_t max_cosets_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::size_t> queue_;
  std::size_t live_ = 0;
  bool overflow_ = false;
  EnumerationStats stats_;
};

} // namespace detail

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`. Completed(n) certifies index n; Overflow (more than
/// `max_cosets` live cosets needed) makes no claim.
inline EnumerationResult enumerate(const FinitePresentation &p,
                                   const std::vector<Word> &subgroup = {},
                                   std::size_t max_cosets = default_max_cosets) {
  for (const Word &h : subgroup)
    p.check_word(h);
  return detail::HltEnumerator(p, std::max<std::size_t>(max_cosets, 1)).run(subgroup);
}

struct TrivialityVerdict {
  enum class Kind { Trivial, NonTrivial, Unknown };

  Kind kind = Kind::Unknown;
  std::size_t order = 0; ///< group order for Trivial (1) and NonTrivial
  EnumerationStats stats;
};

inline const char *to_string(TrivialityVerdict::Kind k) {
  switch (k) {
  case TrivialityVerdict::Kind::Trivial: return "Trivial";
  case TrivialityVerdict::Kind::NonTrivial: return "NonTrivial";
  case TrivialityVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

/// Trivial iff enumeration over the trivial subgroup completes with one
/// coset; NonTrivial(n) if it completes with n > 1; Unknown on overflow.
inline TrivialityVerdict certify_trivial(const FinitePresentation &p,
                                         std::size_t max_cosets = default_max_cosets) {
  const EnumerationResult r = enumerate(p, {}, max_cosets);
  TrivialityVerdict v;
  v.stats = r.stats;
  if (!r.completed())
    return v;
  v.order = r.index;
  v.kind = r.index == 1 ? TrivialityVerdict::Kind::Trivial : TrivialityVerdict::Kind::NonTrivial;
  return v;
}

enum class Membership { InSubgroup, NotInSubgroup, Unknown };

inline const char *to_string(Membership m) {
  switch (m) {
  case Membership::InSubgroup: return "InSubgroup";
  case Membership::NotInSubgroup: return "NotInSubgroup";
  case Membership::Unknown: return "Unknown";
  }
  return "?";
}

/// Decides whether `candidate` lies in the subgroup generated by
/// `subgroup_gens`, when the subgroup has finite index within the budget.
inline Membership subgroup_membership(const FinitePresentation &p,
                                      const std::vector<Word> &subgroup_gens,
                                      const Word &candidate,
                                      std::size_t max_cosets = default_max_cosets) {
  p.check_word(candidate);
  if (candidate.is_identity())
    return Membership::InSubgroup;
  const EnumerationResult r = enumerate(p, subgroup_gens, max_cosets);
  if (!r.completed())
    return Membership::Unknown;
  return r.table.trace(0, candidate) == std::size_t{0} ? Membership::InSubgroup
                                                         : Membership::NotInSubgroup;
}

} // namespace pochette

#endif
