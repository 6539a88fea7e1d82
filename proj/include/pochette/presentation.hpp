#ifndef POCHETTE_PRESENTATION_HPP
#define POCHETTE_PRESENTATION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pochette/errors.hpp"
#include "pochette/words.hpp"

namespace pochette {

/// True iff `a` and `b` define the same relation up to cyclic permutation and
/// inversion.
inline bool relators_equivalent(const Word &a, const Word &b) {
  const Word ra = cyclically_reduce(a);
  const Word rb = cyclically_reduce(b);
  if (ra.size() != rb.size())
    return false;
  if (ra.is_identity())
    return true;
  const Word rb_inv = rb.inverse();
  for (std::size_t k = 0; k < ra.size(); ++k) {
    const Word rot = rotate(ra, k);
    if (rot == rb || rot == rb_inv)
      return true;
  }
  return false;
}

/// A finite presentation <alphabet | relators>. Relators are kept cyclically
/// reduced, nontrivial, and pairwise inequivalent; insertion order is kept.
class FinitePresentation {
public:
  FinitePresentation() = default;

  explicit FinitePresentation(Alphabet alphabet, std::vector<Word> relators = {})
      : alphabet_(std::move(alphabet)) {
    for (const Word &r : relators)
      append(r);
  }

  const Alphabet &alphabet() const noexcept { return alphabet_; }
  const std::vector<Word> &relators() const noexcept { return relators_; }
  std::size_t num_generators() const noexcept { return alphabet_.size(); }

  std::size_t total_length() const noexcept {
    std::size_t n = 0;
    for (const Word &r : relators_)
      n += r.size();
    return n;
  }

  /// Returns a copy with `r` appended; dropped if trivial or a duplicate.
  FinitePresentation with_relator(const Word &r) const {
    FinitePresentation out = *this;
    out.append(r);
    return out;
  }

  void check_word(const Word &w) const {
    if (w.generator_bound() > alphabet_.size())
      throw AlphabetMismatch("word uses generator #" +
                             std::to_string(w.generator_bound() - 1) +
                             " outside an alphabet of size " +
                             std::to_string(alphabet_.size()));
  }

  friend bool operator==(const FinitePresentation &, const FinitePresentation &) = default;

private:
  void append(const Word &r) {
    check_word(r);
    Word reduced = cyclically_reduce(r);
    if (reduced.is_identity())
      return;
    for (const Word &existing : relators_)
      if (relators_equivalent(existing, reduced))
        return;
    relators_.push_back(std::move(reduced));
  }

  Alphabet alphabet_;
  std::vector<Word> relators_;
};

inline FinitePresentation add_relator(const FinitePresentation &p, const Word &r) {
  return p.with_relator(r);
}

/// File form: `gens: a, b` and `rels: r1; r2` lines.
inline std::string to_string(const FinitePresentation &p) {
  std::ostringstream out;
  out << "gens: ";
  for (std::size_t i = 0; i < p.num_generators(); ++i)
    out << (i ? ", " : "") << p.alphabet().name(i);
  out << "\nrels: ";
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    out << (i ? "; " : "") << to_string(p.relators()[i], p.alphabet());
  out << "\n";
  return out.str();
}

/// One-line form `<a, b | r1, r2>`.
inline std::string to_display_string(const FinitePresentation &p) {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < p.num_generators(); ++i)
    out << (i ? ", " : "") << p.alphabet().name(i);
  out << " | ";
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    out << (i ? ", " : "") << to_string(p.relators()[i], p.alphabet());
  out << ">";
  return out.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

/// Offset of `inner` inside `outer`; both views must share storage.
inline std::size_t offset_in(std::string_view outer, std::string_view inner) {
  return static_cast<std::size_t>(inner.data() - outer.data());
}

/// Splits on `sep`, keeping views into `s`.
inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

/// Iterates the non-blank lines of `text` with comments stripped, passing the
/// 1-based line number and the line content (a view into `text`).
template <class Fn> void for_each_content_line(std::string_view text, Fn &&fn) {
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (trim(line).empty())
      continue;
    fn(line_no, line);
  }
}

} // namespace detail

/// Parses the presentation file format: one `gens:` line and at least one
/// `rels:` line (several accumulate). Comments start with '#'; blank lines are
/// ignored.
inline FinitePresentation parse_presentation(std::string_view text) {
  std::optional<Alphabet> alphabet;
  struct PendingRelator {
    std::string_view text;
    std::size_t line;
    std::size_t column;
  };
  std::vector<PendingRelator> pending;
  bool saw_rels = false;

  detail::for_each_content_line(text, [&](std::size_t line_no, std::string_view line) {
    const std::string_view content = detail::trim(line);
    const auto colon = content.find(':');
    const std::string_view key =
        colon == std::string_view::npos ? content : detail::trim(content.substr(0, colon));
    const std::size_t key_column = detail::offset_in(line, content) + 1;
    if (colon == std::string_view::npos || (key != "gens" && key != "rels"))
      throw ParseError(ParseErrorKind::MalformedLine,
                       "expected 'gens:' or 'rels:'", line_no, key_column);
    const std::string_view value = content.substr(colon + 1);
    if (key == "gens") {
      if (alphabet)
        throw ParseError(ParseErrorKind::MalformedLine, "duplicate 'gens:' line",
                         line_no, key_column);
      std::vector<std::string> names;
      if (!detail::trim(value).empty()) {
        for (std::string_view part : detail::split(value, ',')) {
          const std::string_view name = detail::trim(part);
          const std::size_t column = detail::offset_in(line, name) + 1;
          if (!is_valid_generator_name(name))
            throw ParseError(ParseErrorKind::InvalidGeneratorName,
                             "'" + std::string(name) + "'", line_no, column);
          for (const auto &prev : names)
            if (prev == name)
              throw ParseError(ParseErrorKind::DuplicateGenerator,
                               "'" + std::string(name) + "'", line_no, column);
          names.emplace_back(name);
        }
      }
      alphabet = Alphabet(std::move(names));
    } else {
      saw_rels = true;
      if (detail::trim(value).empty())
        return;
      for (std::string_view part : detail::split(value, ';')) {
        if (detail::trim(part).empty())
          continue;
        pending.push_back({part, line_no, detail::offset_in(line, part)});
      }
    }
  });

  if (!alphabet)
    throw ParseError(ParseErrorKind::MissingSection, "no 'gens:' line", 0, 0);
  if (!saw_rels)
    throw ParseError(ParseErrorKind::MissingSection, "no 'rels:' line", 0, 0);

  std::vector<Word> relators;
  for (const auto &r : pending) {
    try {
      relators.push_back(parse_word(r.text, *alphabet));
    } catch (const ParseError &e) {
      throw e.at_line(r.line, r.column);
    }
  }
  return FinitePresentation(std::move(*alphabet), std::move(relators));
}

// ---------------------------------------------------------------------------
// Tietze simplification

struct TietzeResult {
  FinitePresentation presentation;
  std::size_t steps = 0;
  bool budget_exhausted = false;
};

namespace detail {

/// Relator indices ordered shortest first, ties by printed text.
inline std::vector<std::size_t> tietze_order(const FinitePresentation &p) {
  std::vector<std::size_t> order(p.relators().size());
  std::vector<std::string> printed(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
    printed[i] = to_string(p.relators()[i], p.alphabet());
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto la = p.relators()[a].size(), lb = p.relators()[b].size();
    return la != lb ? la < lb : printed[a] < printed[b];
  });
  return order;
}

/// Removes generator `g` using relator `rel`, in which it occurs once.
inline FinitePresentation eliminate_generator(const FinitePresentation &p,
                                              std::size_t rel, std::uint32_t g) {
  const Word &r = p.relators()[rel];
  std::size_t at = 0;
  while (r[at].generator != g)
    ++at;
  // r rotated to g^e v, so g = v^-1 when e = +1 and g = v when e = -1.
  const Word rotated = rotate(r, at);
  const Word rest(std::span<const Letter>(rotated.letters().data() + 1, rotated.size() - 1));
  const Word image = rotated[0].sign > 0 ? rest.inverse() : rest;

  std::map<std::uint32_t, Word> images;
  for (std::uint32_t h = 0; h < p.num_generators(); ++h) {
    if (h == g)
      continue;
    images[h] = Word::generator(h > g ? h - 1 : h);
  }
  Word renamed_image = substitute(image, images);
  images[g] = renamed_image;

  std::vector<Word> relators;
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    if (i != rel)
      relators.push_back(substitute(p.relators()[i], images));
  return FinitePresentation(p.alphabet().without(g), std::move(relators));
}

/// Looks for a cyclic subword of `target` that is more than half of some
/// cyclic rotation of `rel` or its inverse, and replaces it by the inverse of
/// the complementary part. Returns the shortened relator.
inline std::optional<Word> rewrite_with(const Word &target, const Word &rel) {
  const std::size_t len = rel.size();
  const std::size_t tlen = target.size();
  if (len == 0 || tlen == 0)
    return std::nullopt;
  const Word variants[2] = {rel, rel.inverse()};
  for (std::size_t k = len; k > len / 2; --k) {
    if (k > tlen)
      continue;
    for (const Word &base : variants) {
      for (std::size_t rot = 0; rot < len; ++rot) {
        const Word t = rotate(base, rot);
        const auto &tl = t.letters();
        for (std::size_t start = 0; start < tlen; ++start) {
          bool match = true;
          for (std::size_t i = 0; i < k && match; ++i)
            match = target[(start + i) % tlen] == tl[i];
          if (!match)
            continue;
          // target ~ u * rest with u = t[0, k) = (t[k, len))^-1.
          const Word shifted = rotate(target, start);
          const Word rest(std::span<const Letter>(shifted.letters().data() + k, tlen - k));
          const Word tail(std::span<const Letter>(tl.data() + k, len - k));
          return cyclically_reduce(tail.inverse() * rest);
        }
      }
    }
  }
  return std::nullopt;
}

} // namespace detail

/// Simplifies `p` by Tietze moves that never add generators or lengthen the
/// relator set: generator elimination through a relator in which the
/// generator occurs exactly once, relator rewriting by long common subwords,
/// and deduplication. Stops at a fixpoint or after `budget` moves.
inline TietzeResult tietze_simplify(const FinitePresentation &input, std::size_t budget) {
  TietzeResult result{input, 0, false};
  FinitePresentation &p = result.presentation;

  while (true) {
    bool moved = false;
    const std::vector<std::size_t> order = detail::tietze_order(p);

    for (std::size_t idx : order) {
      const Word &r = p.relators()[idx];
      for (std::uint32_t g = 0; g < p.num_generators() && !moved; ++g) {
        if (occurrences(r, g) != 1)
          continue;
        FinitePresentation next = detail::eliminate_generator(p, idx, g);
        if (next.total_length() > p.total_length())
          continue;
        if (result.steps >= budget) {
          result.budget_exhausted = true;
          return result;
        }
        p = std::move(next);
        ++result.steps;
        moved = true;
      }
      if (moved)
        break;
    }
    if (moved)
      continue;

    for (std::size_t si : order) {
      for (std::size_t ti : order) {
        if (si == ti)
          continue;
        const Word &s = p.relators()[si];
        const Word &t = p.relators()[ti];
        if (t.size() < s.size())
          continue;
        auto shorter = detail::rewrite_with(t, s);
        if (!shorter)
          continue;
        if (result.steps >= budget) {
          result.budget_exhausted = true;
          return result;
        }
        std::vector<Word> relators = p.relators();
        relators[ti] = *shorter;
        p = FinitePresentation(p.alphabet(), std::move(relators));
        ++result.steps;
        moved = true;
        break;
      }
      if (moved)
        break;
    }
    if (!moved)
      return result;
  }
}

} // namespace pochette

#endif
