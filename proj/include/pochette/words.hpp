#ifndef POCHETTE_WORDS_HPP
#define POCHETTE_WORDS_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pochette/errors.hpp"

namespace pochette {

/// One signed generator occurrence: generator index into an alphabet and
/// an exponent of +1 or -1.
struct Letter {
  std::uint32_t generator = 0;
  std::int8_t sign = 1;

  constexpr Letter inverse() const noexcept {
    return Letter{generator, static_cast<std::int8_t>(-sign)};
  }
  constexpr bool cancels(const Letter &other) const noexcept {
    return generator == other.generator && sign == -other.sign;
  }
  friend constexpr auto operator<=>(const Letter &, const Letter &) = default;
};

inline bool is_valid_generator_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

/// Ordered list of distinct generator names.
class Alphabet {
public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_valid_generator_name(names_[i]))
        throw ParseError(ParseErrorKind::InvalidGeneratorName,
                         "'" + names_[i] + "'", 0, 0);
      for (std::size_t j = 0; j < i; ++j)
        if (names_[j] == names_[i])
          throw ParseError(ParseErrorKind::DuplicateGenerator,
                           "'" + names_[i] + "'", 0, 0);
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string &name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string> &names() const noexcept { return names_; }

  std::optional<std::uint32_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  /// The alphabet without generator `i`; later generators shift down by one.
  Alphabet without(std::size_t i) const {
    std::vector<std::string> rest = names_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    return Alphabet(std::move(rest));
  }

  friend bool operator==(const Alphabet &, const Alphabet &) = default;

private:
  std::vector<std::string> names_;
};

/// Element of a free group, always stored freely reduced so that structural
/// equality is equality in the free group. The empty word is the identity.
class Word {
public:
  Word() = default;

  explicit Word(std::span<const Letter> letters) {
    letters_.reserve(letters.size());
    for (const Letter &l : letters)
      push(l);
  }
  Word(std::initializer_list<Letter> letters)
      : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

  static Word generator(std::uint32_t g, int exponent = 1) {
    Word w;
    const Letter l{g, static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
    for (int k = 0; k < (exponent < 0 ? -exponent : exponent); ++k)
      w.letters_.push_back(l);
    return w;
  }

  const std::vector<Letter> &letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const Letter &operator[](std::size_t i) const { return letters_[i]; }

  /// Largest generator index used plus one (0 for the identity).
  std::size_t generator_bound() const noexcept {
    std::size_t bound = 0;
    for (const Letter &l : letters_)
      bound = std::max<std::size_t>(bound, l.generator + 1);
    return bound;
  }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back(it->inverse());
    return w;
  }

  Word power(long k) const {
    const Word base = k < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < (k < 0 ? -k : k); ++i)
      out = out * base;
    return out;
  }

  Word &operator*=(const Word &rhs) {
    for (const Letter &l : rhs.letters_)
      push(l);
    return *this;
  }
  friend Word operator*(Word lhs, const Word &rhs) { return lhs *= rhs; }

  friend bool operator==(const Word &, const Word &) = default;
  friend auto operator<=>(const Word &a, const Word &b) {
    return a.letters_ <=> b.letters_;
  }

private:
  void push(const Letter &l) {
    if (!letters_.empty() && letters_.back().cancels(l))
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  std::vector<Letter> letters_;
};

inline Word concat(const Word &a, const Word &b) { return a * b; }
inline Word invert(const Word &w) { return w.inverse(); }

/// Strips matching first/last letter pairs (conjugation) until none remain.
inline Word cyclically_reduce(const Word &w) {
  const auto &ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo].cancels(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::span<const Letter>(ls.data() + lo, hi - lo));
}

/// Cyclic rotation starting at letter `start`. Only meaningful for cyclically
/// reduced words, where every rotation is itself freely reduced.
inline Word rotate(const Word &w, std::size_t start) {
  const auto &ls = w.letters();
  if (ls.empty())
    return w;
  std::vector<Letter> out(ls.begin() + static_cast<std::ptrdiff_t>(start % ls.size()),
                          ls.end());
  out.insert(out.end(), ls.begin(),
             ls.begin() + static_cast<std::ptrdiff_t>(start % ls.size()));
  return Word(out);
}

inline long exponent_sum(const Word &w, std::uint32_t g) {
  long sum = 0;
  for (const Letter &l : w.letters())
    if (l.generator == g)
      sum += l.sign;
  return sum;
}

inline std::size_t occurrences(const Word &w, std::uint32_t g) {
  return static_cast<std::size_t>(
      std::count_if(w.letters().begin(), w.letters().end(),
                    [g](const Letter &l) { return l.generator == g; }));
}

/// Replaces each generator by its image word. Every generator occurring in
/// `w` must have an image.
inline Word substitute(const Word &w, const std::map<std::uint32_t, Word> &images) {
  Word out;
  for (const Letter &l : w.letters()) {
    auto it = images.find(l.generator);
    if (it == images.end())
      throw MissingImage("no image for generator #" + std::to_string(l.generator));
    out *= l.sign > 0 ? it->second : it->second.inverse();
  }
  return out;
}

/// Canonical text form: runs of the same letter collected into `name^k`,
/// factors separated by single spaces, the identity printed as `1`.
inline std::string to_string(const Word &w, const Alphabet &alphabet) {
  if (w.is_identity())
    return "1";
  std::string out;
  const auto &ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i])
      ++j;
    const long run = static_cast<long>(j - i) * ls[i].sign;
    if (!out.empty())
      out += ' ';
    out += alphabet.name(ls[i].generator);
    if (run != 1)
      out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

constexpr long max_parsed_exponent = 1'000'000;

} // namespace detail

/// Parses `word := "1" | factor (("*" | whitespace) factor)*` with
/// `factor := name ("^" integer)?` and `integer := "-"? [1-9][0-9]*`.
/// Error positions are 1-based character offsets into `text`.
inline Word parse_word(std::string_view text, const Alphabet &alphabet) {
  std::size_t pos = 0;
  const auto skip_space = [&] {
    while (pos < text.size() && detail::is_space(text[pos]))
      ++pos;
  };
  const auto fail = [&](ParseErrorKind kind, std::string detail, std::size_t at) {
    throw ParseError(kind, std::move(detail), 0, at + 1);
  };

  skip_space();
  std::size_t end = text.size();
  while (end > pos && detail::is_space(text[end - 1]))
    --end;
  const std::string_view body = text.substr(pos, end - pos);
  if (body.empty() || body == "1")
    return Word{};

  std::vector<Letter> letters;
  bool need_factor = true;
  while (true) {
    skip_space();
    if (pos >= text.size()) {
      if (need_factor)
        fail(ParseErrorKind::MalformedFactor, "expected a factor", pos);
      break;
    }
    const std::size_t start = pos;
    if (!std::isalpha(static_cast<unsigned char>(text[pos])))
      fail(ParseErrorKind::MalformedFactor,
           std::string("unexpected '") + text[pos] + "'", pos);
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    const std::string_view name = text.substr(start, pos - start);

    long exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t num_start = pos;
      bool negative = false;
      if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
      }
      const std::size_t digits_start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      const std::string_view digits = text.substr(digits_start, pos - digits_start);
      if (digits.empty())
        fail(ParseErrorKind::MalformedFactor, "missing exponent", num_start);
      if (std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0'; }))
        fail(ParseErrorKind::ZeroExponent, "exponent must be nonzero", num_start);
      if (digits[0] == '0' || digits.size() > 7)
        fail(ParseErrorKind::MalformedFactor, "bad exponent", num_start);
      exponent = std::stol(std::string(digits));
      if (exponent > detail::max_parsed_exponent)
        fail(ParseErrorKind::MalformedFactor, "exponent too large", num_start);
      if (negative)
        exponent = -exponent;
    }
    const auto g = alphabet.index_of(name);
    if (!g)
      fail(ParseErrorKind::UnknownGenerator, "'" + std::string(name) + "'", start);
    const Letter l{*g, static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k)
      letters.push_back(l);
    need_factor = false;

    // Separator: whitespace, '*', or end of input.
    const std::size_t after = pos;
    skip_space();
    if (pos >= text.size())
      break;
    if (text[pos] == '*') {
      ++pos;
      need_factor = true;
    } else if (pos == after) {
      fail(ParseErrorKind::MalformedFactor,
           std::string("unexpected '") + text[pos] + "'", pos);
    }
  }
  return Word(letters);
}

} // namespace pochette

#endif
