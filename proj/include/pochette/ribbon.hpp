#ifndef POCHETTE_RIBBON_HPP
#define POCHETTE_RIBBON_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pochette/coset_enum.hpp"
#include "pochette/presentation.hpp"
#include "pochette/quotient_search.hpp"
#include "pochette/surgery.hpp"

namespace pochette {

/// One band of a ribbon fusion: relator w x_i w^-1 x_j^-1 (1-based i, j).
struct FusionBand {
  Word word;
  std::size_t from = 1;
  std::size_t to = 2;
};

/// Ribbon 2-knot of n-fusion: n bands joining n + 1 trivial disks.
struct FusionData {
  std::size_t n = 0;
  std::vector<FusionBand> bands;

  std::size_t num_generators() const noexcept { return n + 1; }
};

inline Alphabet fusion_alphabet(std::size_t num_generators) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= num_generators; ++i)
    names.push_back("x" + std::to_string(i));
  return Alphabet(std::move(names));
}

/// Checks index ranges and that the bands form a spanning tree on the disks.
inline void validate(const FusionData &f) {
  if (f.bands.size() != f.n)
    throw InvalidFusionGraph("expected " + std::to_string(f.n) + " bands, got " +
                             std::to_string(f.bands.size()));
  const std::size_t vertices = f.n + 1;
  std::vector<std::size_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t v) {
    while (parent[v] != v)
      v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t k = 0; k < f.bands.size(); ++k) {
    const FusionBand &b = f.bands[k];
    const std::string which = "band " + std::to_string(k + 1);
    if (b.from < 1 || b.from > vertices || b.to < 1 || b.to > vertices)
      throw InvalidFusionGraph(which + ": index out of range 1.." + std::to_string(vertices));
    if (b.from == b.to)
      throw InvalidFusionGraph(which + ": joins a disk to itself");
    if (b.word.generator_bound() > vertices)
      throw InvalidFusionGraph(which + ": word uses an unknown generator");
    const std::size_t a = find(b.from - 1), c = find(b.to - 1);
    if (a == c)
      throw InvalidFusionGraph(which + ": closes a cycle; bands must form a tree");
    parent[a] = c;
  }
}

/// <x_1..x_{n+1} | w_k x_{i_k} w_k^-1 x_{j_k}^-1>.
inline FinitePresentation n_fusion_presentation(const FusionData &f) {
  validate(f);
  std::vector<Word> relators;
  for (const FusionBand &b : f.bands) {
    const auto i = static_cast<std::uint32_t>(b.from - 1);
    const auto j = static_cast<std::uint32_t>(b.to - 1);
    relators.push_back(b.word * Word::generator(i) * b.word.inverse() * Word::generator(j, -1));
  }
  return FinitePresentation(fusion_alphabet(f.num_generators()), std::move(relators));
}

inline const Alphabet &one_fusion_alphabet() {
  static const Alphabet alphabet({"x", "y"});
  return alphabet;
}

/// <x, y | w x w^-1 y^sign> for a word w over {x, y}.
inline FinitePresentation one_fusion_presentation(const Word &w, int sign) {
  if (sign != 1 && sign != -1)
    throw Error("one-fusion sign must be +1 or -1");
  const FinitePresentation empty(one_fusion_alphabet());
  empty.check_word(w);
  return FinitePresentation(one_fusion_alphabet(),
                            {w * Word::generator(0) * w.inverse() * Word::generator(1, sign)});
}

/// Group of the spun trefoil: <x, y | y x^-1 y x y^-1 x>.
inline FinitePresentation spun_trefoil() {
  return FinitePresentation(one_fusion_alphabet(),
                            {parse_word("y x^-1 y x y^-1 x", one_fusion_alphabet())});
}

/// Embedding data of the spun trefoil preset: meridian x, longitude y
/// (linking number -1).
inline PochetteEmbeddingData spun_trefoil_embedding() {
  return {spun_trefoil(), Word::generator(0), Word::generator(1)};
}

/// 1-fusion embedding data with meridian x and longitude y^sign, the
/// orientation giving linking number -1.
inline PochetteEmbeddingData one_fusion_embedding(const Word &w, int sign) {
  return {one_fusion_presentation(w, sign), Word::generator(0), Word::generator(1, sign)};
}

// ---------------------------------------------------------------------------
// Cord triviality

struct CordBudgets {
  std::size_t max_cosets = default_max_cosets;
  std::size_t max_degree = default_max_degree;
};

enum class CordClass { TrivialCordClass, NontrivialCordCertified, Unknown };

inline const char *to_string(CordClass c) {
  switch (c) {
  case CordClass::TrivialCordClass: return "TrivialCordClass";
  case CordClass::NontrivialCordCertified: return "NontrivialCordCertified";
  case CordClass::Unknown: return "Unknown";
  }
  return "?";
}

struct CordVerdict {
  CordClass kind = CordClass::Unknown;
  /// How the verdict was reached: "meridian-power", "coset-enumeration",
  /// "separating-quotient", or "none".
  std::string method = "none";
  /// Exponent k with cord = meridian^k, for the "meridian-power" method.
  std::optional<long> meridian_power;
  /// Non-cyclic permutation quotient in which the cord's image lies outside
  /// the cyclic subgroup generated by the meridian's image.
  std::optional<PermutationAssignment> witness;
  Membership membership = Membership::Unknown;
};

/// Re-checks a separating quotient witness from scratch.
inline bool verify_cord_witness(const FinitePresentation &p, const Word &meridian,
                                const Word &cord, const PermutationAssignment &w) {
  if (!satisfies(p, w) || image_is_cyclic(w))
    return false;
  const Permutation c = evaluate(cord, w);
  for (const Permutation &e : generated_subgroup({evaluate(meridian, w)}, w.degree))
    if (e == c)
      return false;
  return true;
}

/// Classifies the cord with class `cord` in the double coset space
/// <m> \ G / <m>. The trivial class is exactly the subgroup <m>:
///  - TrivialCordClass when the cord is visibly a power of the meridian or
///    coset enumeration places it in <m>;
///  - NontrivialCordCertified when a finite permutation quotient with
///    non-cyclic image separates the cord from <m> (so G is not Z and the
///    cord is outside <m>), or enumeration refutes membership and such a
///    non-cyclic quotient exists;
///  - Unknown otherwise.
inline CordVerdict cord_triviality(const FinitePresentation &p, const Word &meridian,
                                   const Word &cord, const CordBudgets &budgets = {}) {
  p.check_word(meridian);
  p.check_word(cord);
  CordVerdict v;

  if (cord.is_identity()) {
    v.kind = CordClass::TrivialCordClass;
    v.method = "meridian-power";
    v.meridian_power = 0;
    v.membership = Membership::InSubgroup;
    return v;
  }
  if (!meridian.is_identity()) {
    const long bound = static_cast<long>(cord.size() / meridian.size()) + 1;
    for (long k = -bound; k <= bound; ++k)
      if (k != 0 && meridian.power(k) == cord) {
        v.kind = CordClass::TrivialCordClass;
        v.method = "meridian-power";
        v.meridian_power = k;
        v.membership = Membership::InSubgroup;
        return v;
      }
  }

  v.membership = subgroup_membership(p, {meridian}, cord, budgets.max_cosets);
  if (v.membership == Membership::InSubgroup) {
    v.kind = CordClass::TrivialCordClass;
    v.method = "coset-enumeration";
    return v;
  }

  const Word m = meridian, c = cord;
  auto separating = find_quotient(p, budgets.max_degree, [&](const PermutationAssignment &a) {
    if (image_is_cyclic(a))
      return false;
    const Permutation ci = evaluate(c, a);
    for (const Permutation &e : generated_subgroup({evaluate(m, a)}, a.degree))
      if (e == ci)
        return false;
    return true;
  });
  if (separating) {
    v.kind = CordClass::NontrivialCordCertified;
    v.method = "separating-quotient";
    v.witness = std::move(separating);
    return v;
  }
  if (v.membership == Membership::NotInSubgroup) {
    if (auto noncyclic = find_noncyclic_quotient(p, budgets.max_degree)) {
      v.kind = CordClass::NontrivialCordCertified;
      v.method = "coset-enumeration";
      v.witness = std::move(noncyclic);
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Fusion file format and presets

/// `n: <int>` then n lines `band: <word> <i> <j>`; '#' comments.
inline FusionData parse_fusion(std::string_view text) {
  FusionData f;
  bool saw_n = false;
  std::vector<FusionBand> bands;
  std::optional<Alphabet> alphabet;
  detail::for_each_content_line(text, [&](std::size_t line_no, std::string_view line) {
    const std::string_view content = detail::trim(line);
    const std::size_t key_column = detail::offset_in(line, content) + 1;
    const auto colon = content.find(':');
    const std::string_view key =
        colon == std::string_view::npos ? content : detail::trim(content.substr(0, colon));
    const std::string_view value =
        colon == std::string_view::npos ? std::string_view{} : content.substr(colon + 1);
    if (key == "n" && colon != std::string_view::npos) {
      const std::string v(detail::trim(value));
      if (saw_n || v.empty() || v.size() > 6 ||
          v.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(ParseErrorKind::MalformedLine, "expected 'n: <count>'", line_no,
                         key_column);
      f.n = std::stoul(v);
      saw_n = true;
      alphabet = fusion_alphabet(f.n + 1);
    } else if (key == "band" && colon != std::string_view::npos) {
      if (!saw_n)
        throw ParseError(ParseErrorKind::MissingSection, "'band:' before 'n:'", line_no,
                         key_column);
      std::string_view rest = detail::trim(value);
      std::size_t indices[2] = {0, 0};
      for (int k = 1; k >= 0; --k) {
        const auto space = rest.find_last_of(" \t");
        const std::string_view token =
            space == std::string_view::npos ? rest : rest.substr(space + 1);
        if (token.empty() || token.size() > 6 ||
            token.find_first_not_of("0123456789") != std::string_view::npos ||
            space == std::string_view::npos)
          throw ParseError(ParseErrorKind::MalformedLine, "expected 'band: <word> <i> <j>'",
                           line_no, detail::offset_in(line, token) + 1);
        indices[k] = std::stoul(std::string(token));
        rest = detail::trim(rest.substr(0, space));
      }
      FusionBand b;
      try {
        b.word = parse_word(rest, *alphabet);
      } catch (const ParseError &e) {
        throw e.at_line(line_no, detail::offset_in(line, rest));
      }
      b.from = indices[0];
      b.to = indices[1];
      bands.push_back(std::move(b));
    } else {
      throw ParseError(ParseErrorKind::MalformedLine, "expected 'n:' or 'band:'", line_no,
                       key_column);
    }
  });
  if (!saw_n)
    throw ParseError(ParseErrorKind::MissingSection, "no 'n:' line", 0, 0);
  f.bands = std::move(bands);
  validate(f);
  return f;
}

inline std::string to_string(const FusionData &f) {
  const Alphabet alphabet = fusion_alphabet(f.num_generators());
  std::ostringstream out;
  out << "n: " << f.n << "\n";
  for (const FusionBand &b : f.bands)
    out << "band: " << to_string(b.word, alphabet) << " " << b.from << " " << b.to << "\n";
  return out.str();
}

/// A named input: a presentation plus default meridian and longitude words
/// when the source defines them.
struct LoadedGroup {
  FinitePresentation presentation;
  std::optional<Word> meridian;
  std::optional<Word> longitude;
};

/// Presets: `spun-trefoil` and `one-fusion:<word>:<sign>` (factors of the
/// word separated by '*' or spaces).
inline std::optional<LoadedGroup> load_preset(std::string_view name) {
  if (name == "spun-trefoil") {
    const auto e = spun_trefoil_embedding();
    return LoadedGroup{e.knot_group, e.meridian, e.longitude};
  }
  constexpr std::string_view prefix = "one-fusion:";
  if (name.starts_with(prefix)) {
    const std::string_view rest = name.substr(prefix.size());
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos)
      throw Error("preset must be one-fusion:<word>:<sign>");
    const std::string_view sign_text = detail::trim(rest.substr(colon + 1));
    int sign = 0;
    if (sign_text == "1" || sign_text == "+1")
      sign = 1;
    else if (sign_text == "-1")
      sign = -1;
    else
      throw Error("one-fusion sign must be 1 or -1, got '" + std::string(sign_text) + "'");
    const Word w = parse_word(rest.substr(0, colon), one_fusion_alphabet());
    const auto e = one_fusion_embedding(w, sign);
    return LoadedGroup{e.knot_group, e.meridian, e.longitude};
  }
  return std::nullopt;
}

/// Parses presentation or fusion file text, choosing by the first content
/// line (`n:` means fusion). Fusion inputs default to meridian x1.
inline LoadedGroup load_group_text(std::string_view text) {
  bool fusion = false;
  bool decided = false;
  detail::for_each_content_line(text, [&](std::size_t, std::string_view line) {
    if (!decided) {
      const auto content = detail::trim(line);
      fusion = content.starts_with("n:") || content.starts_with("n :");
      decided = true;
    }
  });
  if (fusion) {
    const FusionData f = parse_fusion(text);
    return LoadedGroup{n_fusion_presentation(f), Word::generator(0), std::nullopt};
  }
  return LoadedGroup{parse_presentation(text), std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------------------
// Seeded random instances

/// Uniform random freely reduced word of exact length `len`.
inline Word random_reduced_word(std::mt19937_64 &rng, std::size_t num_generators,
                                std::size_t len) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<std::size_t> pick(0, 2 * num_generators - 1);
  while (letters.size() < len) {
    const std::size_t r = pick(rng);
    const Letter l{static_cast<std::uint32_t>(r / 2), static_cast<std::int8_t>(r % 2 ? -1 : 1)};
    if (!letters.empty() && letters.back().cancels(l))
      continue;
    letters.push_back(l);
  }
  return Word(letters);
}

/// Random n-fusion data: a random labelled tree (each new disk attached to an
/// earlier one, then labels shuffled) with random band words of length <=
/// `max_word_length`.
inline FusionData random_fusion(std::mt19937_64 &rng, std::size_t n, std::size_t max_word_length) {
  FusionData f;
  f.n = n;
  std::vector<std::size_t> label(n + 1);
  std::iota(label.begin(), label.end(), std::size_t{1});
  std::shuffle(label.begin(), label.end(), rng);
  std::uniform_int_distribution<std::size_t> len_dist(0, max_word_length);
  for (std::size_t v = 1; v <= n; ++v) {
    std::uniform_int_distribution<std::size_t> earlier(0, v - 1);
    const std::size_t u = earlier(rng);
    FusionBand b;
    b.word = random_reduced_word(rng, n + 1, len_dist(rng));
    const bool flip = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    b.from = label[flip ? v : u];
    b.to = label[flip ? u : v];
    f.bands.push_back(std::move(b));
  }
  return f;
}

} // namespace pochette

#endif
