#ifndef POCHETTE_SURGERY_HPP
#define POCHETTE_SURGERY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "pochette/abelian.hpp"
#include "pochette/coset_enum.hpp"
#include "pochette/presentation.hpp"

namespace pochette {

/// Surgery slope p/q with the mod 2 framing. Always normalized: gcd(p, q) = 1,
/// p >= 0, and p = 0 forces q = 1.
class SlopeSpec {
public:
  /// Normalizes (p, q) ~ (-p, -q). Throws NotCoprime for gcd != 1 (including
  /// (0, 0)) and InvalidSlope for a framing outside {0, 1}.
  static SlopeSpec make(Integer p, Integer q, int epsilon = 0) {
    if (epsilon != 0 && epsilon != 1)
      throw InvalidSlope("framing must be 0 or 1, got " + std::to_string(epsilon));
    if (std::gcd(p, q) != 1)
      throw NotCoprime("slope " + std::to_string(p) + "/" + std::to_string(q) +
                       " is not a coprime pair");
    if (p < 0) {
      p = -p;
      q = -q;
    }
    if (p == 0)
      q = 1;
    return SlopeSpec(p, q, epsilon);
  }

  Integer p() const noexcept { return p_; }
  Integer q() const noexcept { return q_; }
  int epsilon() const noexcept { return epsilon_; }

  friend bool operator==(const SlopeSpec &, const SlopeSpec &) = default;

private:
  SlopeSpec(Integer p, Integer q, int epsilon) : p_(p), q_(q), epsilon_(epsilon) {}

  Integer p_;
  Integer q_;
  int epsilon_;
};

/// "p/q" text; "1/0" is the slope at infinity. Also accepts a bare integer p.
inline SlopeSpec parse_slope(std::string_view text, int epsilon = 0) {
  const auto parse_int = [&](std::string_view s) -> Integer {
    s = detail::trim(s);
    if (s.empty())
      throw InvalidSlope("malformed slope '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size() || s.size() > 18)
      throw InvalidSlope("malformed slope '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k])))
        throw InvalidSlope("malformed slope '" + std::string(text) + "'");
    return std::stoll(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return SlopeSpec::make(parse_int(text), 1, epsilon);
  return SlopeSpec::make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)),
                         epsilon);
}

inline std::string to_string(const SlopeSpec &s) {
  return std::to_string(s.p()) + "/" + std::to_string(s.q());
}

/// Alphabet {m, l} of the abstract surgery word: meridian and longitude of
/// the pochette boundary.
inline const Alphabet &surgery_word_alphabet() {
  static const Alphabet alphabet({"m", "l"});
  return alphabet;
}
inline constexpr std::uint32_t meridian_letter = 0;
inline constexpr std::uint32_t longitude_letter = 1;

namespace detail {

/// Floor division rounding toward negative infinity.
inline Integer floor_div(Integer a, Integer b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace detail

/// The lift of p[m] + q[l] to pi_1 of the pochette boundary:
/// prod_{k=1..p} l^(floor(kq/p) - floor((k-1)q/p)) m.
/// Contains exactly p letters m, and the l-exponents telescope to q.
inline Word c_word(const SlopeSpec &slope) {
  const Integer p = slope.p(), q = slope.q();
  if (p == 0)
    throw UndefinedForSlopeZero("c_word is undefined for p = 0; the surgery relator "
                                "is the longitude itself");
  Word w;
  Integer previous = 0;
  for (Integer k = 1; k <= p; ++k) {
    const Integer current = detail::floor_div(detail::checked_mul(k, q), p);
    w *= Word::generator(longitude_letter, static_cast<int>(current - previous));
    w *= Word::generator(meridian_letter);
    previous = current;
  }
  return w;
}

/// Algebraic data of a pochette embedding in a homology 4-sphere: the group of
/// the core sphere exterior with words for the based meridian and longitude.
struct PochetteEmbeddingData {
  FinitePresentation knot_group;
  Word meridian;
  Word longitude;
};

namespace detail {

/// Images of the generators in H_1 = Z, oriented so the meridian maps to +1.
/// Throws if the embedding data invariants fail.
inline std::vector<Integer> oriented_abelianization(const PochetteEmbeddingData &data) {
  data.knot_group.check_word(data.meridian);
  data.knot_group.check_word(data.longitude);
  auto images = hom_to_z(data.knot_group);
  if (!images)
    throw NotKnotGroup("abelianization is " + to_string(abelian_invariants(data.knot_group)) +
                       ", not Z");
  const Integer m = evaluate_abelian(data.meridian, *images);
  if (m != 1 && m != -1)
    throw MeridianNotGenerator("meridian maps to " + std::to_string(m) +
                               " in H_1 = Z; it must map to a generator");
  if (m == -1)
    for (Integer &v : *images)
      v = -v;
  return *images;
}

} // namespace detail

/// Linking number: [longitude] = l * [meridian] in H_1 of the exterior.
inline Integer linking_number(const PochetteEmbeddingData &data) {
  const auto images = detail::oriented_abelianization(data);
  return evaluate_abelian(data.longitude, images);
}

/// Relator added by the surgery: c_word with m, l replaced by the meridian
/// and longitude words, or the longitude itself when p = 0.
inline Word surgery_relator(const PochetteEmbeddingData &data, const SlopeSpec &slope) {
  if (slope.p() == 0)
    return data.longitude;
  return substitute(c_word(slope),
                    {{meridian_letter, data.meridian}, {longitude_letter, data.longitude}});
}

/// Fundamental group of the surgered manifold: the knot group with the
/// surgery relator added.
inline FinitePresentation surgery_pi1(const PochetteEmbeddingData &data, const SlopeSpec &slope) {
  data.knot_group.check_word(data.meridian);
  data.knot_group.check_word(data.longitude);
  return add_relator(data.knot_group, surgery_relator(data, slope));
}

/// p + q * l, guarded against overflow.
inline Integer surgery_determinant(Integer linking, const SlopeSpec &slope) {
  return detail::checked_add(slope.p(), detail::checked_mul(slope.q(), linking));
}

using HomologyGroups = std::array<AbelianInvariants, 5>;

/// H_0..H_4 of the surgered homology 4-sphere. With d = p + q*l:
/// d != 0 gives H_1 = H_2 = Z/|d| and H_3 = 0; d = 0 gives H_1 = Z,
/// H_2 = Z^2, H_3 = Z. H_0 = H_4 = Z always.
inline HomologyGroups surgery_homology(Integer linking, const SlopeSpec &slope) {
  const Integer d = surgery_determinant(linking, slope);
  HomologyGroups h;
  h[0] = AbelianInvariants::free(1);
  h[4] = AbelianInvariants::free(1);
  if (d != 0) {
    h[1] = AbelianInvariants::cyclic(d);
    h[2] = AbelianInvariants::cyclic(d);
    h[3] = AbelianInvariants{};
  } else {
    h[1] = AbelianInvariants::free(1);
    h[2] = AbelianInvariants::free(2);
    h[3] = AbelianInvariants::free(1);
  }
  return h;
}

struct DetectionBudgets {
  std::size_t max_cosets = default_max_cosets;
  std::size_t tietze_steps = 10'000;
};

enum class VerdictKind { NotHomotopySphere, HomeoS4Certified, NontrivialPi1, Unknown };

inline const char *to_string(VerdictKind v) {
  switch (v) {
  case VerdictKind::NotHomotopySphere: return "NotHomotopySphere";
  case VerdictKind::HomeoS4Certified: return "HomeoS4Certified";
  case VerdictKind::NontrivialPi1: return "NontrivialPi1";
  case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

/// Everything computed for one surgery.
struct SurgeryInvariants {
  SlopeSpec slope = SlopeSpec::make(1, 0);
  Integer linking = 0;
  Integer determinant = 0; ///< p + q * linking
  FinitePresentation pi1;
  HomologyGroups homology;
  VerdictKind verdict = VerdictKind::Unknown;
  /// Index found when verdict is NontrivialPi1.
  std::size_t pi1_order = 0;
  /// Enumeration statistics; absent when no enumeration was needed.
  std::optional<EnumerationStats> enumeration;
  /// True when triviality was certified on the Tietze-simplified presentation
  /// after the raw presentation overflowed.
  bool used_simplified = false;
};

/// Homotopy-level S^4 test for the surgered manifold. It is homeomorphic to
/// S^4 iff |p + q*l| = 1 and pi_1 is trivial; triviality is certified by
/// coset enumeration (retried on the Tietze-simplified presentation when the
/// raw one overflows). The framing never enters the computation.
inline SurgeryInvariants detect_s4(const PochetteEmbeddingData &data, const SlopeSpec &slope,
                                   const DetectionBudgets &budgets = {}) {
  SurgeryInvariants out;
  out.slope = slope;
  out.linking = linking_number(data);
  out.determinant = surgery_determinant(out.linking, slope);
  out.pi1 = surgery_pi1(data, slope);
  out.homology = surgery_homology(out.linking, slope);

  if (out.determinant != 1 && out.determinant != -1) {
    out.verdict = VerdictKind::NotHomotopySphere;
    return out;
  }
  TrivialityVerdict t = certify_trivial(out.pi1, budgets.max_cosets);
  if (t.kind == TrivialityVerdict::Kind::Unknown) {
    const auto simplified = tietze_simplify(out.pi1, budgets.tietze_steps);
    if (!(simplified.presentation == out.pi1)) {
      const TrivialityVerdict retry = certify_trivial(simplified.presentation, budgets.max_cosets);
      if (retry.kind != TrivialityVerdict::Kind::Unknown) {
        t = retry;
        out.used_simplified = true;
      }
    }
  }
  out.enumeration = t.stats;
  switch (t.kind) {
  case TrivialityVerdict::Kind::Trivial:
    out.verdict = VerdictKind::HomeoS4Certified;
    break;
  case TrivialityVerdict::Kind::NonTrivial:
    out.verdict = VerdictKind::NontrivialPi1;
    out.pi1_order = t.order;
    break;
  case TrivialityVerdict::Kind::Unknown:
    out.verdict = VerdictKind::Unknown;
    break;
  }
  return out;
}

} // namespace pochette

#endif
