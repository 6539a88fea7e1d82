#ifndef POCHETTE_QUOTIENT_SEARCH_HPP
#define POCHETTE_QUOTIENT_SEARCH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pochette/presentation.hpp"

namespace pochette {

inline constexpr std::size_t default_max_degree = 8;
inline constexpr std::size_t max_supported_degree = 8;

/// Permutation of {0, ..., n-1} in image form: p(i) = images[i].
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {}

  static Permutation identity(std::size_t n) {
    std::vector<std::uint8_t> im(n);
    std::iota(im.begin(), im.end(), std::uint8_t{0});
    return Permutation(std::move(im));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint8_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint8_t> &images() const noexcept { return images_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  /// Left-to-right product: (a * b)(i) = b(a(i)), so words act on the right.
  friend Permutation operator*(const Permutation &a, const Permutation &b) {
    std::vector<std::uint8_t> im(a.degree());
    for (std::size_t i = 0; i < im.size(); ++i)
      im[i] = b.images_[a.images_[i]];
    return Permutation(std::move(im));
  }

  Permutation inverse() const {
    std::vector<std::uint8_t> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i)
      im[images_[i]] = static_cast<std::uint8_t>(i);
    return Permutation(std::move(im));
  }

  /// Packs into 4 bits per point; injective for degree <= 16.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (std::uint8_t v : images_)
      k = (k << 4) | v;
    return k;
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
  std::vector<std::uint8_t> images_;
};

/// Cycle notation with 1-based points, e.g. "(1 2)(3 4)"; "()" for identity.
inline std::string to_string(const Permutation &p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i)
      continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/// A homomorphism from a free group to S_degree, given on generators.
struct PermutationAssignment {
  std::size_t degree = 0;
  std::vector<Permutation> images; ///< indexed by generator
};

inline Permutation evaluate(const Word &w, const PermutationAssignment &a) {
  Permutation out = Permutation::identity(a.degree);
  for (const Letter &l : w.letters())
    out = out * (l.sign > 0 ? a.images.at(l.generator) : a.images.at(l.generator).inverse());
  return out;
}

/// True iff every relator of `p` maps to the identity.
inline bool satisfies(const FinitePresentation &p, const PermutationAssignment &a) {
  if (a.images.size() != p.num_generators())
    return false;
  return std::all_of(p.relators().begin(), p.relators().end(),
                     [&](const Word &r) { return evaluate(r, a).is_identity(); });
}

/// Elements of the subgroup generated by `gens`, by breadth-first closure.
inline std::vector<Permutation> generated_subgroup(const std::vector<Permutation> &gens,
                                                   std::size_t degree) {
  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::unordered_set<std::uint64_t> seen{elements[0].key()};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const Permutation &g : gens) {
      Permutation next = elements[i] * g;
      if (seen.insert(next.key()).second)
        elements.push_back(std::move(next));
    }
  return elements;
}

inline std::size_t order_of(const Permutation &p) {
  std::size_t order = 1;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

/// True iff the image subgroup is cyclic: it contains an element whose order
/// equals the subgroup order.
inline bool image_is_cyclic(const PermutationAssignment &a) {
  const auto elements = generated_subgroup(a.images, a.degree);
  const std::size_t n = elements.size();
  return std::any_of(elements.begin(), elements.end(),
                     [n](const Permutation &g) { return order_of(g) == n; });
}

namespace detail {

/// All permutations of degree n in lexicographic order of image vectors.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  std::vector<std::uint8_t> im(n);
  std::iota(im.begin(), im.end(), std::uint8_t{0});
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// One permutation per conjugacy class of S_n: for each partition of n
/// (parts in decreasing order), the product of consecutive-point cycles.
inline std::vector<Permutation> conjugacy_representatives(std::size_t n) {
  std::vector<Permutation> out;
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> build = [&](std::size_t remaining,
                                                           std::size_t max_part) {
    if (remaining == 0) {
      std::vector<std::uint8_t> im(n);
      std::size_t start = 0;
      for (std::size_t len : parts) {
        for (std::size_t k = 0; k < len; ++k)
          im[start + k] = static_cast<std::uint8_t>(start + (k + 1) % len);
        start += len;
      }
      out.emplace_back(std::move(im));
      return;
    }
    for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
      parts.push_back(part);
      build(remaining - part, part);
      parts.pop_back();
    }
  };
  build(n, n);
  // Identity (all 1-cycles) first, then by cycle type in lexicographic order.
  std::reverse(out.begin(), out.end());
  return out;
}

/// Backtracking over generator images in S_degree. Generator 0 ranges over
/// conjugacy class representatives (the accepted properties are conjugation
/// invariant), the rest over all permutations; a generator that occurs once
/// in a relator whose other generators are already assigned is solved for
/// directly. Relators are checked as soon as their generators are assigned.
class QuotientSearch {
public:
  using Predicate = std::function<bool(const PermutationAssignment &)>;

  QuotientSearch(const FinitePresentation &p, std::size_t degree, Predicate accept)
      : p_(p), degree_(degree), accept_(std::move(accept)),
        all_(all_permutations(degree)), reps_(conjugacy_representatives(degree)) {
    const std::size_t n = p.num_generators();
    for (const Word &r : p.relators()) {
      std::size_t top = 0;
      for (const Letter &l : r.letters())
        top = std::max<std::size_t>(top, l.generator);
      last_generator_.push_back(top);
    }
    solvers_.assign(n, std::nullopt);
    for (std::size_t g = 1; g < n; ++g)
      for (std::size_t ri = 0; ri < p.relators().size(); ++ri)
        if (last_generator_[ri] == g && occurrences(p.relators()[ri], static_cast<std::uint32_t>(g)) == 1) {
          solvers_[g] = ri;
          break;
        }
    assignment_.degree = degree;
    assignment_.images.assign(n, Permutation::identity(degree));
  }

  std::optional<PermutationAssignment> run() {
    if (p_.num_generators() == 0) {
      return accept_(assignment_) ? std::optional(assignment_) : std::nullopt;
    }
    if (assign(0))
      return assignment_;
    return std::nullopt;
  }

private:
  bool assign(std::size_t g) {
    if (g == p_.num_generators())
      return accept_(assignment_);
    if (solvers_[g]) {
      assignment_.images[g] = solve(*solvers_[g], static_cast<std::uint32_t>(g));
      return consistent(g) && assign(g + 1);
    }
    const auto &candidates = g == 0 ? reps_ : all_;
    for (const Permutation &candidate : candidates) {
      assignment_.images[g] = candidate;
      if (consistent(g) && assign(g + 1))
        return true;
    }
    return false;
  }

  // r = u g^e v with u, v free of g, so g^e = u^-1 v^-1.
  Permutation solve(std::size_t relator, std::uint32_t g) const {
    const Word &r = p_.relators()[relator];
    std::size_t at = 0;
    while (r[at].generator != g)
      ++at;
    const auto &ls = r.letters();
    const Word u(std::span<const Letter>(ls.data(), at));
    const Word v(std::span<const Letter>(ls.data() + at + 1, ls.size() - at - 1));
    const Permutation target = evaluate(u, assignment_).inverse() * evaluate(v, assignment_).inverse();
    return r[at].sign > 0 ? target : target.inverse();
  }

  bool consistent(std::size_t g) const {
    for (std::size_t ri = 0; ri < p_.relators().size(); ++ri)
      if (last_generator_[ri] == g && !evaluate(p_.relators()[ri], assignment_).is_identity())
        return false;
    return true;
  }

  const FinitePresentation &p_;
  std::size_t degree_;
  Predicate accept_;
  std::vector<Permutation> all_;
  std::vector<Permutation> reps_;
  std::vector<std::size_t> last_generator_;
  std::vector<std::optional<std::size_t>> solvers_;
  PermutationAssignment assignment_;
};

} // namespace detail

/// Searches degrees 2..max_degree, lowest first, for a homomorphism to a
/// symmetric group satisfying every relator and accepted by `accept`, which
/// must be invariant under simultaneous conjugation of the images.
inline std::optional<PermutationAssignment>
find_quotient(const FinitePresentation &p, std::size_t max_degree,
              const std::function<bool(const PermutationAssignment &)> &accept) {
  max_degree = std::min(max_degree, max_supported_degree);
  for (std::size_t degree = 2; degree <= max_degree; ++degree) {
    auto found = detail::QuotientSearch(p, degree, accept).run();
    if (found)
      return found;
  }
  return std::nullopt;
}

/// A permutation quotient with non-cyclic image, certifying that the group
/// is not infinite cyclic (every quotient of Z is cyclic). nullopt is
/// inconclusive; the search is exhaustive up to `max_degree`.
inline std::optional<PermutationAssignment>
find_noncyclic_quotient(const FinitePresentation &p, std::size_t max_degree = default_max_degree) {
  return find_quotient(p, max_degree,
                       [](const PermutationAssignment &a) { return !image_is_cyclic(a); });
}

} // namespace pochette

#endif
