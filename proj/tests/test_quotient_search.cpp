#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pochette/quotient_search.hpp"

using namespace pochette;

namespace {

const Alphabet xy({"x", "y"});

Word w(std::string_view text) { return parse_word(text, xy); }

Permutation perm(std::vector<std::uint8_t> images) { return Permutation(std::move(images)); }

std::vector<oracle::Perm> to_oracle(const PermutationAssignment &a) {
  std::vector<oracle::Perm> out;
  for (const Permutation &p : a.images)
    out.emplace_back(p.images().begin(), p.images().end());
  return out;
}

/// Brute force: does any degree-d assignment with non-cyclic image exist?
bool oracle_has_noncyclic(const FinitePresentation &p, std::size_t degree) {
  bool found = false;
  oracle::for_each_permutation_rep(p.relators(), p.num_generators(), degree,
                                   [&](const std::vector<oracle::Perm> &images) {
                                     if (!found && !oracle::is_cyclic(images))
                                       found = true;
                                   });
  return found;
}

void check_witness(const FinitePresentation &p, const PermutationAssignment &a) {
  const auto images = to_oracle(a);
  for (const Word &r : p.relators())
    REQUIRE(oracle::evaluate(r, images) == oracle::identity(a.degree));
  REQUIRE_FALSE(oracle::is_cyclic(images));
}

} // namespace

TEST_CASE("Permutation basics") {
  const Permutation a = perm({1, 0, 2}), b = perm({0, 2, 1});
  CHECK((a * b).images() == std::vector<std::uint8_t>{2, 0, 1});
  CHECK(to_string(a * b) == "(1 3 2)");
  CHECK(to_string(Permutation::identity(4)) == "()");
  CHECK((a * a).is_identity());
  CHECK((a * b * (a * b).inverse()).is_identity());
  CHECK(order_of(perm({1, 2, 0, 4, 3})) == 6);
}

TEST_CASE("image_is_cyclic") {
  CHECK(image_is_cyclic({3, {perm({1, 2, 0})}}));
  CHECK_FALSE(image_is_cyclic({3, {perm({1, 0, 2}), perm({2, 1, 0})}}));
  CHECK(image_is_cyclic({3, {Permutation::identity(3), Permutation::identity(3)}}));
  // (1 2) and (3 4) generate the Klein four-group.
  CHECK_FALSE(image_is_cyclic({4, {perm({1, 0, 2, 3}), perm({0, 1, 3, 2})}}));
  // (1 2) and (3 4 5) generate a cyclic group of order 6.
  CHECK(image_is_cyclic({5, {perm({1, 0, 2, 3, 4}), perm({0, 1, 3, 4, 2})}}));
}

TEST_CASE("conjugacy representatives cover each cycle type once") {
  const std::size_t partitions[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (std::size_t n = 1; n <= 8; ++n)
    CHECK(detail::conjugacy_representatives(n).size() == partitions[n]);
  CHECK(detail::conjugacy_representatives(3)[0].is_identity());
}

TEST_CASE("find_noncyclic_quotient examples") {
  const FinitePresentation spun(xy, {w("y x^-1 y x y^-1 x")});
  const auto found = find_noncyclic_quotient(spun, 3);
  REQUIRE(found);
  CHECK(found->degree == 3);
  CHECK(satisfies(spun, *found));
  check_witness(spun, *found);

  CHECK_FALSE(find_noncyclic_quotient(FinitePresentation(Alphabet({"x"})), 6));
  CHECK_FALSE(find_noncyclic_quotient(FinitePresentation(xy, {w("x y^-1")}), 5));

  const auto free2 = find_noncyclic_quotient(FinitePresentation(xy), 8);
  REQUIRE(free2);
  CHECK(free2->degree == 3);

  CHECK_FALSE(find_noncyclic_quotient(spun, 1));
}

TEST_CASE("search agrees with brute force at degree 3") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> letter(0, 3), len(1, 8), count(1, 2);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Word> rels;
    for (int k = count(rng); k > 0; --k) {
      Word r;
      for (int n = len(rng); n > 0; --n) {
        const int l = letter(rng);
        r *= Word::generator(static_cast<std::uint32_t>(l / 2), l % 2 ? -1 : 1);
      }
      rels.push_back(r);
    }
    const FinitePresentation p(xy, rels);
    INFO(to_display_string(p));
    const bool expected = oracle_has_noncyclic(p, 3) || oracle_has_noncyclic(p, 2);
    const auto found = find_noncyclic_quotient(p, 3);
    REQUIRE(found.has_value() == expected);
    if (found) {
      check_witness(p, *found);
      ++positives;
    } else {
      ++negatives;
    }
  }
  CHECK(positives > 10);
  CHECK(negatives > 10);
}

TEST_CASE("forced solving handles three generators") {
  const Alphabet abc({"a", "b", "c"});
  // c is determined by a and b; the quotient onto S3 still exists.
  const auto p = parse_presentation("gens: a, b, c\nrels: c a b^-1; a^2; b^2");
  const auto found = find_noncyclic_quotient(p, 4);
  REQUIRE(found);
  check_witness(p, *found);
}
