#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pochette/abelian.hpp"
#include "pochette/coset_enum.hpp"

using namespace pochette;

namespace {

const Alphabet xy({"x", "y"});

Word w(std::string_view text) { return parse_word(text, xy); }

FinitePresentation pres(std::string_view text) { return parse_presentation(text); }

/// Order of the concrete group generated by `gens`, after checking that the
/// generators satisfy every relator (so the concrete group is a quotient).
std::size_t concrete_order(const FinitePresentation &p, const std::vector<oracle::Perm> &gens) {
  for (const Word &r : p.relators())
    REQUIRE(oracle::evaluate(r, gens) == oracle::identity(gens[0].size()));
  return oracle::close_under_products(gens).elements.size();
}

const std::vector<oracle::Perm> s3_gens{{1, 0, 2}, {1, 2, 0}};        // (1 2), (1 2 3)
const std::vector<oracle::Perm> s3_coxeter{{1, 0, 2}, {0, 2, 1}};     // (1 2), (2 3)
const std::vector<oracle::Perm> d8_gens{{1, 2, 3, 0}, {0, 3, 2, 1}};  // rotation, reflection

} // namespace

TEST_CASE("cyclic groups match the cyclic oracle") {
  const Alphabet x({"x"});
  for (std::size_t n = 1; n <= 50; ++n) {
    const FinitePresentation p(x, {Word::generator(0, static_cast<int>(n))});
    const auto r = enumerate(p, {}, 1000);
    INFO("n = " << n);
    REQUIRE(r.completed());
    CHECK(r.index == oracle::cyclic_order(n));
    CHECK(r.table.is_closed_under(p));
  }
}

TEST_CASE("S3 and D8 orders match brute-force multiplication tables") {
  const auto s3 = pres("gens: a, b\nrels: a^2; b^3; a b a b");
  CHECK(enumerate(s3, {}, 100).index == concrete_order(s3, s3_gens));
  const auto cox = pres("gens: a, b\nrels: a^2; b^2; a b a b a b");
  CHECK(enumerate(cox, {}, 100).index == concrete_order(cox, s3_coxeter));
  CHECK(enumerate(cox, {}, 100).index == 6);
  const auto d8 = pres("gens: x, y\nrels: y^2; x y x y; x^4");
  CHECK(enumerate(d8, {}, 100).index == concrete_order(d8, d8_gens));
  CHECK(enumerate(d8, {}, 100).index == 8);
}

TEST_CASE("enumerate examples") {
  const auto spun = FinitePresentation(xy, {w("y x^-1 y x y^-1 x"), w("y^2 x")});
  const auto r = enumerate(spun, {}, 100000);
  REQUIRE(r.completed());
  CHECK(r.index == 1);

  CHECK(enumerate(pres("gens:\nrels:"), {}, 1).index == 1);
  CHECK(enumerate(pres("gens: x\nrels:"), {}, 50).outcome == EnumerationResult::Outcome::Overflow);
  CHECK(enumerate(pres("gens: x, y\nrels:"), {}, 500).outcome ==
        EnumerationResult::Outcome::Overflow);

  const auto s3 = pres("gens: a, b\nrels: a^2; b^3; a b a b");
  const auto index3 = enumerate(s3, {parse_word("a", s3.alphabet())}, 100);
  CHECK(index3.index == 3);
  CHECK_THROWS_AS(enumerate(FinitePresentation(xy), {Word::generator(5)}, 10), AlphabetMismatch);
}

TEST_CASE("certify_trivial") {
  CHECK(certify_trivial(pres("gens:\nrels:")).kind == TrivialityVerdict::Kind::Trivial);

  const Word v = w("x y x^-1");
  const FinitePresentation lemma(
      xy, {v * w("x") * v.inverse() * w("y"), w("y") * w("x y").power(3)});
  CHECK(certify_trivial(lemma).kind == TrivialityVerdict::Kind::Trivial);

  const auto two = certify_trivial(pres("gens: x\nrels: x^2"));
  CHECK(two.kind == TrivialityVerdict::Kind::NonTrivial);
  CHECK(two.order == 2);

  CHECK(certify_trivial(pres("gens: x\nrels:"), 100).kind == TrivialityVerdict::Kind::Unknown);
}

TEST_CASE("subgroup_membership against the dihedral oracle") {
  const auto d8 = pres("gens: x, y\nrels: y^2; x y x y; x^4");
  const auto group = oracle::close_under_products(d8_gens);
  std::vector<oracle::Perm> rotations;
  for (int k = 0; k < 4; ++k)
    rotations.push_back(oracle::evaluate(Word::generator(0, k == 0 ? 4 : k), d8_gens));

  CHECK(subgroup_membership(d8, {w("x")}, w("x^3"), 100) == Membership::InSubgroup);
  CHECK(subgroup_membership(d8, {w("x")}, w("y"), 100) == Membership::NotInSubgroup);
  CHECK(subgroup_membership(d8, {w("x")}, Word{}, 1) == Membership::InSubgroup);
  CHECK(subgroup_membership(pres("gens: x, y\nrels:"), {w("x")}, w("y"), 100) ==
        Membership::Unknown);

  std::mt19937_64 rng(88);
  std::uniform_int_distribution<int> pick(0, 3), len(0, 9);
  for (int trial = 0; trial < 300; ++trial) {
    Word c;
    for (int n = len(rng); n > 0; --n) {
      const int k = pick(rng);
      c *= Word::generator(static_cast<std::uint32_t>(k / 2), k % 2 ? -1 : 1);
    }
    const bool expected = std::count(rotations.begin(), rotations.end(),
                                     oracle::evaluate(c, d8_gens)) > 0;
    INFO(to_string(c, xy));
    REQUIRE((subgroup_membership(d8, {w("x")}, c, 100) == Membership::InSubgroup) == expected);
  }
  CHECK(group.elements.size() == 8);
}

TEST_CASE("completed tables are closed and stable under reordering and renaming") {
  const std::vector<std::string> texts{
      "gens: a, b\nrels: a^2; b^3; a b a b",
      "gens: x, y\nrels: y^2; x y x y; x^4",
      "gens: a, b\nrels: a^3; b^3; a b a b",       // A4, order 12
      "gens: a, b\nrels: a^2; b^3; a b a b a b a b", // S4, order 24
      "gens: a, b\nrels: a^2; b^3; (a b)^5",          // rejected below
  };
  for (std::size_t k = 0; k + 1 < texts.size(); ++k) {
    const auto p = pres(texts[k]);
    const auto r = enumerate(p, {}, 10000);
    REQUIRE(r.completed());
    CHECK(r.table.is_closed_under(p));

    std::vector<Word> reversed(p.relators().rbegin(), p.relators().rend());
    CHECK(enumerate(FinitePresentation(p.alphabet(), reversed), {}, 10000).index == r.index);

    std::map<std::uint32_t, Word> swap{{0, Word::generator(1)}, {1, Word::generator(0)}};
    std::vector<Word> renamed;
    for (const Word &rel : p.relators())
      renamed.push_back(substitute(rel, swap));
    CHECK(enumerate(FinitePresentation(Alphabet({"u", "v"}), renamed), {}, 10000).index ==
          r.index);

    for (std::size_t bound : {r.stats.max_live, r.stats.max_live * 2, std::size_t{10000}})
      CHECK(enumerate(p, {}, bound).index == r.index);
  }
  CHECK(enumerate(pres(texts[2]), {}, 10000).index == 12);
  CHECK(enumerate(pres(texts[3]), {}, 10000).index == 24);
  CHECK_THROWS_AS(pres(texts[4]), ParseError);
}

TEST_CASE("abelian groups: enumeration order equals the order from invariants") {
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      const std::string text = "gens: a, b\nrels: a^" + std::to_string(m) + "; b^" +
                               std::to_string(n) + "; a b a^-1 b^-1";
      const auto p = pres(text);
      const auto inv = abelian_invariants(p);
      REQUIRE(inv.free_rank == 0);
      Integer order = 1;
      for (Integer t : inv.torsion)
        order *= t;
      INFO(text);
      CHECK(enumerate(p, {}, 1000).index == static_cast<std::size_t>(order));
    }
}

TEST_CASE("overflow respects the live-coset budget") {
  const auto r = enumerate(pres("gens: x, y\nrels: x^2; y^3"), {}, 300);
  CHECK_FALSE(r.completed());
  CHECK(r.stats.max_live <= 300);
}
