#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pochette/abelian.hpp"

using namespace pochette;

namespace {

const Alphabet xy({"x", "y"});

Word w(std::string_view text) { return parse_word(text, xy); }

std::vector<Integer> diagonal_of(const IntegerMatrix &s) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
    out.push_back(static_cast<Integer>(s(i, i)));
  return out;
}

void check_smith_form(const IntegerMatrix &m) {
  const SmithForm f = smith_normal_form(m);
  const IntegerMatrix &s = f.diagonal;
  INFO("M =\n" << to_string(m) << "S =\n" << to_string(s));
  REQUIRE(multiply(multiply(f.left, m), f.right) == s);
  REQUIRE(boost::multiprecision::abs(oracle::det_of<BigInteger>(f.left)) == 1);
  REQUIRE(boost::multiprecision::abs(oracle::det_of<BigInteger>(f.right)) == 1);
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c)
      if (r != c)
        REQUIRE(s(r, c) == 0);
  const auto d = diagonal_of(s);
  for (std::size_t i = 0; i < d.size(); ++i) {
    REQUIRE(d[i] >= 0);
    if (i + 1 < d.size()) {
      if (d[i] == 0)
        REQUIRE(d[i + 1] == 0);
      else
        REQUIRE(d[i + 1] % d[i] == 0);
    }
  }
}

} // namespace

TEST_CASE("smith_normal_form examples") {
  const auto s = smith_normal_form(IntegerMatrix(2, 2, {2, 0, 0, 3}));
  CHECK(s.diagonal == IntegerMatrix(2, 2, {1, 0, 0, 6}));

  const IntegerMatrix zero(2, 3);
  const auto z = smith_normal_form(zero);
  CHECK(z.diagonal == zero);
  CHECK(z.left == IntegerMatrix::identity(2));
  CHECK(z.right == IntegerMatrix::identity(3));

  CHECK(smith_normal_form(IntegerMatrix(1, 1, {-7})).diagonal == IntegerMatrix(1, 1, {7}));

  check_smith_form(IntegerMatrix(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16}));
  CHECK(diagonal_of(smith_normal_form(IntegerMatrix(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16})).diagonal) ==
        std::vector<Integer>{2, 6, 12});
  check_smith_form(IntegerMatrix(0, 3));
  check_smith_form(IntegerMatrix(3, 0));
}

TEST_CASE("smith_normal_form overflow guard") {
  const BigInteger big = BigInteger(1) << 40;
  const IntegerMatrix m(2, 2, {big, 1, 0, big});
  CHECK_THROWS_AS(smith_normal_form(m, 50), OverflowGuard);
  CHECK(smith_normal_form(m).diagonal == IntegerMatrix(2, 2, {1, 0, 0, big * big}));
  CHECK_THROWS_AS(smith_normal_form(IntegerMatrix(1, 1, {big}), 40), OverflowGuard);
  CHECK_NOTHROW(smith_normal_form(IntegerMatrix(2, 2, {6, 4, 4, 6}), 8));
}

TEST_CASE("smith_normal_form agrees with the determinantal-divisor oracle") {
  std::mt19937_64 rng(977);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<Integer> entry(-9, 9);
  std::bernoulli_distribution sparse(0.3);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    IntegerMatrix m(rows, cols);
    oracle::Matrix om(rows, std::vector<oracle::Int>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        m(r, c) = om[r][c] = sparse(rng) ? 0 : entry(rng);
    check_smith_form(m);
    REQUIRE(diagonal_of(smith_normal_form(m).diagonal) ==
            oracle::invariant_factors_by_minors(om, cols));
  }
}

TEST_CASE("abelian_invariants") {
  CHECK(abelian_invariants(FinitePresentation(xy, {w("y x^-1 y x y^-1 x"), w("y^2 x")})).is_trivial());
  CHECK(abelian_invariants(FinitePresentation(Alphabet({"x"}))) == AbelianInvariants::free(1));
  CHECK(to_string(abelian_invariants(FinitePresentation(Alphabet({"x"})))) == "Z");

  for (const char *text : {"1", "x", "y^-2 x y", "x y x^-1 y^-1 x", "y^3 x^-5"}) {
    const Word v = w(text);
    const FinitePresentation knot(xy, {v * w("x") * v.inverse() * w("y")});
    INFO(text);
    CHECK(abelian_invariants(knot).is_infinite_cyclic());
  }

  const auto mixed =
      abelian_invariants(parse_presentation("gens: a, b, c, d\nrels: a^2; b^4; a b^2 a"));
  CHECK(mixed.free_rank == 2);
  CHECK(mixed.torsion == std::vector<Integer>{2, 2});
  CHECK(to_string(mixed) == "Z/2 x Z/2 x Z^2");
  CHECK(to_string(abelian_invariants(parse_presentation("gens: a, b\nrels: a^4 b^6; a^6 b^4"))) == "Z/2 x Z/10");
  CHECK(to_string(AbelianInvariants{}) == "0");
  CHECK(to_string(AbelianInvariants::cyclic(-3)) == "Z/3");
  CHECK(AbelianInvariants::cyclic(1).is_trivial());
}

TEST_CASE("hom_to_z") {
  const auto spun = hom_to_z(FinitePresentation(xy, {w("y x^-1 y x y^-1 x")}));
  REQUIRE(spun);
  CHECK(*spun == std::vector<Integer>{1, -1});

  CHECK(*hom_to_z(FinitePresentation(Alphabet({"x"}))) == std::vector<Integer>{1});
  CHECK_FALSE(hom_to_z(FinitePresentation(xy)));
  CHECK_FALSE(hom_to_z(FinitePresentation(Alphabet({"x"}), {w("x^2")})));

  const auto lead_zero = hom_to_z(parse_presentation("gens: a, b, c\nrels: a; b^-2 c^-1"));
  REQUIRE(lead_zero);
  CHECK(*lead_zero == std::vector<Integer>{0, 1, -2});

  const auto images = *hom_to_z(parse_presentation("gens: a, b\nrels: a^3 b^-2"));
  CHECK(images == std::vector<Integer>{2, 3});
  CHECK(evaluate_abelian(parse_word("a b^-1 a", Alphabet({"a", "b"})), images) == 1);
}
