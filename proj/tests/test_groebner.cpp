#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"

using namespace pmx;
using pmx::testing::ideal_of;
using pmx::testing::named_ring;
using pmx::testing::P;

namespace {

template <class F>
std::set<std::string> texts(const std::vector<Polynomial<F>>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.to_string());
  return out;
}

// Largest set of variables meeting no support, by trying every subset.
std::size_t brute_force_codim(const std::vector<std::uint32_t>& supports, std::size_t nvars) {
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << nvars); ++s) {
    bool independent = std::none_of(supports.begin(), supports.end(), [&](auto m) { return (m & ~s) == 0; });
    if (independent) best = std::max<std::size_t>(best, std::popcount(s));
  }
  return nvars - best;
}

}  // namespace

TEST(Groebner, PrincipalIdealIsItsOwnBasis) {
  auto r = matrix_ring(PrimeField(32003), 2);
  auto gb = groebner(r, {P(r, "3*x[1,1]*x[2,2]-3*x[1,2]*x[2,1]")});
  ASSERT_EQ(gb.size(), 1u);
  // grevlex leads with x[1,2]*x[2,1], so the monic form flips the sign
  EXPECT_EQ(gb.elements()[0], P(r, "x[1,2]*x[2,1]-x[1,1]*x[2,2]"));
}

TEST(Groebner, LexExample) {
  auto r = named_ring(Rationals{}, {"x", "y"}, TermOrder::lex());
  auto gb = groebner(r, {P(r, "x^2-1"), P(r, "x*y-1")});
  EXPECT_EQ(texts(gb.elements()), (std::set<std::string>{P(r, "x-y").to_string(), P(r, "y^2-1").to_string()}));
}

TEST(Groebner, LexExampleMatchesHandReduction) {
  // mutual containment, independent of the basis shape
  auto r = named_ring(PrimeField(32003), {"x", "y"}, TermOrder::lex());
  auto a = ideal_of(r, {"x^2-1", "x*y-1"});
  auto b = ideal_of(r, {"x-y", "y^2-1"});
  EXPECT_TRUE(equal(a, b));
}

TEST(Groebner, PrincipalOneMinorsAreTheDiagonal) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto r = matrix_ring(PrimeField(32003), n);
    auto gb = principal_minor_ideal(r, 1).groebner();
    std::vector<Polynomial<PrimeField>> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(Polynomial<PrimeField>::variable(r, i * n + i));
    EXPECT_EQ(texts(gb->elements()), texts(diag));
  }
}

TEST(Groebner, BasisIsReduced) {
  auto r = matrix_ring(PrimeField(32003), 3);
  auto gb = determinantal_ideal(r, 2).groebner();
  const auto& els = gb->elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    EXPECT_TRUE(r->field().is_one(els[i].leading_coeff()));
    for (std::size_t j = 0; j < els.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : els[j].terms()) EXPECT_FALSE(els[i].leading_monomial().divides(t.mono));
    }
  }
}

TEST(Groebner, PairBudgetIsReported) {
  auto r = matrix_ring(PrimeField(32003), 3);
  try {
    groebner(r, determinantal_ideal(r, 2).generators(), Budget{1, 1'000'000});
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), 1u);
  }
}

TEST(NormalForm, Basics) {
  auto r = matrix_ring(PrimeField(32003), 3);
  auto gb = principal_minor_ideal(r, 2).groebner();
  auto one = Polynomial<PrimeField>::constant(r, 1);
  EXPECT_EQ(gb->normal_form(one), one);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto g = pmx::testing::random_poly(r, rng, 6, 3);
    auto nf = gb->normal_form(g);
    EXPECT_EQ(gb->normal_form(nf), nf);
    for (const auto& t : nf.terms())
      for (const auto& lm : gb->leading_monomials()) EXPECT_FALSE(lm.divides(t.mono));
  }
}

TEST(NormalForm, FTimesDeltaReducesToZeroModP3) {
  auto r = matrix_ring(PrimeField(32003), 4);
  auto gb = principal_minor_ideal(r, 3).groebner();
  EXPECT_TRUE(gb->normal_form(f_polynomial(r) * determinant_of_generic(r)).is_zero());
}

TEST(Membership, Examples) {
  auto r = matrix_ring(PrimeField(32003), 4);
  EXPECT_TRUE(ideal_member(determinant_of_generic(r), determinantal_ideal(r, 3)));
  auto p3 = principal_minor_ideal(r, 3);
  EXPECT_FALSE(ideal_member(f_polynomial(r), p3));
  EXPECT_TRUE(ideal_member(f_polynomial(r), q_ideal(r)));
}

TEST(Eliminate, InverseVariable) {
  auto r = named_ring(Rationals{}, {"t", "x", "y"});
  auto i = ideal_of(r, {"t*x-1", "t*y"});
  auto e = eliminate(i, 0b001);
  EXPECT_TRUE(equal(e, ideal_of(r, {"y"})));
  EXPECT_TRUE(equal(eliminate(i, 0), i));
}

TEST(Eliminate, AllVariablesOfProperIdealGivesZero) {
  auto r = named_ring(PrimeField(7), {"x", "y"});
  EXPECT_EQ(eliminate(ideal_of(r, {"x*y", "x^2"}), 0b11).size(), 0u);
  EXPECT_THROW(eliminate(ideal_of(r, {"x"}), 0b100), std::invalid_argument);
}

TEST(Intersect, Examples) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  auto xy = intersect(ideal_of(r, {"x"}), ideal_of(r, {"y"}));
  EXPECT_TRUE(equal(xy, ideal_of(r, {"x*y"})));
  auto i = ideal_of(r, {"x^2", "x*y+y^3"});
  EXPECT_TRUE(equal(intersect(i, i), i));
}

TEST(Colon, Examples) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  EXPECT_TRUE(equal(colon(ideal_of(r, {"x*y"}), P(r, "x")), ideal_of(r, {"y"})));
  EXPECT_TRUE(is_unit(colon(ideal_of(r, {"x"}), P(r, "x"))));
  EXPECT_THROW(colon(ideal_of(r, {"x"}), P(r, "0")), std::invalid_argument);
  auto two = colon_ideal(ideal_of(r, {"x*y", "x^2"}), ideal_of(r, {"x", "y"}));
  EXPECT_TRUE(equal(two, ideal_of(r, {"x"})));
}

TEST(Saturate, Examples) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  EXPECT_TRUE(equal(saturate(ideal_of(r, {"x^2*y"}), P(r, "x")), ideal_of(r, {"y"})));
  auto m = matrix_ring(PrimeField(32003), 2);
  auto sat = saturate(principal_minor_ideal(m, 1), determinant_of_generic(m));
  EXPECT_TRUE(equal(sat, ideal_of(m, {"x[1,1]", "x[2,2]"})));
}

TEST(Saturate, MethodsAgree) {
  auto r = named_ring(PrimeField(32003), {"x", "y", "z"});
  auto i = ideal_of(r, {"x^2*y - x*z^2", "x*y^2 - z^3"});
  auto a = saturate(i, P(r, "x"), {}, Method::elimination);
  auto b = saturate(i, P(r, "x"), {}, Method::last_variable);
  EXPECT_TRUE(equal(a, b));
  EXPECT_FALSE(equal(a, i));
  auto inhomogeneous = ideal_of(r, {"x^2*y - x*z"});
  EXPECT_THROW(saturate(inhomogeneous, P(r, "x"), {}, Method::last_variable), std::invalid_argument);
  EXPECT_TRUE(equal(saturate(inhomogeneous, P(r, "x")), ideal_of(r, {"x*y - z"})));
  auto m = matrix_ring(PrimeField(32003), 3);
  auto p2 = principal_minor_ideal(m, 2);
  auto d = determinant_of_generic(m);
  EXPECT_TRUE(equal(colon(p2, d, {}, Method::elimination), colon(p2, d, {}, Method::last_variable)));
}

TEST(Codim, Examples) {
  auto r3 = matrix_ring(PrimeField(32003), 3);
  EXPECT_EQ(codim(principal_minor_ideal(r3, 2)), 3u);
  auto r4 = matrix_ring(PrimeField(32003), 4);
  EXPECT_EQ(codim(determinantal_ideal(r4, 3)), 4u);
  EXPECT_EQ(codim(q_ideal(r4)), 4u);
  for (std::size_t n = 2; n <= 4; ++n) EXPECT_EQ(codim(principal_minor_ideal(matrix_ring(PrimeField(32003), n), 1)), n);
  EXPECT_THROW(codim(Ideal<PrimeField>::unit(r3)), std::domain_error);
}

TEST(Codim, MonomialCodimMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nvars = 1 + rng() % 12;
    std::vector<std::uint32_t> supports(1 + rng() % 6);
    for (auto& s : supports) {
      do s = static_cast<std::uint32_t>(rng() & ((1u << nvars) - 1)) & static_cast<std::uint32_t>(rng());
      while (s == 0);
    }
    EXPECT_EQ(monomial_codim(supports, nvars), brute_force_codim(supports, nvars));
  }
}

TEST(Radical, Examples) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  EXPECT_TRUE(radical_member(P(r, "x"), ideal_of(r, {"x^2"})));
  EXPECT_TRUE(radical_member(P(r, "x+y"), ideal_of(r, {"(x+y)^3"})));
  EXPECT_FALSE(radical_member(P(r, "y"), ideal_of(r, {"x^2"})));
  EXPECT_TRUE(radical_member(P(r, "x+y"), ideal_of(r, {"(x+y)^3", "x^5"}), {}, Method::elimination));
  auto m = matrix_ring(PrimeField(32003), 4);
  EXPECT_FALSE(radical_member(determinant_of_generic(m), principal_minor_ideal(m, 3)));
}

TEST(CompleteIntersection, Examples) {
  auto r3 = matrix_ring(PrimeField(32003), 3);
  EXPECT_TRUE(is_complete_intersection(principal_minor_ideal(r3, 2)));
  auto r4 = matrix_ring(PrimeField(32003), 4);
  EXPECT_TRUE(is_complete_intersection(principal_minor_ideal(r4, 3)));
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  EXPECT_FALSE(is_complete_intersection(ideal_of(r, {"x*y", "x"})));
}

TEST(SingularLocus, Examples) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  EXPECT_EQ(singular_locus_codim(ideal_of(r, {"x*y"})), std::optional<std::size_t>(2));
  auto m2 = matrix_ring(PrimeField(32003), 2);
  EXPECT_EQ(singular_locus_codim(principal_minor_ideal(m2, 2)), std::optional<std::size_t>(4));
  auto m3 = matrix_ring(PrimeField(32003), 3);
  auto s = singular_locus_codim(principal_minor_ideal(m3, 2));
  ASSERT_TRUE(s);
  EXPECT_GE(*s, 5u);
  EXPECT_FALSE(singular_locus_codim(ideal_of(r, {"x"})));
}

TEST(MinimalGenerators, DropsRedundantOnes) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  auto gens = minimal_generators(ideal_of(r, {"x", "x*y", "y^2", "x^2+y^2"}));
  EXPECT_EQ(gens.size(), 2u);
}
