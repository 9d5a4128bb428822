#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace pmx;
using pmx::testing::named_ring;
using pmx::testing::P;

namespace {

// Cofactor expansion along the first row, on plain integers.
long long int_det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * m[0][c] * int_det(sub);
  }
  return total;
}

template <class F>
PolyMatrix<F> constant_matrix(const RingPtr<F>& ring, const std::vector<std::vector<long long>>& ints) {
  PolyMatrix<F> out;
  for (const auto& row : ints) {
    std::vector<Polynomial<F>> r;
    for (auto v : row) r.push_back(Polynomial<F>::constant(ring, ring->field().from_int(v)));
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(MonomialOrder, GrevlexPrefersEarlierVariableAtEqualDegree) {
  Monomial a{2, 0}, b{1, 1};
  EXPECT_EQ(cmp_monomials(a, b, TermOrder::grevlex()), std::strong_ordering::greater);
}

TEST(MonomialOrder, LexIgnoresDegree) {
  Monomial a{1, 0}, b{0, 5};
  EXPECT_EQ(cmp_monomials(a, b, TermOrder::lex()), std::strong_ordering::greater);
}

TEST(MonomialOrder, BlockRanksEliminatedVariableFirst) {
  // variables (x1, t); t is eliminated
  Monomial t{0, 1}, x100{100, 0};
  EXPECT_EQ(cmp_monomials(t, x100, TermOrder::block(0b10)), std::strong_ordering::greater);
  EXPECT_EQ(cmp_monomials(x100, x100, TermOrder::block(0b10)), std::strong_ordering::equal);
}

TEST(MonomialOrder, LengthMismatchThrows) {
  EXPECT_THROW(cmp_monomials(Monomial{1}, Monomial{1, 0}, TermOrder::grevlex()), std::invalid_argument);
}

TEST(MonomialOrder, ExponentOverflowThrows) {
  Monomial a(1);
  a.set(0, kMaxExponent);
  EXPECT_THROW(a * a, std::overflow_error);
  EXPECT_THROW(a.set(0, kMaxExponent + 1), std::overflow_error);
}

TEST(MonomialOrder, GrevlexIsTotalAndMultiplicativeOnSmallMonomials) {
  std::vector<Monomial> all;
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b)
      for (unsigned c = 0; c < 3; ++c) all.push_back(Monomial{a, b, c});
  for (const auto& ord : {TermOrder::grevlex(), TermOrder::lex(), TermOrder::block(0b001)}) {
    for (const auto& a : all) {
      EXPECT_NE(cmp_monomials(a, Monomial(3), ord), std::strong_ordering::less);
      for (const auto& b : all) {
        auto ab = cmp_monomials(a, b, ord);
        EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
        for (const auto& c : all) EXPECT_EQ(cmp_monomials(a * c, b * c, ord), ab);
      }
    }
  }
}

TEST(PolyArith, DifferenceOfSquares) {
  auto r = named_ring(PrimeField(32003), {"x", "y"});
  EXPECT_EQ(P(r, "(x+y)*(x-y)"), P(r, "x^2-y^2"));
  EXPECT_TRUE((P(r, "x+y") * P(r, "0")).is_zero());
}

TEST(PolyArith, FrobeniusInCharacteristicTwo) {
  auto r = named_ring(PrimeField(2), {"x", "y"});
  EXPECT_EQ(P(r, "(x+y)^2"), P(r, "x^2+y^2"));
  EXPECT_EQ(P(r, "x+x"), P(r, "0"));
}

TEST(PolyArith, RationalCoefficientsStayExact) {
  auto r = named_ring(Rationals{}, {"x"});
  auto half = P(r, "x/2");
  EXPECT_EQ(half + half, P(r, "x"));
  EXPECT_EQ(half.to_string(), "1/2*x");
}

TEST(PolyArith, RingMismatchThrows) {
  auto a = named_ring(PrimeField(7), {"x", "y"});
  auto b = named_ring(PrimeField(7), {"x", "z"});
  EXPECT_THROW(P(a, "x") + P(b, "x"), std::invalid_argument);
  EXPECT_THROW(P(a, "x") * P(b, "x"), std::invalid_argument);
}

TEST(PolyArith, CanonicalFormHasNoZerosOrDuplicates) {
  auto r = named_ring(PrimeField(5), {"x", "y"});
  auto p = P(r, "x*y + 4*x*y + y - y + 3");
  EXPECT_EQ(p, Polynomial<PrimeField>::constant(r, 3));
  auto q = P(r, "y + x^2 + x*y");
  ASSERT_EQ(q.size(), 3u);
  for (std::size_t i = 1; i < q.size(); ++i)
    EXPECT_EQ(cmp_monomials(q.terms()[i - 1].mono, q.terms()[i].mono, r->order()), std::strong_ordering::greater);
}

TEST(PolyDet, TwoByTwoGeneric) {
  auto r = matrix_ring(PrimeField(32003), 2);
  EXPECT_EQ(determinant_of_generic(r), P(r, "x[1,1]*x[2,2]-x[1,2]*x[2,1]"));
}

TEST(PolyDet, ExampleMatrixHasDeterminantMinusOne) {
  auto ints = example_rank4_witness();
  ASSERT_EQ(int_det(ints), -1);
  auto r = matrix_ring(Rationals{}, 4);
  auto d = poly_det(constant_matrix(r, ints), r);
  EXPECT_EQ(d, Polynomial<Rationals>::constant(r, -1));
}

TEST(PolyDet, IdentityAndNonSquare) {
  auto r = matrix_ring(PrimeField(101), 3);
  EXPECT_EQ(poly_det(constant_matrix(r, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), r), Polynomial<PrimeField>::constant(r, 1));
  EXPECT_THROW(poly_det(constant_matrix(r, {{1, 0}, {0, 1}, {1, 1}}), r), std::invalid_argument);
}

TEST(PolyDet, AgreesWithLeibnizSymbolically) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto r = matrix_ring(Rationals{}, n);
    auto x = generic_matrix(r);
    EXPECT_EQ(poly_det(x, r), leibniz_det(x, r)) << "n=" << n;
  }
}

TEST(PolyDet, AgreesWithIntegerOracleOnRandomMatrices) {
  std::mt19937_64 rng(7);
  auto r = matrix_ring(Rationals{}, 4);
  for (int trial = 0; trial < 25; ++trial) {
    auto ints = pmx::testing::random_int_matrix(4, rng);
    auto d = poly_det(constant_matrix(r, ints), r);
    EXPECT_EQ(d, Polynomial<Rationals>::constant(r, int_det(ints)));
  }
}

TEST(Evaluate, DeterminantAtIdentity) {
  PrimeField k(32003);
  auto r = matrix_ring(k, 4);
  auto id = scalar_matrix(k, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  auto pt = flatten<PrimeField>(id);
  EXPECT_EQ(determinant_of_generic(r).evaluate(std::span<const std::uint32_t>(pt)), 1u);
}

TEST(Evaluate, PrincipalThreeMinorsVanishAtExampleMatrix) {
  Rationals k;
  auto r = matrix_ring(k, 4);
  auto pt = flatten<Rationals>(scalar_matrix(k, example_rank4_witness()));
  for (const auto& mu : principal_minors(r, 3)) EXPECT_EQ(mu.evaluate(std::span<const mpq_class>(pt)), 0);
}

TEST(Evaluate, FVanishesAtIdentity) {
  PrimeField k(32003);
  auto r = matrix_ring(k, 4);
  auto f = f_polynomial(r);
  // every term carries an off-diagonal variable
  for (const auto& t : f.terms()) {
    bool off = false;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j && t.mono[i * 4 + j]) off = true;
    EXPECT_TRUE(off);
  }
  auto pt = flatten<PrimeField>(scalar_matrix(k, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(f.evaluate(std::span<const std::uint32_t>(pt)), 0u);
}

TEST(Evaluate, UnassignedVariableThrows) {
  auto r = named_ring(PrimeField(7), {"x", "y"});
  std::map<std::size_t, std::uint32_t> only_x{{0, 3}};
  EXPECT_EQ(P(r, "x^2+1").evaluate(only_x), 3u);
  EXPECT_THROW(P(r, "x*y").evaluate(only_x), std::invalid_argument);
}

TEST(Multidegree, SingleVariable) {
  auto r = matrix_ring(PrimeField(32003), 4);
  auto d = multidegree(P(r, "x[1,2]"));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->rows, (std::vector<unsigned>{1, 0, 0, 0}));
  EXPECT_EQ(d->cols, (std::vector<unsigned>{0, 1, 0, 0}));
}

TEST(Multidegree, FIsAllOnes) {
  auto r = matrix_ring(PrimeField(32003), 4);
  auto d = multidegree(f_polynomial(r));
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, (Multidegree{{1, 1, 1, 1}, {1, 1, 1, 1}}));
}

TEST(Multidegree, MixedColumnsAreNotHomogeneous) {
  auto r = matrix_ring(PrimeField(32003), 4);
  EXPECT_FALSE(multidegree(P(r, "x[1,1]+x[1,2]")));
  EXPECT_THROW(multidegree(P(r, "0")), std::domain_error);
}

TEST(Multidegree, RowAndColumnSumsEqualTotalDegree) {
  auto r = matrix_ring(PrimeField(32003), 3);
  for (std::size_t t = 1; t <= 3; ++t)
    for (const auto& mu : principal_minors(r, t)) {
      auto d = multidegree(mu);
      ASSERT_TRUE(d);
      EXPECT_EQ(std::accumulate(d->rows.begin(), d->rows.end(), 0u), mu.total_degree());
      EXPECT_EQ(std::accumulate(d->cols.begin(), d->cols.end(), 0u), mu.total_degree());
    }
}

TEST(Parse, RoundTripOnCanonicalText) {
  auto r = matrix_ring(PrimeField(32003), 3);
  auto i2 = determinantal_ideal(r, 2);
  for (const auto& g : i2.generators()) {
    auto text = g.to_string();
    EXPECT_EQ(P(r, text).to_string(), text);
  }
  auto q = matrix_ring(Rationals{}, 2);
  auto p = P(q, " 3/4 * x[1,1]^2 - (x[1,2] + 2)*x[2,1] ");
  EXPECT_EQ(P(q, p.to_string()), p);
}

TEST(Parse, Errors) {
  auto r = matrix_ring(PrimeField(32003), 2);
  EXPECT_THROW(P(r, "x[3,1]"), ParseError);
  EXPECT_THROW(P(r, "x[1,1] +"), ParseError);
  EXPECT_THROW(P(r, "(x[1,1]"), ParseError);
  EXPECT_THROW(P(r, "x[1,1]^70000"), ParseError);
  EXPECT_THROW(P(r, "x[1,1] $"), ParseError);
  EXPECT_THROW(P(r, "x[1,1]/x[1,2]"), ParseError);
}

TEST(Parse, IdealFileHeader) {
  auto text = parse_ideal_text("# comment\nring n=2 field=Fp:7\nx[1,1]*x[2,2]-x[1,2]*x[2,1]  # det\n\n");
  EXPECT_EQ(text.n, 2u);
  EXPECT_EQ(text.field.p, 7u);
  ASSERT_EQ(text.generators.size(), 1u);
  EXPECT_THROW(parse_ideal_text("x[1,1]\n"), ParseError);
  EXPECT_THROW(parse_ideal_text("ring n=9 field=Q\n"), ParseError);
  EXPECT_THROW(parse_ideal_text("ring n=2 field=Fp:8\n"), std::invalid_argument);
}

TEST(Parse, MatrixLiteral) {
  EXPECT_EQ(parse_matrix_literal("1 2; 3 4"), (std::vector<std::vector<long long>>{{1, 2}, {3, 4}}));
  EXPECT_THROW(parse_matrix_literal("1 2; 3"), ParseError);
  EXPECT_THROW(parse_matrix_literal("1 a; 3 4"), ParseError);
}

TEST(Field, PrimeValidation) {
  EXPECT_THROW(PrimeField(9), std::invalid_argument);
  EXPECT_EQ(FieldSpec::parse("Q").name(), "Q");
  EXPECT_EQ(FieldSpec::parse("Fp:32003").name(), "Fp:32003");
  EXPECT_THROW(FieldSpec::parse("R"), std::invalid_argument);
}
