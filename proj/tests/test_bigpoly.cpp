#include <gtest/gtest.h>

#include <random>

#include "pisot/bigpoly.hpp"

using namespace pisot;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, int degree, int span) {
    std::uniform_int_distribution<long> d(-span, span);
    std::vector<BigInt> c;
    for (int i = 0; i < degree; ++i) c.emplace_back(d(rng));
    long lead = 0;
    while (lead == 0) lead = d(rng);
    c.emplace_back(lead);
    return IntPolynomial(std::move(c));
}

} // namespace

TEST(IntPolynomial, TrimsAndRepresentsZero) {
    IntPolynomial z;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    IntPolynomial c = IntPolynomial::constant(0);
    EXPECT_EQ(c, z);
    EXPECT_NE(IntPolynomial::constant(5), z);
    EXPECT_EQ(IntPolynomial::constant(5).degree(), 0);
    EXPECT_EQ((IntPolynomial{1, 2, 0, 0}).degree(), 1);
}

TEST(IntPolynomial, ParseAndPrint) {
    auto p = IntPolynomial::parse("1, -1, -2, 0, 1");
    EXPECT_EQ(p, (IntPolynomial{1, -1, -2, 0, 1}));
    EXPECT_EQ(p.to_string(), "x^4 - 2*x^2 - x + 1");
    EXPECT_EQ(IntPolynomial::parse("+3").to_string(), "3");
    EXPECT_THROW(IntPolynomial::parse("1,,2"), InvalidParameters);
    EXPECT_THROW(IntPolynomial::parse("1,x"), InvalidParameters);
    auto big = IntPolynomial::parse("123456789012345678901234567890,1");
    EXPECT_EQ(big.coeff(0).get_str(), "123456789012345678901234567890");
}

TEST(PolyArith, Examples) {
    IntPolynomial xm1{-1, 1}, golden{-1, -1, 1};
    EXPECT_EQ(poly_arith(xm1, golden, ArithOp::mul), (IntPolynomial{1, 0, -2, 1}));
    EXPECT_EQ(poly_arith(golden, IntPolynomial{}, ArithOp::add), golden);
    EXPECT_EQ(poly_arith(IntPolynomial{1, 1}, xm1, ArithOp::mul), (IntPolynomial{-1, 0, 1}));
    EXPECT_TRUE(poly_arith(golden, golden, ArithOp::sub).is_zero());
}

TEST(PolyArith, DegreeOfProductIsAdditive) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        auto a = random_poly(rng, static_cast<int>(rng() % 6), 9);
        auto b = random_poly(rng, static_cast<int>(rng() % 6), 9);
        EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
        EXPECT_EQ(poly_exact_div(a * b, b), a);
    }
}

TEST(PolyExactDiv, Examples) {
    EXPECT_EQ(poly_exact_div(IntPolynomial{1, 0, 0, -2, 1}, IntPolynomial{-1, 1}), (IntPolynomial{-1, -1, -1, 1}));
    IntPolynomial p{3, 1, 4};
    EXPECT_EQ(poly_exact_div(p, IntPolynomial{1}), p);
    EXPECT_EQ(poly_exact_div(IntPolynomial{-1, 0, 1}, IntPolynomial{1, 1}), (IntPolynomial{-1, 1}));
    EXPECT_THROW(poly_exact_div(IntPolynomial{1, 0, 1}, IntPolynomial{1, 1}), NonExactDivision);
    EXPECT_THROW(poly_exact_div(IntPolynomial{1, 1}, IntPolynomial{2, 2, 2}), NonExactDivision);
}

TEST(Symmetry, Examples) {
    EXPECT_EQ(classify_symmetry(IntPolynomial{1, 3, 0, 3, 1}), SymmetryClass::palindromic);
    EXPECT_EQ(classify_symmetry(IntPolynomial{-1, -2, 2, 1}), SymmetryClass::anti_palindromic);
    EXPECT_EQ(classify_symmetry(IntPolynomial{-1, -1, -1, 1}), SymmetryClass::none);
    // x^2 - x - 1 satisfies the semi-palindromic clauses: a_0 = -a_2, a_1 = a_1
    EXPECT_EQ(classify_symmetry(IntPolynomial{-1, -1, 1}), SymmetryClass::semi_palindromic);
    // even i: a_i = -a_{n-i}; odd i: a_i = a_{n-i}
    EXPECT_EQ(classify_symmetry(IntPolynomial{-1, 2, 0, 2, 1}), SymmetryClass::semi_palindromic);
    EXPECT_THROW(classify_symmetry(IntPolynomial{4}), InvalidParameters);
}

TEST(Symmetry, OddDegreeSemiClassIsEmpty) {
    // for odd n the i = 0 and i = n clauses force a_0 = 0
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        auto p = random_poly(rng, 3 + 2 * static_cast<int>(rng() % 3), 3);
        if (p.coeff(0) == 0) continue;
        EXPECT_NE(classify_symmetry(p), SymmetryClass::semi_palindromic) << p.to_string();
    }
}

TEST(Symmetry, ReversalPreservesPalindromicClasses) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::uniform_int_distribution<long> d(-4, 4);
        std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
        const int sign = (rng() & 1) ? 1 : -1;
        for (int i = 0; i <= n / 2; ++i) {
            long v = d(rng);
            if (i == 0 && v == 0) v = 1;
            c[static_cast<std::size_t>(i)] = v;
            c[static_cast<std::size_t>(n - i)] = sign * v;
        }
        if (n % 2 == 0 && sign < 0) c[static_cast<std::size_t>(n / 2)] = 0;
        IntPolynomial p(c);
        const auto cls = classify_symmetry(p);
        EXPECT_EQ(cls, sign > 0 ? SymmetryClass::palindromic : SymmetryClass::anti_palindromic);
        EXPECT_EQ(classify_symmetry(p.reversed()), cls);
    }
}

TEST(Pair, Examples) {
    IntPolynomial g{-1, -1, 1};
    // -x^2 - x + 1 is the reversal of x^2 - x - 1
    EXPECT_EQ(classify_pair(g, IntPolynomial{1, -1, -1}), PairRelation::reciprocal);
    EXPECT_EQ(classify_pair(g, IntPolynomial{-1, 1, 1}), PairRelation::anti_reciprocal);
    IntPolynomial pal{1, 3, 0, 3, 1};
    EXPECT_EQ(classify_pair(pal, pal.reversed()), PairRelation::reciprocal);
    EXPECT_EQ(classify_pair(g, IntPolynomial{1, 1, 1}), PairRelation::none);
    EXPECT_THROW(classify_pair(g, IntPolynomial{1, 1}), DegreeMismatch);
}

TEST(Pair, SelfReciprocalIffPalindromicAndSymmetric) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 400; ++t) {
        const int n = 1 + static_cast<int>(rng() % 5);
        auto p = random_poly(rng, n, 2);
        auto q = (rng() & 1) ? p.reversed() : random_poly(rng, n, 2);
        if (q.degree() != n) continue;
        EXPECT_EQ(classify_pair(p, p) == PairRelation::reciprocal, classify_symmetry(p) == SymmetryClass::palindromic);
        EXPECT_EQ(classify_pair(p, q), classify_pair(q, p)) << p.to_string() << " / " << q.to_string();
    }
}

TEST(Families, AlphaBetaExamples) {
    EXPECT_EQ(alpha_poly(1), (IntPolynomial{-1, -1, 1}));
    EXPECT_EQ(alpha_poly(2), (IntPolynomial{-1, 1, -2, 1}));
    EXPECT_EQ(alpha_poly(3), (IntPolynomial{-1, 1, 0, -2, 1}));
    EXPECT_EQ(beta_poly(1), (IntPolynomial{-1, -1, 1}));
    EXPECT_EQ(beta_poly(2), (IntPolynomial{-1, -1, -1, 1}));
    EXPECT_EQ(beta_poly(3), (IntPolynomial{-1, -1, -1, -1, 1}));
    EXPECT_EQ(alpha_poly(1), beta_poly(1));
    EXPECT_THROW(alpha_poly(0), InvalidParameters);
    EXPECT_THROW(beta_poly(0), InvalidParameters);
}

TEST(Families, Invariants) {
    const IntPolynomial xm1{-1, 1};
    for (long n = 1; n <= 20; ++n) {
        auto rhs = IntPolynomial::monomial(1, static_cast<std::size_t>(n + 2)) -
                   IntPolynomial::monomial(2, static_cast<std::size_t>(n + 1)) + IntPolynomial::constant(1);
        EXPECT_EQ(xm1 * beta_poly(n), rhs);
        EXPECT_EQ(family_poly(Family::heart, 2, n, 1), alpha_poly(n));
        EXPECT_TRUE(beta_poly(n).is_monic());
        EXPECT_EQ(beta_poly(n).degree(), n + 1);
    }
}

TEST(Families, LogEquationPolynomials) {
    EXPECT_EQ(family_poly(Family::heart, 2, 2, 1), (IntPolynomial{-1, 1, -2, 1}));
    EXPECT_EQ(family_poly(Family::club, 2, 2), (IntPolynomial{1, 0, -2, 1}));
    EXPECT_EQ(family_poly(Family::spade, 2, 1), (IntPolynomial{-1, -2, 1}));
    EXPECT_THROW(family_poly(Family::heart, 3, 2, 3), InvalidParameters);
    EXPECT_THROW(family_poly(Family::heart, 3, 2, 0), InvalidParameters);
    EXPECT_THROW(family_poly(Family::club, 1, 2), InvalidParameters);
    EXPECT_EQ(parse_family("spade"), Family::spade);
    EXPECT_FALSE(parse_family("diamond").has_value());
}

TEST(Evaluation, SignAtDyadicMatchesExactValue) {
    IntPolynomial p{-1, -1, 1};
    // p(3/2) = 9/4 - 3/2 - 1 < 0, p(7/4) > 0
    EXPECT_LT(p.sign_at_dyadic(BigInt(3), 1), 0);
    EXPECT_GT(p.sign_at_dyadic(BigInt(7), 2), 0);
    EXPECT_EQ(IntPolynomial({-4, 0, 1}).sign_at_dyadic(BigInt(4), 1), 0);
    EXPECT_EQ(p(BigInt(2)), 1);
}
