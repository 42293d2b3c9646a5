#include <random>

#include <gtest/gtest.h>

#include "hfp/graded.hpp"
#include "hfp/parse.hpp"
#include "oracles.hpp"

using namespace hfp;

namespace {

GeneratorSetPtr set_of(std::vector<Generator> g, TruncationIdeal t = {}) { return make_generator_set(std::move(g), t); }

Monomial from_word(std::size_t n, const std::vector<int>& word)
{
    Monomial m(n);
    for (int g : word) ++m[g];
    return m;
}

}  // namespace

TEST(Graded, OddSquareVanishes)
{
    auto s = set_of({{"e", 3}});
    auto e = Polynomial::generator(s, 0);
    EXPECT_TRUE((e * e).is_zero());
}

TEST(Graded, OddGeneratorsAnticommute)
{
    auto s = set_of({{"a", 3}, {"b", 5}});
    auto a = Polynomial::generator(s, "a");
    auto b = Polynomial::generator(s, "b");
    EXPECT_TRUE((a * b + b * a).is_zero());
    EXPECT_EQ(b * a, a * b * Rational(-1));
}

TEST(Graded, TruncationKillsPower)
{
    auto s = set_of({{"x", 4}}, {{0, 3}});
    auto x = Polynomial::generator(s, 0);
    EXPECT_FALSE((x * x).is_zero());
    EXPECT_TRUE((x * x * x).is_zero());
}

TEST(Graded, MismatchedSetsThrow)
{
    auto a = Polynomial::generator(set_of({{"x", 2}}), 0);
    auto b = Polynomial::generator(set_of({{"y", 2}}), 0);
    EXPECT_THROW(a * b, GeneratorSetMismatch);
    EXPECT_THROW(a + b, GeneratorSetMismatch);
}

TEST(Graded, DuplicateNamesRejected) { EXPECT_ANY_THROW(set_of({{"x", 2}, {"x", 4}})); }

TEST(Graded, BasisExamples)
{
    auto s1 = set_of({{"x", 4}}, {{0, 3}});
    auto b1 = monomial_basis(*s1, 8);
    ASSERT_EQ(b1.size(), 1u);
    EXPECT_EQ(b1[0][0], 2);

    auto s2 = set_of({{"e", 4}, {"e'", 7}});
    auto b2 = monomial_basis(*s2, 11);
    ASSERT_EQ(b2.size(), 1u);
    EXPECT_EQ(b2[0], Monomial(std::vector<int>{1, 1}));

    auto s3 = set_of({{"e", 2}, {"e'", 7}});
    auto b3 = monomial_basis(*s3, 6);
    ASSERT_EQ(b3.size(), 1u);
    EXPECT_EQ(b3[0], Monomial(std::vector<int>{3, 0}));

    EXPECT_TRUE(monomial_basis(*s2, 5).empty());
    EXPECT_TRUE(monomial_basis(*s2, -3).empty());
}

TEST(Graded, BasisClosedFormForTruncatedPolynomial)
{
    for (int xdeg : {2, 4, 6})
        for (int m = 1; m <= 6; ++m) {
            auto s = set_of({{"x", xdeg}}, {{0, m}});
            for (int d = 0; d <= 40; ++d)
                EXPECT_EQ(monomial_basis(*s, d).size(), oracle::truncated_count(xdeg, m, d)) << xdeg << " " << m << " " << d;
        }
}

TEST(Graded, BasisCountMatchesRecursion)
{
    std::vector<Generator> g{{"a", 2}, {"b", 3}, {"c", 4}, {"d", 5}, {"e", 6}};
    auto s = set_of(g, {{2, 3}});
    std::vector<oracle::Gen> og{{2, 0}, {3, 0}, {4, 3}, {5, 0}, {6, 0}};
    for (int d = 0; d <= 30; ++d) {
        auto basis = monomial_basis(*s, d);
        EXPECT_EQ(basis.size(), oracle::basis_count(og, d)) << d;
        EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
        EXPECT_EQ(std::set<Monomial>(basis.begin(), basis.end()).size(), basis.size());
    }
}

TEST(Graded, UntruncatedNonpositiveGeneratorRejected)
{
    auto s = set_of({{"u", 0}, {"v", 3}});
    EXPECT_THROW(monomial_basis(*s, 3), std::domain_error);
}

TEST(Graded, KoszulSignAgainstWordOracle)
{
    std::mt19937 rng(20261016);
    std::vector<Generator> g;
    std::vector<oracle::Gen> og;
    for (int i = 0; i < 8; ++i) {
        const int d = 1 + static_cast<int>(rng() % 9);
        g.push_back({"g" + std::to_string(i), d});
        og.push_back({d, 0});
    }
    auto s = set_of(g);
    int nonzero = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> wa, wb;
        const int la = 1 + rng() % 4, lb = 1 + rng() % 4;
        for (int i = 0; i < la; ++i) wa.push_back(rng() % g.size());
        for (int i = 0; i < lb; ++i) wb.push_back(rng() % g.size());
        // Canonical forms of the two factors, with their own sorting signs.
        auto ca = oracle::word_product(og, wa, {});
        auto cb = oracle::word_product(og, wb, {});
        if (!ca || !cb) continue;
        auto expect = oracle::word_product(og, ca->second, cb->second);
        auto pa = Polynomial::monomial(s, from_word(g.size(), ca->second));
        auto pb = Polynomial::monomial(s, from_word(g.size(), cb->second));
        const auto prod = pa * pb;
        if (!expect) {
            EXPECT_TRUE(prod.is_zero());
            continue;
        }
        ++nonzero;
        Polynomial want = Polynomial::monomial(s, from_word(g.size(), expect->second), expect->first);
        EXPECT_EQ(prod, want);
        // graded commutativity
        const int da = *pa.degree(), db = *pb.degree();
        EXPECT_EQ(pb * pa, prod * Rational((da * db) % 2 ? -1 : 1));
    }
    EXPECT_GT(nonzero, 200);
}

TEST(Graded, AssociativeAndDistributive)
{
    std::mt19937 rng(7);
    auto s = set_of({{"a", 1}, {"b", 2}, {"c", 3}, {"x", 4}}, {{3, 4}});
    auto random_poly = [&]() {
        Polynomial p(s);
        const int terms = 1 + rng() % 3;
        for (int t = 0; t < terms; ++t) {
            Monomial m(4);
            m[0] = rng() % 2;
            m[1] = rng() % 3;
            m[2] = rng() % 2;
            m[3] = rng() % 4;
            const int num = static_cast<int>(rng() % 7) - 3;
            Rational c(num, 1 + static_cast<int>(rng() % 3));
            c.canonicalize();
            p += Polynomial::monomial(s, m, c);
        }
        return p;
    };
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_poly(), q = random_poly(), r = random_poly();
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ((p + q) * r, p * r + q * r);
    }
}

TEST(Graded, ReductionIdempotent)
{
    auto s = set_of({{"x", 4}, {"e", 3}}, {{0, 3}});
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 3; ++b) {
            auto once = Polynomial::monomial(s, Monomial(std::vector<int>{a, b}));
            Polynomial twice(s);
            for (const auto& [m, c] : once.terms()) twice += Polynomial::monomial(s, m, c);
            EXPECT_EQ(once, twice);
            EXPECT_EQ(once.is_zero(), a >= 3 || b >= 2);
        }
}

TEST(Graded, PolynomialDegree)
{
    auto s = set_of({{"x", 4}, {"e", 3}});
    auto p = parse_polynomial("x^2 + 3*x*e", s);
    EXPECT_FALSE(p.degree());
    EXPECT_EQ(*parse_polynomial("x*e", s).degree(), 7);
    EXPECT_FALSE(Polynomial(s).degree());
}

TEST(Parse, GrammarAndParameters)
{
    auto s = set_of({{"x", 4}, {"e", 4}, {"e'", 7}});
    ParamMap params{{"lambda", Rational(3, 2)}};
    auto p = parse_polynomial("e^2 + lambda*x*e - 1/2 x^2", s, params);
    Polynomial want = power(Polynomial::generator(s, "e"), 2) +
                      Polynomial::generator(s, "x") * Polynomial::generator(s, "e") * Rational(3, 2) -
                      power(Polynomial::generator(s, "x"), 2) * Rational(1, 2);
    EXPECT_EQ(p, want);
    EXPECT_EQ(parse_polynomial(p.to_string(), s), p);
}

TEST(Parse, Errors)
{
    auto s = set_of({{"x", 4}});
    EXPECT_THROW(parse_polynomial("", s), ParseError);
    EXPECT_THROW(parse_polynomial("x +", s), ParseError);
    EXPECT_THROW(parse_polynomial("y", s), ParseError);
    EXPECT_THROW(parse_polynomial("1/0", s), ParseError);
    EXPECT_THROW(parse_polynomial("x +* x", s), ParseError);
    EXPECT_THROW(parse_polynomial("*x", s), ParseError);
    EXPECT_THROW(parse_polynomial("x x", s), ParseError);
    EXPECT_EQ(parse_polynomial("2x", s), parse_polynomial("2*x", s));
    try {
        parse_polynomial("x + zz", s);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 4u);
    }
}

TEST(Parse, BracketNames)
{
    auto s = set_of({{"e'[x^2]", -1}, {"e[1]", 4}});
    auto p = parse_polynomial("e[1]*e'[x^2]", s);
    EXPECT_EQ(p.to_string(), "e'[x^2]*e[1]");
}

TEST(Graded, BasisWhenOddGeneratorOvershoots)
{
    // y (5) taken once overshoots degree 3; the even generator after it must not be read as unbounded.
    auto s = set_of({{"y", 5}, {"a", 2}, {"b", 3}});
    EXPECT_EQ(monomial_basis(*s, 3).size(), 1u);
    EXPECT_EQ(monomial_basis(*s, 4).size(), 1u);
    EXPECT_EQ(monomial_basis(*s, 7).size(), 2u);
}
