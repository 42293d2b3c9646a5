#include <random>

#include <gtest/gtest.h>

#include "hfp/cdga.hpp"
#include "hfp/parse.hpp"
#include "oracles.hpp"

using namespace hfp;

namespace {

Cdga make(std::vector<Generator> g, std::vector<std::string> d, int cutoff, TruncationIdeal t = {})
{
    auto s = make_generator_set(std::move(g), t);
    std::vector<Polynomial> ds;
    for (const auto& text : d) ds.push_back(text.empty() ? Polynomial(s) : parse_polynomial(text, s));
    return Cdga(s, std::move(ds), cutoff);
}

// Dense brute force: enumerate monomials by exponent recursion, rank densely.
std::vector<std::size_t> brute_betti(const Cdga& c, int max_degree)
{
    const auto& set = c.generators();
    auto enumerate = [&](int deg) {
        std::vector<Monomial> out;
        Monomial cur(set.size());
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i == set.size()) {
                if (left == 0) out.push_back(cur);
                return;
            }
            const int dg = set.degree(i);
            int cap = dg % 2 ? 1 : left / dg;
            if (set.truncation(i)) cap = std::min(cap, set.truncation(i) - 1);
            for (int e = 0; e <= cap && e * dg <= left; ++e) {
                cur[i] = e;
                rec(i + 1, left - e * dg);
            }
            cur[i] = 0;
        };
        rec(0, deg);
        return out;
    };
    auto matrix = [&](int deg) {
        const auto src = enumerate(deg), tgt = enumerate(deg + 1);
        std::vector<std::vector<mpq_class>> rows;
        for (const auto& m : src) {
            std::vector<mpq_class> row(tgt.size());
            const auto img = c.apply_d(Polynomial::monomial(c.set(), m));
            for (const auto& [tm, coef] : img.terms())
                row[std::find(tgt.begin(), tgt.end(), tm) - tgt.begin()] = coef;
            rows.push_back(row);
        }
        return std::make_pair(src.size(), oracle::dense_rank(rows));
    };
    std::vector<std::size_t> out;
    std::size_t prev_rank = 0;
    for (int k = 0; k <= max_degree; ++k) {
        auto [dim, r] = matrix(k);
        out.push_back(dim - r - prev_rank);
        prev_rank = r;
    }
    return out;
}

}  // namespace

TEST(Cdga, ValidateExamples)
{
    EXPECT_FALSE(validate(make({{"e", 4}, {"e'", 7}}, {"", "e^2"}, 16)));
    auto xi = make({{"x", 4}, {"e", 4}, {"e'", 7}}, {"", "", "e^2 + 2*x*e"}, 16, {{0, 3}});
    EXPECT_FALSE(validate(xi));
    auto broken = make({{"x", 4}, {"e", 4}, {"e'", 7}}, {"", "", "e^2 + x"}, 16);
    auto v = validate(broken);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->generator_name, "e'");
    EXPECT_EQ(v->kind, "degree");
}

TEST(Cdga, ValidateReportsDSquared)
{
    // d(b) = a, d(c) = b*a with |a| = 2: d^2(c) = a^2 != 0.
    auto c = make({{"a", 2}, {"b", 1}, {"c", 2}}, {"", "a", "a*b"}, 8);
    auto v = validate(c);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->generator_name, "c");
    EXPECT_EQ(v->kind, "d^2");
}

TEST(Cdga, CohomologyExamples)
{
    auto s4 = make({{"e", 4}, {"e'", 7}}, {"", "e^2"}, 20);
    auto b = cohomology(s4, 12);
    for (int k = 0; k <= 12; ++k) EXPECT_EQ(b[k], (k == 0 || k == 4) ? 1u : 0u) << k;

    for (int m = 1; m <= 5; ++m) {
        auto a = make({{"x", 4}}, {""}, 30, {{0, m}});
        auto bb = cohomology(a, 24);
        for (int k = 0; k <= 24; ++k) EXPECT_EQ(bb[k], oracle::truncated_count(4, m, k)) << m << " " << k;
    }
}

TEST(Cdga, CohomologyAgainstBruteForce)
{
    std::vector<Cdga> cases{
        make({{"x1", 4}, {"y2", 7}}, {"", "x1^2"}, 20),
        make({{"e", 2}, {"e'", 7}}, {"", "e^4"}, 20),
        make({{"a", 2}, {"b", 2}, {"y", 3}, {"z", 5}}, {"", "", "a*b", "a^3 - b^3"}, 16),
        make({{"x", 2}, {"y", 3}, {"u", 4}, {"v", 7}}, {"", "x^2", "", "u^2 + x^2*u - x^4"}, 18),
    };
    for (const auto& c : cases) {
        ASSERT_FALSE(validate(c)) << c.to_string();
        const auto b = cohomology(c, 18);
        const auto want = brute_betti(c, 18);
        for (int k = 0; k <= 18; ++k) EXPECT_EQ(b[k], want[k]) << c.to_string() << " degree " << k;
    }
}

TEST(Cdga, EulerCharacteristicOnFiniteAlgebras)
{
    // Finite-dimensional: truncated even generator and exterior generators.
    auto c = make({{"x", 2}, {"y", 3}, {"z", 5}}, {"", "x^2", "x^3"}, 20, {{0, 4}});
    ASSERT_FALSE(validate(c));
    const auto b = cohomology(c, 20);
    long chi_basis = 0, chi_betti = 0;
    for (int k = 0; k <= 20; ++k) {
        const long sign = k % 2 ? -1 : 1;
        chi_basis += sign * static_cast<long>(monomial_basis(c.generators(), k).size());
        chi_betti += sign * static_cast<long>(b[k]);
    }
    EXPECT_EQ(chi_basis, chi_betti);
}

TEST(Cdga, RenamingInvariance)
{
    auto a = make({{"x", 2}, {"y", 3}, {"u", 4}, {"v", 7}}, {"", "x^2", "", "u^2 - x^4"}, 18);
    auto b = make({{"v", 7}, {"u", 4}, {"y", 3}, {"x", 2}}, {"u^2 - x^4", "", "x^2", ""}, 18);
    EXPECT_EQ(cohomology(a, 18), cohomology(b, 18));
}

TEST(Cdga, BasisExplosionGuard)
{
    auto c = make({{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, {"", "", "", ""}, 200);
    CohomologyOptions opts;
    opts.max_basis = 50;
    try {
        cohomology(c, 40, opts);
        FAIL();
    } catch (const BasisExplosion& e) {
        EXPECT_GT(e.degree(), 0);
    }
}

TEST(Morphism, ApplyAndCompose)
{
    auto xi = make({{"x", 4}, {"e", 4}, {"e'", 7}}, {"", "", "e^2 + 3*x*e"}, 16, {{0, 3}});
    auto base = make({{"x", 4}}, {""}, 16, {{0, 3}});
    auto p = parse_polynomial("e^2 + 3*x*e", xi.set());
    CdgaMorphism sigma(xi, base, {base.gen(0), Polynomial(base.set()), Polynomial(base.set())});
    EXPECT_TRUE(sigma.apply(p).is_zero());
    CdgaMorphism tau(xi, base, {base.gen(0), base.gen(0) * Rational(-3), Polynomial(base.set())});
    EXPECT_TRUE(tau.apply(p).is_zero());
    EXPECT_FALSE(validate(tau));
    CdgaMorphism bad(xi, base, {base.gen(0), base.gen(0) * Rational(3), Polynomial(base.set())});
    EXPECT_TRUE(validate(bad));

    auto id = CdgaMorphism::identity(xi);
    EXPECT_EQ(id.apply(p), p);
    EXPECT_EQ(compose(sigma, id).apply(p), sigma.apply(p));
}

TEST(Morphism, QuasiIso)
{
    auto s4 = make({{"e", 4}, {"e'", 7}}, {"", "e^2"}, 16);
    EXPECT_TRUE(quasi_iso_check(CdgaMorphism::identity(s4), 16));
    auto pt = make({}, {}, 16);
    CdgaMorphism zero(s4, pt, {Polynomial(pt.set()), Polynomial(pt.set())});
    EXPECT_FALSE(quasi_iso_check(zero, 16));
    const auto rows = induced_on_cohomology(zero, 16);
    bool found = false;
    for (const auto& r : rows)
        if (!r.iso()) {
            EXPECT_EQ(r.degree, 4);
            found = true;
            break;
        }
    EXPECT_TRUE(found);

    // Λ(y5) -> Λ(z4, y5, w3) with dw = z: quasi-iso, and the composite with a
    // second quasi-iso stays one.
    auto small = make({{"y", 5}}, {""}, 16);
    auto big = make({{"w", 3}, {"z", 4}, {"y", 5}}, {"z", "", ""}, 16);
    CdgaMorphism incl(small, big, {big.gen("y")});
    EXPECT_TRUE(quasi_iso_check(incl, 16));
    CdgaMorphism proj(big, small, {Polynomial(small.set()), Polynomial(small.set()), small.gen("y")});
    ASSERT_FALSE(validate(proj));
    EXPECT_TRUE(quasi_iso_check(proj, 16));
    EXPECT_TRUE(quasi_iso_check(compose(proj, incl), 16));
}
