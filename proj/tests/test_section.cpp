#include <random>

#include <gtest/gtest.h>

#include "hfp/repro.hpp"
#include "oracles.hpp"
#include "random_models.hpp"

using namespace hfp;

namespace {

std::vector<FibrationModel> catalog_instances()
{
    std::vector<FibrationModel> out;
    for (const auto& [label, f] : prop1_instances()) out.push_back(f);
    out.push_back(cp_s3(2, {0}));
    out.push_back(cp_s3(2, {1}));
    out.push_back(cp_s3(4, {1, 0}));
    return out;
}

Polynomial gen(const Cdga& c, const std::string& name) { return c.gen(name); }

}  // namespace

TEST(Section, DegreeCensusMatchesMultiset)
{
    for (const auto& f : catalog_instances()) {
        const auto s = build_section_model(f);
        std::map<int, std::size_t> want;
        for (const auto& v : f.fiber.generators().generators())
            for (const auto& a : full_basis(f.base.generators())) ++want[v.degree - degree(f.base.generators(), a)];
        EXPECT_EQ(degree_census(s.cdga), want) << f.family;
        EXPECT_EQ(s.cdga.size(), f.fiber_size() * full_basis(f.base.generators()).size());
    }
}

TEST(Section, OddSphereDegrees)
{
    const auto s = build_section_model(sphere_odd_s3(11));
    std::multiset<int> degs;
    for (const auto& g : s.cdga.generators().generators()) degs.insert(g.degree);
    EXPECT_EQ(degs, (std::multiset<int>{3, 7, 11}));
    for (const auto& d : s.cdga.differential()) EXPECT_TRUE(d.is_zero());
    EXPECT_EQ(build_section_model(sphere_odd_s3(5)).cdga.size(), 2u);
    EXPECT_EQ(build_section_model(sphere_odd_s3(3)).cdga.size(), 1u);
}

TEST(Section, EtaDifferential)
{
    const auto s = build_section_model(eilenberg_product_s1(4));
    // y_j := y[x^{3-j}] (degree 2j-1), z_i := z[x^{2-i}] (degree 2i): dy_j = z_j for j <= 2.
    EXPECT_EQ(s.cdga.d(s.cdga.generators().index_of("y[x^2]")), gen(s.cdga, "z[x]"));
    EXPECT_EQ(s.cdga.d(s.cdga.generators().index_of("y[x]")), gen(s.cdga, "z[1]"));
    EXPECT_TRUE(s.cdga.d(s.cdga.generators().index_of("y[1]")).is_zero());
}

TEST(Section, LinearPartLambda)
{
    for (int l : {1, 2, -1}) {
        const auto f = sphere_4k_s3(1, l);
        const auto s = build_section_model(f);
        const auto comps = enumerate_components(f);
        ASSERT_EQ(comps.size(), 2u);
        // y_1 = e'[x] has d = λ x_1 at the zero retraction.
        const auto zero = std::find_if(comps.begin(), comps.end(), [](const Retraction& r) {
            return r.values[0].is_zero();
        });
        ASSERT_NE(zero, comps.end());
        const auto cz = component_model(s, *zero);
        EXPECT_EQ(linear_part(cz.cdga).rank(3), 1u);
        EXPECT_EQ(cz.cdga.d(cz.cdga.generators().index_of("e'[x]")), cz.cdga.gen("e[1]") * Rational(l));
    }
}

TEST(Section, RetractionRoots)
{
    for (int k : {1, 2}) {
        for (int l : {1, -1, 2, 3}) {
            const auto f = sphere_4k_s3(k, l);
            std::set<mpq_class> got;
            for (const auto& r : enumerate_components(f)) {
                const auto& v = r.values[0];
                ASSERT_LE(v.terms().size(), 1u);
                got.insert(v.is_zero() ? mpq_class(0) : v.terms().begin()->second);
                if (!v.is_zero()) {
                    EXPECT_EQ(v.terms().begin()->first[0], k);
                }
            }
            EXPECT_EQ(got, oracle::quadratic_roots(l));
        }
    }
}

TEST(Section, RescalingKeepsComponentCount)
{
    for (int k : {1, 2})
        for (const Rational& l : {Rational(1), Rational(-2, 3), Rational(5)})
            EXPECT_EQ(enumerate_components(sphere_4k_s3(k, l)).size(), 2u);
}

TEST(Section, ComponentCounts)
{
    for (const auto& f : catalog_instances()) {
        const bool two = f.family == "sphere_4k_s3" && f.params.at("lambda") != 0;
        EXPECT_EQ(enumerate_components(f).size(), two ? 2u : 1u) << f.family;
    }
}

TEST(Section, ComponentModelsValidateAndArePositive)
{
    for (const auto& f : catalog_instances()) {
        const auto s = build_section_model(f);
        for (const auto& r : enumerate_components(f)) {
            EXPECT_FALSE(validate(r.morphism(f)));
            const auto c = component_model(s, r);
            EXPECT_FALSE(validate(c.cdga));
            for (const auto& g : c.cdga.generators().generators()) EXPECT_GT(g.degree, 0);
        }
    }
}

TEST(Section, SphereFourKZeroComponent)
{
    const auto f = sphere_4k_s3(1, 0);
    const auto c = component_model(build_section_model(f), enumerate_components(f).at(0));
    EXPECT_EQ(c.cdga.size(), 3u);
    EXPECT_TRUE(c.cdga.d(c.cdga.generators().index_of("e'[x]")).is_zero());
    EXPECT_EQ(c.cdga.d(c.cdga.generators().index_of("e'[1]")), power(c.cdga.gen("e[1]"), 2));
}

TEST(Section, TrivialFibrationCensusMatchesBookkeeping)
{
    struct Case {
        FibrationModel f;
        int xdeg, m;
        std::vector<int> fiber_degrees;
    };
    std::vector<Case> cases{{sphere_4k_s3(1, 0), 4, 3, {4, 7}},
                            {sphere_4k_s3(2, 0), 4, 5, {8, 15}},
                            {sphere_4k2_s3(1), 4, 3, {6, 11}},
                            {sphere_4k2_s3(2), 4, 5, {10, 19}}};
    for (int n : {5, 7, 11}) cases.push_back({sphere_odd_s3(n), 4, (n - 3 + 3) / 4 + 1, {n}});
    for (const auto& c : cases) {
        const int cutoff = c.f.total.cutoff();
        const auto comps = analyze_components(c.f, cutoff);
        ASSERT_EQ(comps.size(), 1u);
        const auto want = oracle::mapping_census(oracle::truncated_betti_degrees(c.xdeg, c.m), c.fiber_degrees);
        std::map<int, std::size_t> got;
        for (int k = 1; k <= cutoff; ++k)
            if (comps[0].fingerprint.pi[k]) got[k] = comps[0].fingerprint.pi[k];
        EXPECT_EQ(got, want) << c.f.family;
    }
}

TEST(Section, RandomTwoLayerFibrationsSquareToZero)
{
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        FibrationModel f;
        ASSERT_NO_THROW(f = testing_models::random_two_layer(rng)) << trial;
        SectionSpaceModel s;
        ASSERT_NO_THROW(s = build_section_model(f)) << serialize(f);
        EXPECT_FALSE(validate(s.cdga));
    }
}
