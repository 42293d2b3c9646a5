#include <gtest/gtest.h>

#include "hfp/repro.hpp"

using namespace hfp;

namespace {

Cdga make(std::vector<Generator> g, std::vector<std::string> d, int cutoff)
{
    auto s = make_generator_set(std::move(g));
    std::vector<Polynomial> ds;
    for (const auto& text : d) ds.push_back(text.empty() ? Polynomial(s) : parse_polynomial(text, s));
    return Cdga(s, std::move(ds), cutoff);
}

}  // namespace

TEST(Decompose, EtaPair)
{
    for (int n : {2, 4, 6}) {
        const auto p = eta_pair(n);
        const auto dec = decompose_V(p);
        EXPECT_TRUE(dec.W.empty());
        ASSERT_EQ(dec.S.size(), 1u);
        ASSERT_EQ(dec.K.size(), 1u);
        EXPECT_EQ(dec.pairs[0].n, 1);
        EXPECT_EQ(dec.pairs[0].s, (SparseVector{{1, Rational(1)}}));  // y
        EXPECT_EQ(dec.pairs[0].v, (SparseVector{{0, Rational(1)}}));  // z
        EXPECT_TRUE(localization_check(p, dec, 2 * n + 2));
    }
}

TEST(Decompose, TrivialActions)
{
    const auto cp = trivial_action_pair(make({{"e", 2}}, {""}, 6));
    const auto d1 = decompose_V(cp);
    EXPECT_EQ(d1.W.size(), 1u);
    EXPECT_TRUE(d1.K.empty());
    EXPECT_TRUE(d1.S.empty());
    ASSERT_EQ(d1.w_terms.size(), 1u);
    EXPECT_EQ(d1.w_terms[0].m, 0);
    EXPECT_TRUE(localization_check(cp, d1, 6));

    const auto s2 = trivial_action_pair(make({{"e", 2}, {"y", 3}}, {"", "e^2"}, 8));
    const auto d2 = decompose_V(s2);
    EXPECT_EQ(d2.W.size(), 2u);
    EXPECT_EQ(d2.W.size(), s2.fixed_model.size());
}

TEST(Decompose, HigherPowerOfX)
{
    // Dz = 0, Dy = x^2 z: n = 2.
    auto f = make_fibration_from_strings("x2", {}, {{"x", 2, 5}}, {{"z", 2}, {"y", 5}}, {{"y", "x^2*z"}});
    Cdga point(make_generator_set({}), 0);
    auto p = make_equivariant_pair(f, point, [](const Cdga& bf, const std::string&) { return Polynomial(bf.set()); });
    const auto dec = decompose_V(p);
    ASSERT_EQ(dec.pairs.size(), 1u);
    EXPECT_EQ(dec.pairs[0].n, 2);
    EXPECT_TRUE(localization_check(p, dec, 12));
}

TEST(Decompose, MixedBlockNeedsBasisChange)
{
    // Du = x*a, Dv = x*a + x*b: diagonal only after a change of basis.
    auto f = make_fibration_from_strings("mix", {}, {{"x", 2, 4}},
                                         {{"a", 4}, {"b", 4}, {"u", 5}, {"v", 5}},
                                         {{"u", "x*a"}, {"v", "x*a + x*b"}});
    Cdga point(make_generator_set({}), 0);
    auto p = make_equivariant_pair(f, point, [](const Cdga& bf, const std::string&) { return Polynomial(bf.set()); });
    const auto dec = decompose_V(p);
    EXPECT_EQ(dec.S.size(), 2u);
    EXPECT_EQ(dec.K.size(), 2u);
    EXPECT_TRUE(dec.W.empty());
    EXPECT_TRUE(localization_check(p, dec, 12));
}

TEST(Decompose, NonMinimalFiberRejected)
{
    // Du = a has a linear term without x.
    auto f = make_fibration_from_strings("nm", {}, {{"x", 2, 3}}, {{"a", 6}, {"u", 5}}, {{"u", "a"}});
    Cdga point(make_generator_set({}), 0);
    auto p = make_equivariant_pair(f, point, [](const Cdga& bf, const std::string&) { return Polynomial(bf.set()); });
    EXPECT_THROW(decompose_V(p), UnsupportedInput);
}

TEST(Localization, PerturbedPsiFails)
{
    auto m = make({{"e", 2}}, {""}, 6);
    auto f = trivial_action_pair(m).fibration;
    auto p = make_equivariant_pair(f, m, [](const Cdga& bf, const std::string&) { return Polynomial(bf.set()); });
    const auto dec = decompose_V(p);
    EXPECT_FALSE(localization_check(p, dec, 6));
}

TEST(Inclusion, CpInfinity)
{
    const auto p = trivial_action_pair(make({{"e", 2}}, {""}, 6));
    const auto k = k_inclusion_model(p);
    EXPECT_FALSE(validate(k.alpha));
    EXPECT_TRUE(k_is_iso_on_indecomposables(k, 6));
    const auto rows = induced_on_indecomposables(k.alpha_component, 6);
    EXPECT_EQ(rows.at(1).degree, 2);
    EXPECT_TRUE(rows.at(1).iso());
    EXPECT_EQ(rows.at(1).rank, 1u);
}

TEST(Inclusion, AlphaKillsNonMatchingSlots)
{
    // Trivial action: ψ(w) = w with m = 0, so α(w⊗(x^i)^#) = 0 for i != 0.
    const auto p = trivial_action_pair(make({{"e", 4}, {"y", 7}}, {"", "e^2"}, 16));
    const auto k = k_inclusion_model(p);
    const auto& set = k.section.cdga.generators();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& prov = k.section.provenance[i];
        const bool unit = k.section.dual.elements[prov.base_element].is_one();
        EXPECT_EQ(k.alpha.image(i).is_zero(), !unit) << set[i].name;
    }
}

TEST(Inclusion, EtaAlphaVanishesOnS)
{
    for (int n : {2, 4}) {
        const auto p = eta_pair(n);
        const auto k = k_inclusion_model(p);
        for (const auto& img : k.alpha.images()) EXPECT_TRUE(img.is_zero());
        EXPECT_TRUE(pi_k_injective(k, 2 * n + 2));
    }
}

TEST(Inclusion, PairFromConfig)
{
    auto cfg = load_config(std::string(HFP_SOURCE_DIR) + "/models/cp3_pair.cfg");
    ASSERT_TRUE(cfg.pair);
    const auto dec = decompose_V(*cfg.pair);
    EXPECT_EQ(dec.W.size(), 2u);
    EXPECT_TRUE(localization_check(*cfg.pair, dec, 16));
    const auto k = k_inclusion_model(*cfg.pair);
    EXPECT_TRUE(pi_k_injective(k, 16));
    EXPECT_FALSE(k_is_iso_on_indecomposables(k, 16));
}

TEST(Criterion, Examples)
{
    EXPECT_EQ(cp_infinity_criterion(make({{"e", 2}}, {""}, 8), 8).status, CriterionStatus::holds);
    EXPECT_EQ(cp_infinity_criterion(make({{"e", 2}, {"f", 2}}, {"", ""}, 8), 8).status, CriterionStatus::holds);
    const auto s2 = cp_infinity_criterion(make({{"e", 2}, {"y", 3}}, {"", "e^2"}, 8), 8);
    EXPECT_EQ(s2.status, CriterionStatus::fails);
    EXPECT_NE(s2.witness.find("y"), std::string::npos);
    const auto s1 = cp_infinity_criterion(make({{"t", 1}}, {""}, 8), 8);
    EXPECT_EQ(s1.status, CriterionStatus::hypothesis_violated);
    // Non-minimal input is minimized first: Λ(e2, f2, w3) with dw = f is CP^inf.
    const auto nm = cp_infinity_criterion(make({{"e", 2}, {"f", 2}, {"w", 1}}, {"", "", "f"}, 8), 8);
    EXPECT_EQ(nm.status, CriterionStatus::hypothesis_violated);
    const auto nm2 = cp_infinity_criterion(make({{"e", 2}, {"f", 4}, {"w", 3}}, {"", "", "f"}, 8), 8);
    EXPECT_EQ(nm2.status, CriterionStatus::holds);
}

TEST(Criterion, TwoRoutesAgreeOnBattery)
{
    for (const auto& t : thm5_battery()) {
        const int c = std::max(t.space.cutoff(), t.pair.fibration.total.cutoff());
        const auto crit = cp_infinity_criterion(t.space, c);
        EXPECT_EQ(crit.value(), t.expected) << t.label;
        const auto dec = decompose_V(t.pair);
        EXPECT_EQ(dec.W.size(), t.pair.fixed_model.size()) << t.label;
        for (const auto& pr : dec.pairs) EXPECT_GE(pr.n, 1);
        const auto k = k_inclusion_model(t.pair);
        EXPECT_EQ(k_is_iso_on_indecomposables(k, c), crit.value()) << t.label;
        EXPECT_TRUE(pi_k_injective(k, c)) << t.label;
    }
}
