#pragma once

/**
 * @file fixed_locus.hpp
 * @brief Fixed points versus homotopy fixed points for circle actions.
 *
 * An EquivariantPair carries the Borel fibration model (A⊗ΛV, D) over
 * A = Λx/x^N (|x| = 2), a model (ΛZ, d) of the fixed set, and an A-linear
 * chain map ψ : (A⊗ΛV, D) -> (A, 0)⊗(ΛZ, d). From it we compute the splitting
 * V = W ⊕ K ⊕ S of the linear part D₁, the localization rank check, the
 * model α : Λ(V⊗A^#) -> ΛZ of the inclusion of fixed points, and the
 * product-of-CP^∞ criterion.
 */

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfp/minimal.hpp"
#include "hfp/section.hpp"

namespace hfp {

struct EquivariantPair {
    FibrationModel fibration;
    Cdga fixed_model;   // (ΛZ, d)
    Cdga base_fixed;    // (A, 0) ⊗ (ΛZ, d): base generators first
    CdgaMorphism psi;   // total -> base_fixed, identity on A
};

/// (A,0)⊗(ΛZ,d) with the base generators of f first.
inline Cdga tensor_with_base(const FibrationModel& f, const Cdga& z)
{
    std::vector<Generator> gens = f.base.generators().generators();
    const auto& zg = z.generators().generators();
    gens.insert(gens.end(), zg.begin(), zg.end());
    auto set = make_generator_set(gens, f.base.generators().ideal());
    std::vector<Polynomial> incl;
    for (std::size_t i = 0; i < z.size(); ++i) incl.push_back(Polynomial::generator(set, f.base_size() + i));
    std::vector<Polynomial> d;
    for (std::size_t i = 0; i < f.base_size(); ++i) d.emplace_back(set);
    for (std::size_t i = 0; i < z.size(); ++i) d.push_back(substitute(z.d(i), incl, set));
    return Cdga(set, std::move(d), z.cutoff());
}

/**
 * Assembles a pair; `psi` gives ψ(v) for fiber generators as polynomials
 * over A⊗ΛZ (missing entries map to 0). Throws ValidationError when ψ is
 * not a degree-preserving chain map.
 */
inline EquivariantPair make_equivariant_pair(FibrationModel f, Cdga fixed,
                                             const std::function<Polynomial(const Cdga& base_fixed, const std::string& v)>& psi)
{
    if (f.base_size() != 1 || f.base.generators().degree(0) != 2)
        throw UnsupportedInput("equivariant pair: base must be Λx/x^N with |x| = 2");
    require_valid(fixed, "fixed-point model");
    EquivariantPair p;
    p.base_fixed = tensor_with_base(f, fixed);
    std::vector<Polynomial> imgs;
    for (std::size_t i = 0; i < f.base_size(); ++i) imgs.push_back(p.base_fixed.gen(i));
    for (const auto& g : f.fiber.generators().generators()) imgs.push_back(psi(p.base_fixed, g.name));
    p.psi = CdgaMorphism(f.total, p.base_fixed, std::move(imgs));
    if (auto bad = validate(p.psi)) throw ValidationError("psi: " + bad->message());
    p.fibration = std::move(f);
    p.fixed_model = std::move(fixed);
    return p;
}

/// Base truncation covering degrees up to top + 1 for |x| = 2.
inline int circle_base_truncation(int top_fiber_degree) { return (top_fiber_degree + 1) / 2 + 1; }

/// Trivial S^1-action on M: D = d, fixed set M, ψ = identity on V.
inline EquivariantPair trivial_action_pair(const Cdga& m)
{
    int top = 0;
    std::vector<GeneratorSpec> fiber;
    for (const auto& g : m.generators().generators()) {
        fiber.push_back({g.name, g.degree, 0});
        top = std::max(top, g.degree);
    }
    const int trunc = circle_base_truncation(top);
    std::vector<Generator> tg{{"x", 2}};
    const auto& mg = m.generators().generators();
    tg.insert(tg.end(), mg.begin(), mg.end());
    auto tset = make_generator_set(tg, {{0, trunc}});
    std::vector<Polynomial> incl;
    for (std::size_t i = 0; i < m.size(); ++i) incl.push_back(Polynomial::generator(tset, i + 1));
    std::map<std::string, Polynomial> d;
    for (std::size_t i = 0; i < m.size(); ++i) d.emplace(mg[i].name, substitute(m.d(i), incl, tset));
    auto f = make_fibration("trivial_s1", {}, {{"x", 2, trunc}}, fiber, d);
    return make_equivariant_pair(std::move(f), m, [](const Cdga& bf, const std::string& v) {
        return Polynomial::generator(bf.set(), v);
    });
}

/// η_{2k} with the fixed-point model of the example: Z = 0, ψ = 0.
inline EquivariantPair eta_pair(int n)
{
    auto f = eilenberg_product_s1(n);
    Cdga point(make_generator_set({}), 0);
    return make_equivariant_pair(std::move(f), point,
                                 [](const Cdga& bf, const std::string&) { return Polynomial(bf.set()); });
}

// ---------------------------------------------------------------------------
// Monomial diagonalization of graded maps V -> Q[x]⊗U.

struct DiagonalTerm {
    SparseVector source;  // in source coordinates
    int exponent = 0;     // power of x
    SparseVector image;   // in target coordinates
};

struct Diagonalization {
    std::vector<DiagonalTerm> terms;
    std::vector<SparseVector> kernel;
};

/// Components of L(v) by x-exponent.
using GradedComponents = std::function<std::map<int, SparseVector>(const SparseVector&)>;

/**
 * For one homogeneous block of source vectors, finds a basis on which the
 * map sends each vector to x^n times a single target vector (or to zero).
 * Throws UnsupportedInput when no such basis exists.
 */
inline Diagonalization monomial_diagonalize(const std::vector<SparseVector>& block, const GradedComponents& comps)
{
    Diagonalization out;
    std::vector<SparseVector> remaining = block;
    std::set<int> exps;
    for (const auto& v : remaining)
        for (const auto& [m, img] : comps(v))
            if (!img.empty()) exps.insert(m);

    auto combine = [](const std::vector<SparseVector>& basis, const SparseVector& coeffs) {
        SparseVector v;
        for (const auto& [i, c] : coeffs) axpy(v, c, basis[i]);
        return v;
    };

    for (int m : exps) {
        std::vector<SparseVector> independent, kernel_part;
        EchelonBasis ech;
        std::vector<SparseVector> images;
        for (const auto& r : remaining) {
            auto c = comps(r);
            images.push_back(c.count(m) ? c.at(m) : SparseVector{});
        }
        auto ker = kernel(images);
        {
            EchelonBasis probe;
            for (std::size_t i = 0; i < remaining.size(); ++i)
                if (probe.insert(images[i])) independent.push_back(remaining[i]);
        }
        for (const auto& k : ker.kernel) kernel_part.push_back(combine(remaining, k));

        // Higher components of the kernel part, flattened by (exponent, coordinate).
        auto higher = [&](const SparseVector& v) {
            SparseVector flat;
            for (const auto& [e, img] : comps(v))
                if (e > m)
                    for (const auto& [i, c] : img) flat.emplace(static_cast<std::size_t>(e) * 1000003u + i, c);
            return flat;
        };
        EchelonBasis fixups;
        for (std::size_t i = 0; i < kernel_part.size(); ++i) fixups.insert(higher(kernel_part[i]), {{i, Rational(1)}});
        for (const auto& p : independent) {
            SparseVector h = higher(p);
            SparseVector combo;
            fixups.reduce(h, &combo);
            if (!h.empty()) throw UnsupportedInput("linear part is not monomial-diagonalizable over Q[x]");
            SparseVector fixed = p;
            axpy(fixed, 1, combine(kernel_part, combo));
            auto c = comps(fixed);
            out.terms.push_back({fixed, m, c.count(m) ? c.at(m) : SparseVector{}});
        }
        remaining = std::move(kernel_part);
        (void)ech;
    }
    out.kernel = std::move(remaining);
    return out;
}

struct SPair {
    SparseVector s;  // in fiber-generator coordinates
    SparseVector v;  // D₁(s) = x^n v
    int n = 0;
};

struct WTerm {
    SparseVector w;   // fiber coordinates
    SparseVector z;   // fixed-model coordinates
    int m = 0;        // ψ(w) = x^m z + Γ
    std::string gamma;
};

struct WKSDecomposition {
    std::vector<SparseVector> W, K, S;
    std::vector<SPair> pairs;
    std::vector<WTerm> w_terms;            // diagonal part of ψ on W
    std::vector<SparseVector> w_unmatched;  // W-vectors with vanishing linear ψ
    std::vector<std::string> notes;

    std::string describe(const GeneratorSet& fiber) const
    {
        auto show = [&](const SparseVector& v) {
            std::string s;
            for (const auto& [i, c] : v) {
                if (!s.empty()) s += " + ";
                s += (c == 1 ? "" : c.get_str() + "*") + fiber[i].name;
            }
            return s.empty() ? std::string("0") : s;
        };
        std::string out = "W = {";
        for (std::size_t i = 0; i < W.size(); ++i) out += (i ? ", " : "") + show(W[i]);
        out += "}, K = {";
        for (std::size_t i = 0; i < K.size(); ++i) out += (i ? ", " : "") + show(K[i]);
        out += "}, S = {";
        for (std::size_t i = 0; i < S.size(); ++i) out += (i ? ", " : "") + show(S[i]);
        out += "}";
        return out;
    }
};

namespace detail {

/// D₁ on fiber generators: (target generator, exponent, coefficient) triples.
inline GradedComponents linear_fiber_part(const FibrationModel& f)
{
    const std::size_t nb = f.base_size();
    std::vector<std::map<int, SparseVector>> unit(f.fiber_size());
    for (std::size_t v = 0; v < f.fiber_size(); ++v)
        for (const auto& [mono, c] : f.total.d(f.total_index(v)).terms()) {
            int fiber_len = 0;
            std::size_t target = 0;
            for (std::size_t i = nb; i < mono.size(); ++i)
                if (mono[i]) {
                    fiber_len += mono[i];
                    target = i - nb;
                }
            if (fiber_len != 1) continue;
            axpy(unit[v][mono[0]], c, SparseVector{{target, Rational(1)}});
        }
    return [unit](const SparseVector& s) {
        std::map<int, SparseVector> out;
        for (const auto& [i, c] : s)
            for (const auto& [e, img] : unit[i]) axpy(out[e], c, img);
        for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
        return out;
    };
}

/// Linear part of ψ on fiber generators, in fixed-model coordinates.
inline GradedComponents linear_psi_part(const EquivariantPair& p)
{
    const std::size_t nb = p.fibration.base_size();
    std::vector<std::map<int, SparseVector>> unit(p.fibration.fiber_size());
    for (std::size_t v = 0; v < p.fibration.fiber_size(); ++v)
        for (const auto& [mono, c] : p.psi.image(p.fibration.total_index(v)).terms()) {
            int len = 0;
            std::size_t target = 0;
            for (std::size_t i = nb; i < mono.size(); ++i)
                if (mono[i]) {
                    len += mono[i];
                    target = i - nb;
                }
            if (len != 1) continue;
            axpy(unit[v][mono[0]], c, SparseVector{{target, Rational(1)}});
        }
    return [unit](const SparseVector& s) {
        std::map<int, SparseVector> out;
        for (const auto& [i, c] : s)
            for (const auto& [e, img] : unit[i]) axpy(out[e], c, img);
        for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
        return out;
    };
}

inline std::map<int, std::vector<SparseVector>> unit_blocks(const GeneratorSet& set)
{
    std::map<int, std::vector<SparseVector>> out;
    for (std::size_t i = 0; i < set.size(); ++i) out[set.degree(i)].push_back(SparseVector{{i, Rational(1)}});
    return out;
}

inline int vector_degree(const GeneratorSet& set, const SparseVector& v)
{
    return v.empty() ? 0 : set.degree(v.begin()->first);
}

}  // namespace detail

/**
 * V = W ⊕ K ⊕ S with W ⊕ K = ker D₁ and D₁(s_i) = x^{n_i} v_i. The W basis is
 * then adjusted so the linear part of ψ is x^{m_j} z_j on it.
 */
inline WKSDecomposition decompose_V(const EquivariantPair& pair)
{
    const auto& f = pair.fibration;
    const auto& fib = f.fiber.generators();
    WKSDecomposition out;
    const auto d1 = detail::linear_fiber_part(f);

    std::vector<SparseVector> ker_all;
    for (const auto& [deg, block] : detail::unit_blocks(fib)) {
        auto diag = monomial_diagonalize(block, d1);
        for (auto& t : diag.terms) {
            if (t.exponent < 1)
                throw UnsupportedInput("fiber model is not minimal: D₁ has a term without x");
            out.S.push_back(t.source);
            out.pairs.push_back({t.source, t.image, t.exponent});
        }
        ker_all.insert(ker_all.end(), diag.kernel.begin(), diag.kernel.end());
    }
    EchelonBasis kspan;
    for (const auto& pr : out.pairs) {
        if (!d1(pr.v).empty()) throw std::logic_error("D₁ image is not a D₁-cycle");
        if (!kspan.insert(pr.v)) throw UnsupportedInput("images D₁(s_i)/x^{n_i} are linearly dependent");
        out.K.push_back(pr.v);
    }
    // W: complement of K inside ker D₁.
    EchelonBasis kerspan = kspan;
    for (const auto& k : ker_all)
        if (kerspan.insert(k)) out.W.push_back(k);
    if (out.W.size() + out.K.size() != ker_all.size())
        throw std::logic_error("K is not contained in ker D₁");

    // ψ on W, per degree.
    const auto psi1 = detail::linear_psi_part(pair);
    std::map<int, std::vector<SparseVector>> wblocks;
    for (const auto& w : out.W) wblocks[detail::vector_degree(fib, w)].push_back(w);
    std::vector<SparseVector> newW;
    for (const auto& [deg, block] : wblocks) {
        auto diag = monomial_diagonalize(block, psi1);
        for (auto& t : diag.terms) {
            WTerm wt{t.source, t.image, t.exponent, {}};
            // Γ_j = ψ(w_j) - x^{m_j} z_j
            Polynomial wpoly(f.total.set());
            for (const auto& [i, c] : t.source) wpoly += Polynomial::generator(f.total.set(), f.total_index(i), c);
            Polynomial lin(pair.base_fixed.set());
            for (const auto& [i, c] : t.image) {
                Monomial mono(pair.base_fixed.size());
                mono[0] = t.exponent;
                mono[f.base_size() + i] = 1;
                lin.add_term(mono, c);
            }
            wt.gamma = (pair.psi.apply(wpoly) - lin).to_string();
            out.w_terms.push_back(std::move(wt));
            newW.push_back(t.source);
        }
        for (auto& k : diag.kernel) {
            out.w_unmatched.push_back(k);
            newW.push_back(k);
        }
    }
    out.W = std::move(newW);
    for (const auto& s : out.S)
        if (!psi1(s).empty()) out.notes.push_back("psi has a linear term on an S-generator");
    for (const auto& k : out.K)
        if (!psi1(k).empty()) out.notes.push_back("psi has a linear term on a K-generator");
    return out;
}

/**
 * Borel localization at the rank level: with x inverted (x ↦ 1 is exact for
 * homogeneous matrices) and V, Z graded by parity, ψ̄ : (V, D₁) -> (Z, 0) must
 * be a chain map inducing an isomorphism on homology. Generators above
 * max_degree are ignored.
 */
inline bool localization_check(const EquivariantPair& pair, const WKSDecomposition& dec, int max_degree)
{
    const auto& fib = pair.fibration.fiber.generators();
    const auto& zg = pair.fixed_model.generators();
    const auto d1 = detail::linear_fiber_part(pair.fibration);
    const auto psi1 = detail::linear_psi_part(pair);
    auto at_one = [](const std::map<int, SparseVector>& comps) {
        SparseVector v;
        for (const auto& [e, img] : comps) axpy(v, 1, img);
        return v;
    };
    for (int parity : {0, 1}) {
        std::vector<std::size_t> vp, vq, zp;
        for (std::size_t i = 0; i < fib.size(); ++i)
            if (fib.degree(i) <= max_degree) (std::abs(fib.degree(i)) % 2 == parity ? vp : vq).push_back(i);
        for (std::size_t i = 0; i < zg.size(); ++i)
            if (zg.degree(i) <= max_degree && std::abs(zg.degree(i)) % 2 == parity) zp.push_back(i);
        // cycles of parity p
        std::vector<SparseVector> images;
        for (auto i : vp) images.push_back(at_one(d1(SparseVector{{i, Rational(1)}})));
        auto ker = kernel(images);
        // boundaries landing in parity p
        std::vector<SparseVector> bd;
        for (auto i : vq) bd.push_back(at_one(d1(SparseVector{{i, Rational(1)}})));
        const std::size_t bd_rank = rank(bd);
        const std::size_t h = ker.kernel.size() - bd_rank;
        if (h != zp.size()) return false;
        // chain condition and induced rank
        for (const auto& b : bd)
            if (!at_one(psi1(b)).empty()) return false;
        std::vector<SparseVector> cyc_images;
        for (const auto& k : ker.kernel) {
            SparseVector v;
            for (const auto& [j, c] : k) axpy(v, c, SparseVector{{vp[j], Rational(1)}});
            cyc_images.push_back(at_one(psi1(v)));
        }
        if (rank(cyc_images) != zp.size()) return false;
    }
    // Decomposition consistency: |W| = |Z| and ψ diagonal and injective on W.
    std::size_t w_in_range = 0, z_in_range = 0;
    for (const auto& w : dec.W) w_in_range += detail::vector_degree(fib, w) <= max_degree;
    for (std::size_t i = 0; i < zg.size(); ++i) z_in_range += zg.degree(i) <= max_degree;
    if (w_in_range != z_in_range) return false;
    for (const auto& w : dec.w_unmatched)
        if (detail::vector_degree(fib, w) <= max_degree) return false;
    return true;
}

/**
 * Model of the inclusion of fixed points: α = γ∘φ with
 *   φ(v⊗a^#) from ψ through the dual-basis pairing (same convention as d̃), and
 *   γ(z⊗1^#) = z, γ(z⊗a^#) = 0 for a != 1.
 * `component` is the component of the section space hit by the fixed points
 * (the retraction ε∘ψ) and `alpha_component` the restriction of α to it.
 */
struct KInclusion {
    SectionSpaceModel section;
    CdgaMorphism alpha;  // Λ(V⊗A^#) -> ΛZ
    Retraction retraction;
    ComponentModel component;
    CdgaMorphism alpha_component;
};

inline KInclusion k_inclusion_model(const EquivariantPair& pair)
{
    const auto& f = pair.fibration;
    KInclusion out;
    out.section = build_section_model(f);

    // Section model of the trivial fibration A⊗ΛZ and the induced φ.
    const auto& zg = pair.fixed_model.generators();
    std::vector<Generator> zsec;
    for (std::size_t z = 0; z < zg.size(); ++z)
        for (std::size_t j = 0; j < out.section.dual.size(); ++j)
            zsec.push_back({section_name(zg[z].name, out.section.dual.label(j)), zg.degree(z) - out.section.dual.degree(j)});
    auto zsec_set = make_generator_set(zsec);
    std::vector<Generator> tensor = f.base.generators().generators();
    tensor.insert(tensor.end(), zsec.begin(), zsec.end());
    auto tensor_set = make_generator_set(tensor, f.base.generators().ideal());
    const std::size_t nb = f.base_size();
    const std::size_t nd = out.section.dual.size();
    std::vector<Polynomial> phi_z;  // A⊗ΛZ -> A⊗Λ(Z⊗A^#)
    for (std::size_t i = 0; i < nb; ++i) phi_z.push_back(Polynomial::generator(tensor_set, i));
    for (std::size_t z = 0; z < zg.size(); ++z) {
        Polynomial img(tensor_set);
        for (std::size_t j = 0; j < nd; ++j) {
            Monomial m(tensor_set->size());
            for (std::size_t b = 0; b < nb; ++b) m[b] = out.section.dual.elements[j][b];
            m[nb + z * nd + j] = 1;
            img.add_term(m, 1);
        }
        phi_z.push_back(std::move(img));
    }
    // γ : Λ(Z⊗A^#) -> ΛZ
    std::vector<Polynomial> gamma;
    for (std::size_t z = 0; z < zg.size(); ++z)
        for (std::size_t j = 0; j < nd; ++j)
            gamma.push_back(out.section.dual.elements[j].is_one() ? pair.fixed_model.gen(z)
                                                                   : Polynomial(pair.fixed_model.set()));
    std::vector<Polynomial> alpha(out.section.cdga.size(), Polynomial(pair.fixed_model.set()));
    for (std::size_t v = 0; v < f.fiber_size(); ++v) {
        const Polynomial img = substitute(pair.psi.image(f.total_index(v)), phi_z, tensor_set);
        auto parts = detail::split_by_base(img, nb, out.section.dual, zsec_set);
        for (std::size_t j = 0; j < nd; ++j) {
            if (out.section.dual.degree(j) % 2 != 0) parts[j] *= Rational(-1);
            alpha[out.section.index(v, j)] = substitute(parts[j], gamma, pair.fixed_model.set());
        }
    }
    out.alpha = CdgaMorphism(out.section.cdga, pair.fixed_model, alpha);
    if (auto bad = validate(out.alpha)) throw ValidationError("alpha is not a chain map: " + bad->message());

    // Component hit by the fixed points: ε∘ψ.
    std::vector<Polynomial> eps;
    for (std::size_t i = 0; i < nb; ++i) eps.push_back(f.base.gen(i));
    for (std::size_t z = 0; z < zg.size(); ++z) eps.emplace_back(f.base.set());
    for (std::size_t v = 0; v < f.fiber_size(); ++v) {
        Polynomial val = substitute(pair.psi.image(f.total_index(v)), eps, f.base.set());
        for (const auto& [m, c] : val.terms())
            if (auto j = out.section.dual.find(m)) out.retraction.slots[{v, *j}] = c;
        out.retraction.values.push_back(std::move(val));
    }
    out.component = component_model(out.section, out.retraction);
    std::vector<Polynomial> comp_alpha;
    for (const auto& g : out.component.cdga.generators().generators())
        comp_alpha.push_back(alpha[out.section.cdga.generators().index_of(g.name)]);
    out.alpha_component = CdgaMorphism(out.component.cdga, pair.fixed_model, std::move(comp_alpha));
    if (auto bad = validate(out.alpha_component))
        throw ValidationError("alpha on the component is not a chain map: " + bad->message());
    return out;
}

/**
 * Map induced on the homology of indecomposables (V, d₁) -> (Z, d₁) by the
 * linear part of a morphism; dual to π_*(k) ⊗ Q.
 */
inline std::vector<InducedMapDegree> induced_on_indecomposables(const CdgaMorphism& m, int max_degree)
{
    auto lin = [](const Cdga& c, std::size_t g) {
        SparseVector v;
        for (const auto& [mono, coef] : c.d(g).terms())
            if (auto t = mono.as_generator()) v.emplace(*t, coef);
        return v;
    };
    const auto& s = m.source().generators();
    const auto& t = m.target().generators();
    std::vector<InducedMapDegree> out;
    for (int k = 1; k <= max_degree; ++k) {
        auto gens_of = [](const GeneratorSet& set, int deg) {
            std::vector<std::size_t> g;
            for (std::size_t i = 0; i < set.size(); ++i)
                if (set.degree(i) == deg) g.push_back(i);
            return g;
        };
        auto s_k = gens_of(s, k), s_km1 = gens_of(s, k - 1), t_k = gens_of(t, k), t_km1 = gens_of(t, k - 1);
        std::vector<SparseVector> s_img, s_bd, t_img, t_bd;
        for (auto g : s_k) s_img.push_back(lin(m.source(), g));
        for (auto g : s_km1) s_bd.push_back(lin(m.source(), g));
        for (auto g : t_k) t_img.push_back(lin(m.target(), g));
        for (auto g : t_km1) t_bd.push_back(lin(m.target(), g));
        auto s_ker = kernel(s_img);
        auto t_ker = kernel(t_img);
        EchelonBasis target_bd;
        for (const auto& b : t_bd) target_bd.insert(b);
        const std::size_t tb = target_bd.rank();
        for (const auto& z : s_ker.kernel) {
            SparseVector img;
            for (const auto& [j, c] : z)
                for (const auto& [mono, coef] : m.image(s_k[j]).terms())
                    if (auto g = mono.as_generator()) axpy(img, c * coef, SparseVector{{*g, Rational(1)}});
            target_bd.insert(img);
        }
        InducedMapDegree row;
        row.degree = k;
        row.source_dim = s_ker.kernel.size() - rank(s_bd);
        row.target_dim = t_ker.kernel.size() - tb;
        row.rank = target_bd.rank() - tb;
        out.push_back(row);
    }
    return out;
}

enum class CriterionStatus { holds, fails, hypothesis_violated };

struct CriterionResult {
    CriterionStatus status = CriterionStatus::fails;
    std::string witness;
    int cutoff = 0;

    bool value() const { return status == CriterionStatus::holds; }
};

/**
 * M ≃_Q product of CP^∞ iff its minimal model is free on degree-2
 * generators with zero differential. Requires M simply connected with a
 * finite π census up to the cutoff; violations are reported as such.
 */
inline CriterionResult cp_infinity_criterion(const Cdga& m, int cutoff)
{
    CriterionResult r;
    r.cutoff = cutoff;
    for (const auto& g : m.generators().generators()) {
        if (g.degree < 2) {
            r.status = CriterionStatus::hypothesis_violated;
            r.witness = "not simply connected: generator " + g.name + " in degree " + std::to_string(g.degree);
            return r;
        }
        if (g.degree > cutoff) {
            r.status = CriterionStatus::hypothesis_violated;
            r.witness = "pi census not certified finite: generator " + g.name + " above cutoff " + std::to_string(cutoff);
            return r;
        }
    }
    const auto mm = minimize(m, cutoff);
    const auto& set = mm.minimal.generators();
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.degree(i) != 2) {
            r.witness = set[i].name + " (degree " + std::to_string(set.degree(i)) + ")";
            return r;
        }
        if (!mm.minimal.d(i).is_zero()) {
            r.witness = "d(" + set[i].name + ") = " + mm.minimal.d(i).to_string();
            return r;
        }
    }
    r.status = CriterionStatus::holds;
    r.witness = std::to_string(set.size()) + " degree-2 generator(s), zero differential";
    return r;
}

/// Second route: does the model of k induce an isomorphism on indecomposables?
inline bool k_is_iso_on_indecomposables(const KInclusion& k, int max_degree)
{
    for (const auto& row : induced_on_indecomposables(k.alpha_component, max_degree))
        if (!row.iso()) return false;
    return true;
}

/// Dual of π_*(k) injective: the induced map on indecomposables is onto.
inline bool pi_k_injective(const KInclusion& k, int max_degree)
{
    for (const auto& row : induced_on_indecomposables(k.alpha_component, max_degree))
        if (row.rank != row.target_dim) return false;
    return true;
}

}  // namespace hfp
