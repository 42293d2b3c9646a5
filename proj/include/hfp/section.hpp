#pragma once

/**
 * @file section.hpp
 * @brief Section-space models Λ(V⊗A^#), retractions and component models.
 *
 * For a relative model (A⊗ΛV, D) with finite-dimensional base (A,0) with
 * monomial basis a_j, the section space is modelled on generators
 * v_j = v⊗a_j^# of degree |v| - |a_j|. The algebra map
 *
 *     Φ : A⊗ΛV -> A⊗Λ(V⊗A^#),   v ↦ Σ_j a_j ⊗ v_j,
 *
 * is required to be a chain map for the differential a⊗w ↦ (-1)^{|a|} a⊗d̃w,
 * which gives d̃(v_j) = (-1)^{|a_j|} · [coefficient of a_j in Φ(Dv)].
 * Monomials in A⊗Λ(V⊗A^#) are canonical with base factors on the left,
 * so the coefficient extraction is sign-free. d̃² = 0 is checked on every build.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfp/catalog.hpp"
#include "hfp/linalg.hpp"

namespace hfp {

class UnsupportedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DualBasis {
    GeneratorSetPtr base;
    std::vector<Monomial> elements;  // a_j, ordered by degree then canonically

    std::size_t size() const { return elements.size(); }
    int degree(std::size_t j) const { return hfp::degree(*base, elements[j]); }

    /// <a_i, a_j^#>
    int pairing(std::size_t i, std::size_t j) const { return i == j ? 1 : 0; }

    std::optional<std::size_t> find(const Monomial& m) const
    {
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (elements[j] == m) return j;
        return std::nullopt;
    }

    /// Display token of a_j: "1", "x", "x^2", ...
    std::string label(std::size_t j) const { return monomial_string(*base, elements[j]); }
};

inline DualBasis dual_basis(const GeneratorSetPtr& base)
{
    return DualBasis{base, full_basis(*base)};
}

struct SectionGenerator {
    std::size_t fiber_generator;  // v
    std::size_t base_element;     // j in the dual basis
};

struct SectionSpaceModel {
    Cdga cdga;                                // Λ(V⊗A^#) with d̃
    DualBasis dual;
    std::vector<SectionGenerator> provenance;  // per section generator
    GeneratorSetPtr tensor;                    // A⊗Λ(V⊗A^#): base gens, then section gens

    std::size_t index(std::size_t fiber_gen, std::size_t base_elem) const
    {
        return fiber_gen * dual.size() + base_elem;
    }
};

/// Name of v⊗a^#, e.g. "e'[x^2]" or "e[1]".
inline std::string section_name(const std::string& v, const std::string& a) { return v + "[" + a + "]"; }

namespace detail {

/// The algebra map Φ on the total algebra, into A⊗Λ(V⊗A^#).
inline std::vector<Polynomial> phi_images(const FibrationModel& f, const SectionSpaceModel& s)
{
    std::vector<Polynomial> out;
    const std::size_t nb = f.base_size();
    for (std::size_t i = 0; i < nb; ++i) out.push_back(Polynomial::generator(s.tensor, i));
    for (std::size_t v = 0; v < f.fiber_size(); ++v) {
        Polynomial img(s.tensor);
        for (std::size_t j = 0; j < s.dual.size(); ++j) {
            Monomial m(s.tensor->size());
            const auto& a = s.dual.elements[j];
            for (std::size_t b = 0; b < nb; ++b) m[b] = a[b];
            m[nb + s.index(v, j)] = 1;
            img.add_term(m, 1);
        }
        out.push_back(std::move(img));
    }
    return out;
}

/**
 * Splits a polynomial over A⊗ΛW by its base factor: returns, per dual-basis
 * element, the ΛW polynomial multiplying it (W generators re-indexed).
 */
inline std::vector<Polynomial> split_by_base(const Polynomial& p, std::size_t nb, const DualBasis& dual,
                                             const GeneratorSetPtr& fiber_side)
{
    std::vector<Polynomial> out(dual.size(), Polynomial(fiber_side));
    for (const auto& [m, c] : p.terms()) {
        Monomial a(nb), w(fiber_side->size());
        for (std::size_t b = 0; b < nb; ++b) a[b] = m[b];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = m[nb + i];
        auto j = dual.find(a);
        if (!j) throw std::logic_error("base monomial outside the dual basis");
        out[*j].add_term(w, c);
    }
    return out;
}

}  // namespace detail

/**
 * Λ(V⊗A^#) with its induced differential. Throws ValidationError when the
 * d̃² = 0 self-check fails (names the offending generator).
 */
inline SectionSpaceModel build_section_model(const FibrationModel& f)
{
    if (auto bad = check_fibration(f)) throw ValidationError("fibration: " + *bad);
    SectionSpaceModel s;
    s.dual = dual_basis(f.base.set());
    const auto& fib = f.fiber.generators();
    std::vector<Generator> sec;
    for (std::size_t v = 0; v < fib.size(); ++v)
        for (std::size_t j = 0; j < s.dual.size(); ++j) {
            sec.push_back({section_name(fib[v].name, s.dual.label(j)), fib.degree(v) - s.dual.degree(j)});
            s.provenance.push_back({v, j});
        }
    auto sec_set = make_generator_set(sec);
    std::vector<Generator> tensor = f.base.generators().generators();
    tensor.insert(tensor.end(), sec.begin(), sec.end());
    s.tensor = make_generator_set(tensor, f.base.generators().ideal());

    const auto phi = detail::phi_images(f, s);
    std::vector<Polynomial> dtilde(sec.size(), Polynomial(sec_set));
    for (std::size_t v = 0; v < fib.size(); ++v) {
        const Polynomial image = substitute(f.total.d(f.total_index(v)), phi, s.tensor);
        auto parts = detail::split_by_base(image, f.base_size(), s.dual, sec_set);
        for (std::size_t j = 0; j < s.dual.size(); ++j) {
            if (s.dual.degree(j) % 2 != 0) parts[j] *= Rational(-1);
            dtilde[s.index(v, j)] = std::move(parts[j]);
        }
    }
    int top = 0;
    for (const auto& g : sec) top = std::max(top, g.degree);
    s.cdga = Cdga(sec_set, std::move(dtilde), 2 * top + 2);
    if (auto bad = validate(s.cdga))
        throw ValidationError("section model sign self-check failed: " + bad->message());
    return s;
}

/**
 * A retraction φ : (A⊗ΛV, D) -> (A, 0) fixing A, stored by its values on
 * fiber generators. `slots` holds the scalar value of every degree-0
 * section generator v⊗a^# (the coefficient of a in φ(v)).
 */
struct Retraction {
    std::vector<Polynomial> values;                 // per fiber generator, in A
    std::map<std::pair<std::size_t, std::size_t>, Rational> slots;  // (v, j) -> coefficient

    CdgaMorphism morphism(const FibrationModel& f) const
    {
        std::vector<Polynomial> imgs;
        for (std::size_t i = 0; i < f.base_size(); ++i) imgs.push_back(f.base.gen(i));
        imgs.insert(imgs.end(), values.begin(), values.end());
        return CdgaMorphism(f.total, f.base, std::move(imgs));
    }

    std::string to_string(const FibrationModel& f) const
    {
        std::string s;
        for (std::size_t v = 0; v < values.size(); ++v) {
            if (!s.empty()) s += ", ";
            s += "phi(" + f.fiber.generators()[v].name + ") = " + values[v].to_string();
        }
        return s;
    }
};

namespace detail {

/// Rational roots of a univariate polynomial given by coefficients c[0] + c[1] t + ...
inline std::vector<Rational> rational_roots(std::vector<Rational> c)
{
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw std::logic_error("rational_roots of the zero polynomial");
    std::vector<Rational> roots;
    std::size_t low = 0;
    while (c[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(low));
    if (c.size() == 1) return roots;
    mpz_class lcm = 1;
    for (const auto& q : c) lcm = lcm * q.get_den() / gcd(lcm, q.get_den());
    std::vector<mpz_class> z;
    for (const auto& q : c) z.push_back(mpz_class(q * lcm));
    auto divisors = [](mpz_class n) {
        n = abs(n);
        if (n > mpz_class("1000000000000")) throw UnsupportedInput("retraction equation coefficients too large");
        std::vector<mpz_class> out;
        for (mpz_class d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                out.push_back(d);
                if (d * d != n) out.push_back(n / d);
            }
        return out;
    };
    auto eval = [&](const Rational& t) {
        Rational acc = 0;
        for (std::size_t i = z.size(); i-- > 0;) acc = acc * t + Rational(z[i]);
        return acc;
    };
    for (const auto& p : divisors(z.front()))
        for (const auto& q : divisors(z.back()))
            for (int sign : {1, -1}) {
                Rational t(mpz_class(p * sign), q);
                t.canonicalize();
                if (eval(t) == 0 && std::find(roots.begin(), roots.end(), t) == roots.end()) roots.push_back(t);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

/**
 * All retractions of the relative model. Unknowns are the coefficients of
 * φ(v) on base monomials of degree |v|; the chain-map conditions φ(Dv) = 0
 * must be solvable one univariate equation at a time (triangular). Throws
 * UnsupportedInput for non-triangular systems or free parameters.
 * Ordered by the unknowns' values, lexicographically.
 */
inline std::vector<Retraction> enumerate_components(const FibrationModel& f)
{
    if (auto bad = check_fibration(f)) throw ValidationError("fibration: " + *bad);
    const auto dual = dual_basis(f.base.set());
    const auto& fib = f.fiber.generators();
    const std::size_t nb = f.base_size();

    struct Unknown {
        std::size_t v, j;
    };
    std::vector<Unknown> unknowns;
    std::vector<Generator> ring_gens = f.base.generators().generators();
    for (std::size_t v = 0; v < fib.size(); ++v)
        for (std::size_t j = 0; j < dual.size(); ++j)
            if (dual.degree(j) == fib.degree(v)) {
                unknowns.push_back({v, j});
                ring_gens.push_back({"c[" + fib[v].name + "," + dual.label(j) + "]", 0});
            }
    auto ring = make_generator_set(ring_gens, f.base.generators().ideal());
    std::vector<Generator> ugens(ring_gens.begin() + static_cast<long>(nb), ring_gens.end());
    auto uset = make_generator_set(ugens);

    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < nb; ++i) images.push_back(Polynomial::generator(ring, i));
    for (std::size_t v = 0; v < fib.size(); ++v) {
        Polynomial img(ring);
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            if (unknowns[u].v != v) continue;
            Monomial m(ring->size());
            const auto& a = dual.elements[unknowns[u].j];
            for (std::size_t b = 0; b < nb; ++b) m[b] = a[b];
            m[nb + u] = 1;
            img.add_term(m, 1);
        }
        images.push_back(std::move(img));
    }

    std::vector<Polynomial> equations;
    for (std::size_t v = 0; v < fib.size(); ++v) {
        const Polynomial cond = substitute(f.total.d(f.total_index(v)), images, ring);
        for (auto& part : detail::split_by_base(cond, nb, dual, uset))
            if (!part.is_zero()) equations.push_back(std::move(part));
    }

    using Assignment = std::vector<std::optional<Rational>>;
    std::vector<Assignment> solutions;
    const std::size_t nu = unknowns.size();

    auto evaluate = [&](const Polynomial& eq, const Assignment& a) {
        std::vector<Polynomial> sub;
        for (std::size_t u = 0; u < nu; ++u)
            sub.push_back(a[u] ? Polynomial::constant(uset, *a[u]) : Polynomial::generator(uset, u));
        return substitute(eq, sub, uset);
    };

    std::vector<Assignment> stack{Assignment(nu)};
    while (!stack.empty()) {
        Assignment a = std::move(stack.back());
        stack.pop_back();
        std::vector<Polynomial> live;
        bool dead = false;
        for (const auto& eq : equations) {
            Polynomial r = evaluate(eq, a);
            if (r.is_zero()) continue;
            if (r.size() == 1 && r.terms().begin()->first.is_one()) {
                dead = true;
                break;
            }
            live.push_back(std::move(r));
        }
        if (dead) continue;
        if (live.empty()) {
            for (std::size_t u = 0; u < nu; ++u)
                if (!a[u])
                    throw UnsupportedInput("retraction value " + ugens[u].name +
                                           " is unconstrained (continuum of components)");
            solutions.push_back(std::move(a));
            continue;
        }
        const Polynomial* uni = nullptr;
        std::size_t var = 0;
        for (const auto& eq : live) {
            std::optional<std::size_t> only;
            bool multi = false;
            for (const auto& [m, c] : eq.terms())
                for (std::size_t u = 0; u < nu; ++u)
                    if (m[u] > 0) {
                        if (only && *only != u) multi = true;
                        only = u;
                    }
            if (!multi && only) {
                uni = &eq;
                var = *only;
                break;
            }
        }
        if (!uni)
            throw UnsupportedInput("retraction conditions are not triangular: no univariate equation among " +
                                   std::to_string(live.size()) + " remaining");
        std::vector<Rational> coeffs;
        for (const auto& [m, c] : uni->terms()) {
            const auto e = static_cast<std::size_t>(m[var]);
            if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
            coeffs[e] += c;
        }
        auto roots = detail::rational_roots(coeffs);
        for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
            Assignment next = a;
            next[var] = *it;
            stack.push_back(std::move(next));
        }
    }

    std::sort(solutions.begin(), solutions.end(), [](const Assignment& x, const Assignment& y) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (*x[i] != *y[i]) return *x[i] < *y[i];
        return false;
    });

    std::vector<Retraction> out;
    for (const auto& a : solutions) {
        Retraction r;
        for (std::size_t v = 0; v < fib.size(); ++v) r.values.emplace_back(f.base.set());
        for (std::size_t u = 0; u < nu; ++u) {
            const auto [v, j] = std::pair{unknowns[u].v, unknowns[u].j};
            r.values[v] += Polynomial::monomial(f.base.set(), dual.elements[j], *a[u]);
            r.slots[{v, j}] = *a[u];
        }
        if (auto bad = validate(r.morphism(f)))
            throw std::logic_error("solved retraction is not a chain map: " + bad->message());
        out.push_back(std::move(r));
    }
    return out;
}

/// Positive-degree model of one component of the section space.
struct ComponentModel {
    Cdga cdga;
    Retraction retraction;
    std::vector<std::string> notes;
};

/**
 * Evaluates degree-0 generators at the retraction's values, kills negative
 * degrees and divides degree 1 by the image of the evaluated d̃ on degree 0.
 * Aborts when a negative-degree generator's differential does not vanish
 * after evaluation (the retraction does not belong to this model).
 */
inline ComponentModel component_model(const SectionSpaceModel& s, const Retraction& r)
{
    const auto& set = s.cdga.generators();
    std::vector<Generator> keep;
    std::vector<std::optional<std::size_t>> new_index(set.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set.degree(i) > 0) {
            new_index[i] = keep.size();
            keep.push_back(set[i]);
        }
    auto kset = make_generator_set(keep);
    std::vector<Polynomial> sub;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (new_index[i]) {
            sub.push_back(Polynomial::generator(kset, *new_index[i]));
        } else if (set.degree(i) == 0) {
            const auto& pv = s.provenance[i];
            auto it = r.slots.find({pv.fiber_generator, pv.base_element});
            sub.push_back(Polynomial::constant(kset, it == r.slots.end() ? Rational(0) : it->second));
        } else {
            sub.push_back(Polynomial(kset));
        }
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.degree(i) >= 0) continue;
        Polynomial residual = substitute(s.cdga.d(i), sub, kset);
        if (!residual.is_zero())
            throw ValidationError("component model: differential of deleted generator '" + set[i].name +
                                  "' leaves residual " + residual.to_string());
    }

    // Linear relations in degree 1 coming from d̃ of degree-0 generators.
    EchelonBasis relations;
    std::vector<SparseVector> rel_rows;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.degree(i) != 0) continue;
        Polynomial img = substitute(s.cdga.d(i), sub, kset);
        SparseVector v;
        for (const auto& [m, c] : img.terms()) {
            auto g = m.as_generator();
            if (!g) throw std::logic_error("degree-1 image is not linear");
            v.emplace(*g, c);
        }
        if (!v.empty()) rel_rows.push_back(v);
    }

    std::vector<Polynomial> d;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (new_index[i]) d.push_back(substitute(s.cdga.d(i), sub, kset));
    Cdga model(kset, std::move(d), s.cdga.cutoff());
    ComponentModel out{std::move(model), r, {}};

    if (!rel_rows.empty()) {
        // Solve each independent relation for its last generator and drop it.
        std::vector<std::size_t> pivots;
        std::vector<Polynomial> solved_images;
        std::vector<Polynomial> img(kset->size(), Polynomial(kset));
        for (std::size_t i = 0; i < kset->size(); ++i) img[i] = Polynomial::generator(kset, i);
        for (const auto& row : rel_rows) {
            Polynomial p(kset);
            for (const auto& [g, c] : row) p.add_term(Polynomial::generator(kset, g).terms().begin()->first, c);
            p = substitute(p, img, kset);
            if (p.is_zero()) continue;
            const auto& [lead_m, lead_c] = *p.terms().rbegin();
            const std::size_t g = *lead_m.as_generator();
            Polynomial rest = p - Polynomial::generator(kset, g, lead_c);
            Polynomial value = rest * Rational(-1 / Rational(lead_c));
            std::vector<Polynomial> step(kset->size());
            for (std::size_t i = 0; i < kset->size(); ++i)
                step[i] = i == g ? value : Polynomial::generator(kset, i);
            for (auto& q : img) q = substitute(q, step, kset);
            pivots.push_back(g);
        }
        std::vector<Generator> keep2;
        std::vector<std::optional<std::size_t>> idx2(kset->size());
        for (std::size_t i = 0; i < kset->size(); ++i)
            if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) {
                idx2[i] = keep2.size();
                keep2.push_back((*kset)[i]);
            }
        auto set2 = make_generator_set(keep2);
        std::vector<Polynomial> rename;
        for (std::size_t i = 0; i < kset->size(); ++i)
            rename.push_back(idx2[i] ? Polynomial::generator(set2, *idx2[i]) : Polynomial(set2));
        std::vector<Polynomial> proj;
        for (const auto& q : img) proj.push_back(substitute(q, rename, set2));
        std::vector<Polynomial> d2;
        for (std::size_t i = 0; i < kset->size(); ++i)
            if (idx2[i]) d2.push_back(substitute(out.cdga.d(i), proj, set2));
        out.cdga = Cdga(set2, std::move(d2), s.cdga.cutoff());
        out.notes.push_back("degree-1 generators reduced by " + std::to_string(pivots.size()) +
                            " relation(s) from degree-0 evaluation");
    }
    require_valid(out.cdga, "component model");
    return out;
}

/// Generator degree census of the section model: {|v| - |a|} with multiplicity.
inline std::map<int, std::size_t> degree_census(const Cdga& c)
{
    std::map<int, std::size_t> out;
    for (const auto& g : c.generators().generators()) ++out[g.degree];
    return out;
}

}  // namespace hfp
