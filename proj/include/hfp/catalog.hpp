#pragma once

/**
 * @file catalog.hpp
 * @brief Relative Sullivan models of Borel fibrations  (A,0) -> (A⊗ΛV, D) -> (ΛV, d).
 *
 * The total algebra lists the base generators first, then the fiber
 * generators, under the same names. The fiber differential is D reduced
 * modulo the positive-degree base elements, so the relative-model condition
 * holds by construction.
 *
 * Catalog families:
 *  - sphere_odd_s3(n):     S^n (n odd) under S^3, trivial fibration.
 *  - sphere_4k_s3(k, l):   S^{4k} under S^3, De' = e^2 + l x^k e.
 *  - sphere_4k2_s3(k):     S^{4k+2} under S^3, De' = e^2.
 *  - cp_s3(n, l):          CP^n under S^3, De' = e^{n+1} + sum_m l_m e^{n+1-2m} x^m.
 *  - eilenberg_product_s1: K(Z,n) x K(Z,n+1) under S^1, Dy = x z.
 *
 * Bases are truncated at the smallest power whose degree exceeds every
 * fiber degree + 1, except where the family fixes the truncation itself.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfp/cdga.hpp"
#include "hfp/parse.hpp"

namespace hfp {

struct FibrationModel {
    std::string family = "user";
    ParamMap params;
    Cdga base;   // (A, 0)
    Cdga fiber;  // (ΛV, d)
    Cdga total;  // (A⊗ΛV, D), base generators first
    std::vector<std::string> notes;

    std::size_t base_size() const { return base.size(); }
    std::size_t fiber_size() const { return fiber.size(); }

    /// Total-algebra index of fiber generator i.
    std::size_t total_index(std::size_t fiber_gen) const { return base_size() + fiber_gen; }

    /// Largest fiber generator degree.
    int top_fiber_degree() const
    {
        int top = 0;
        for (const auto& g : fiber.generators().generators()) top = std::max(top, g.degree);
        return top;
    }

    bool operator==(const FibrationModel& o) const
    {
        return family == o.family && params == o.params && base == o.base && fiber == o.fiber &&
               total == o.total;
    }
};

struct GeneratorSpec {
    std::string name;
    int degree = 0;
    int truncate = 0;  // base only; 0 = none
};

namespace detail {

inline int default_cutoff(const std::vector<GeneratorSpec>& fiber)
{
    int top = 0;
    for (const auto& g : fiber) top = std::max(top, g.degree);
    return 2 * top + 2;
}

}  // namespace detail

/**
 * Assembles and validates a fibration model from generator lists and the
 * total differential D on fiber generators (missing entries mean D = 0).
 * Throws ValidationError when an invariant fails.
 */
inline FibrationModel make_fibration(std::string family, ParamMap params, const std::vector<GeneratorSpec>& base_gens,
                                     const std::vector<GeneratorSpec>& fiber_gens,
                                     const std::map<std::string, Polynomial>& total_d)
{
    const int cutoff = detail::default_cutoff(fiber_gens);
    std::vector<Generator> bg, fg, tg;
    TruncationIdeal bideal;
    for (std::size_t i = 0; i < base_gens.size(); ++i) {
        const auto& g = base_gens[i];
        if (g.degree <= 0) throw ValidationError("base generator '" + g.name + "' must have positive degree");
        if (g.degree % 2 == 0 && g.truncate == 0)
            throw ValidationError("base generator '" + g.name + "' must be truncated (finite-dimensional base)");
        bg.push_back({g.name, g.degree});
        if (g.truncate > 0) bideal.push_back({i, g.truncate});
    }
    for (const auto& g : fiber_gens) {
        if (g.truncate != 0) throw ValidationError("fiber generator '" + g.name + "' cannot be truncated");
        fg.push_back({g.name, g.degree});
    }
    tg = bg;
    tg.insert(tg.end(), fg.begin(), fg.end());

    FibrationModel f;
    f.family = std::move(family);
    f.params = std::move(params);
    auto bset = make_generator_set(bg, bideal);
    auto fset = make_generator_set(fg);
    auto tset = make_generator_set(tg, bideal);
    f.base = Cdga(bset, cutoff);

    for (const auto& [name, poly] : total_d) {
        if (!tset->find(name) || *tset->find(name) < bg.size())
            throw ValidationError("differential assigned to non-fiber generator '" + name + "'");
        if (!same_set(poly.set(), tset)) throw GeneratorSetMismatch("differential of '" + name + "' is not over the total algebra");
    }

    std::vector<Polynomial> td, fd;
    std::vector<Polynomial> to_fiber;  // total -> fiber: base generators to 0
    for (std::size_t i = 0; i < bg.size(); ++i) {
        td.emplace_back(tset);
        to_fiber.emplace_back(fset);
    }
    for (std::size_t i = 0; i < fg.size(); ++i) to_fiber.push_back(Polynomial::generator(fset, i));
    for (const auto& g : fg) {
        auto it = total_d.find(g.name);
        td.push_back(it == total_d.end() ? Polynomial(tset) : it->second);
    }
    for (std::size_t i = 0; i < fg.size(); ++i) fd.push_back(substitute(td[bg.size() + i], to_fiber, fset));
    f.total = Cdga(tset, std::move(td), cutoff);
    f.fiber = Cdga(fset, std::move(fd), cutoff);
    require_valid(f.total, "total algebra");
    require_valid(f.fiber, "fiber algebra");
    return f;
}

/// Builds from polynomial strings over the total algebra's generators.
inline FibrationModel make_fibration_from_strings(std::string family, ParamMap params,
                                                  const std::vector<GeneratorSpec>& base_gens,
                                                  const std::vector<GeneratorSpec>& fiber_gens,
                                                  const std::map<std::string, std::string>& total_d)
{
    std::vector<Generator> tg;
    TruncationIdeal ideal;
    for (std::size_t i = 0; i < base_gens.size(); ++i) {
        tg.push_back({base_gens[i].name, base_gens[i].degree});
        if (base_gens[i].truncate > 0) ideal.push_back({i, base_gens[i].truncate});
    }
    for (const auto& g : fiber_gens) tg.push_back({g.name, g.degree});
    auto tset = make_generator_set(tg, ideal);
    std::map<std::string, Polynomial> d;
    for (const auto& [name, text] : total_d) d.emplace(name, parse_polynomial(text, tset, params));
    return make_fibration(std::move(family), std::move(params), base_gens, fiber_gens, d);
}

/// D(v) = d(v) for every fiber generator (with d read back into the total algebra).
inline bool is_trivial(const FibrationModel& f)
{
    std::vector<Polynomial> incl;
    for (std::size_t i = 0; i < f.fiber_size(); ++i)
        incl.push_back(Polynomial::generator(f.total.set(), f.total_index(i)));
    for (std::size_t i = 0; i < f.fiber_size(); ++i)
        if (substitute(f.fiber.d(i), incl, f.total.set()) != f.total.d(f.total_index(i))) return false;
    return true;
}

/// Checks the FibrationModel invariants; returns a description of the first failure.
inline std::optional<std::string> check_fibration(const FibrationModel& f)
{
    for (std::size_t i = 0; i < f.base_size(); ++i) {
        if (!f.base.d(i).is_zero()) return "base differential is nonzero";
        if (!f.total.d(i).is_zero()) return "D is nonzero on base generator '" + f.base.generators()[i].name + "'";
    }
    try {
        (void)full_basis(f.base.generators());
    } catch (const std::exception& e) {
        return std::string("base is not finite-dimensional: ") + e.what();
    }
    if (auto v = validate(f.total)) return "total: " + v->message();
    if (auto v = validate(f.fiber)) return "fiber: " + v->message();
    return std::nullopt;
}

inline void require_odd(int n, const char* what)
{
    if (n % 2 == 0) throw std::invalid_argument(std::string(what) + ": n must be odd");
}

/// S^n, n odd >= 3: Λe over Λx/x^{ceil((n-3)/4)+1}, |x| = 4, De = 0.
inline FibrationModel sphere_odd_s3(int n)
{
    if (n < 3) throw std::invalid_argument("sphere_odd_s3: n must be >= 3");
    require_odd(n, "sphere_odd_s3");
    const int top_power = (n - 3 + 3) / 4;  // ceil((n-3)/4)
    auto f = make_fibration("sphere_odd_s3", {{"n", n}}, {{"x", 4, top_power + 1}}, {{"e", n}}, {});
    f.notes.push_back(
        "base keeps 1, x, ..., x^" + std::to_string(top_power) +
        " so the section model has one generator per sphere factor; truncating one power earlier loses the top one");
    return f;
}

/// S^{4k}: |e| = 4k, |e'| = 8k-1, De' = e^2 + λ x^k e over Λx/x^{2k+1}.
inline FibrationModel sphere_4k_s3(int k, const Rational& lambda)
{
    if (k < 1) throw std::invalid_argument("sphere_4k_s3: k must be >= 1");
    ParamMap params{{"k", k}, {"lambda", lambda}};
    return make_fibration_from_strings("sphere_4k_s3", params, {{"x", 4, 2 * k + 1}},
                                       {{"e", 4 * k}, {"e'", 8 * k - 1}},
                                       {{"e'", "e^2 + lambda*x^" + std::to_string(k) + "*e"}});
}

/// S^{4k+2}: |e| = 4k+2, |e'| = 8k+3, De' = e^2 over Λx/x^{2k+1} (always trivial).
inline FibrationModel sphere_4k2_s3(int k)
{
    if (k < 1) throw std::invalid_argument("sphere_4k2_s3: k must be >= 1");
    auto f = make_fibration_from_strings("sphere_4k2_s3", {{"k", k}}, {{"x", 4, 2 * k + 1}},
                                         {{"e", 4 * k + 2}, {"e'", 8 * k + 3}}, {{"e'", "e^2"}});
    const std::string slot = k == 1 ? "x" : "x^" + std::to_string(k);
    f.notes.push_back("the constructed section model contains a degree-2 generator e[" + slot +
                      "], absent from the product S^3 x S^7 x T_" + std::to_string(k));
    return f;
}

/// Number of λ parameters of cp_s3(n).
inline int cp_lambda_count(int n) { return n / 2; }

/**
 * CP^n: |e| = 2, |e'| = 2n+1 over Λx/x^{floor((n+1)/2)+1}, |x| = 4,
 * De' = e^{n+1} + sum_{m=1}^{floor(n/2)} λ_m e^{n+1-2m} x^m, so that the section
 * model has d(e'_r) = λ_{k+1-r} e^{2r} (odd n) in the r-indexing by degree.
 */
inline FibrationModel cp_s3(int n, const std::vector<Rational>& lambda)
{
    if (n < 2) throw std::invalid_argument("cp_s3: n must be >= 2");
    const int count = cp_lambda_count(n);
    if (static_cast<int>(lambda.size()) != count)
        throw std::invalid_argument("cp_s3: expected " + std::to_string(count) + " lambda values for n=" +
                                    std::to_string(n) + ", got " + std::to_string(lambda.size()));
    ParamMap params{{"n", n}};
    std::string de = "e^" + std::to_string(n + 1);
    for (int m = 1; m <= count; ++m) {
        const std::string p = "lambda_" + std::to_string(m);
        params[p] = lambda[m - 1];
        de += " + " + p + "*e^" + std::to_string(n + 1 - 2 * m) + "*x^" + std::to_string(m);
    }
    return make_fibration_from_strings("cp_s3", params, {{"x", 4, (n + 1) / 2 + 1}}, {{"e", 2}, {"e'", 2 * n + 1}},
                                       {{"e'", de}});
}

/// η_n: |x| = 2, |z| = n, |y| = n+1, Dz = 0, Dy = x z, base Λx/x^{floor((n+2)/2)+1}.
inline FibrationModel eilenberg_product_s1(int n)
{
    if (n < 2) throw std::invalid_argument("eilenberg_product_s1: n must be >= 2");
    return make_fibration_from_strings("eilenberg_product_s1", {{"n", n}}, {{"x", 2, (n + 2) / 2 + 1}},
                                       {{"z", n}, {"y", n + 1}}, {{"y", "x*z"}});
}

namespace detail {

/// Structural equality up to family/params/notes and generator names (positional).
inline bool same_shape(const FibrationModel& a, const FibrationModel& b)
{
    if (a.base_size() != b.base_size() || a.fiber_size() != b.fiber_size()) return false;
    const auto& ta = a.total.generators();
    const auto& tb = b.total.generators();
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (ta.degree(i) != tb.degree(i) || ta.truncation(i) != tb.truncation(i)) return false;
    std::vector<Polynomial> rename;
    for (std::size_t i = 0; i < tb.size(); ++i) rename.push_back(Polynomial::generator(a.total.set(), i));
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (substitute(b.total.d(i), rename, a.total.set()) != a.total.d(i)) return false;
    return true;
}

inline std::optional<Rational> coefficient_of(const Polynomial& p, const std::vector<int>& exps)
{
    Monomial m(exps);
    if (m.size() != p.set()->size()) return std::nullopt;
    return p.coefficient(m);
}

}  // namespace detail

/**
 * Identifies a model as an instance of a catalog family (positional
 * generator matching). Returns e.g. "sphere_4k_s3(k=1, lambda=1)" or
 * nullopt for "not a catalog instance".
 */
inline std::optional<std::string> catalog_match(const FibrationModel& f)
{
    if (f.base_size() != 1) return std::nullopt;
    const int xdeg = f.base.generators().degree(0);
    const auto& fib = f.fiber.generators();
    auto try_match = [&](const FibrationModel& cand, const std::string& label) -> std::optional<std::string> {
        if (detail::same_shape(f, cand)) return label;
        return std::nullopt;
    };
    try {
        if (xdeg == 4 && f.fiber_size() == 1 && fib.degree(0) >= 3 && fib.degree(0) % 2 == 1) {
            const int n = fib.degree(0);
            if (auto r = try_match(sphere_odd_s3(n), "sphere_odd_s3(n=" + std::to_string(n) + ")")) return r;
        }
        if (xdeg == 4 && f.fiber_size() == 2) {
            const int a = fib.degree(0), b = fib.degree(1);
            if (a % 4 == 0 && a >= 4 && b == 2 * a - 1) {
                const int k = a / 4;
                std::vector<int> exps(3, 0);
                exps[0] = k;
                exps[1] = 1;
                const Rational lambda = detail::coefficient_of(f.total.d(2), exps).value_or(0);
                if (auto r = try_match(sphere_4k_s3(k, lambda),
                                       "sphere_4k_s3(k=" + std::to_string(k) + ", lambda=" + to_string(lambda) + ")"))
                    return r;
            }
            if (a % 4 == 2 && a >= 6 && b == 2 * a - 1) {
                const int k = (a - 2) / 4;
                if (auto r = try_match(sphere_4k2_s3(k), "sphere_4k2_s3(k=" + std::to_string(k) + ")")) return r;
            }
            if (a == 2 && b >= 5 && b % 2 == 1) {
                const int n = (b - 1) / 2;
                std::vector<Rational> lambda;
                std::string label = "cp_s3(n=" + std::to_string(n) + ", lambda=(";
                for (int m = 1; m <= cp_lambda_count(n); ++m) {
                    std::vector<int> exps{m, n + 1 - 2 * m, 0};
                    lambda.push_back(detail::coefficient_of(f.total.d(2), exps).value_or(0));
                    label += (m > 1 ? "," : "") + to_string(lambda.back());
                }
                if (auto r = try_match(cp_s3(n, lambda), label + "))")) return r;
            }
        }
        if (xdeg == 2 && f.fiber_size() == 2 && fib.degree(1) == fib.degree(0) + 1 && fib.degree(0) >= 2) {
            const int n = fib.degree(0);
            if (auto r = try_match(eilenberg_product_s1(n), "eilenberg_product_s1(n=" + std::to_string(n) + ")"))
                return r;
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace hfp
