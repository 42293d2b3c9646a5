#pragma once

/**
 * @file minimal.hpp
 * @brief Minimal models, rational homotopy tables, fingerprints and ellipticity.
 *
 * minimize() removes contractible pairs (u, w) with du = c·w + ..., c != 0,
 * lowest |w| first. Each step is the quotient by the ideal (u, du), a
 * surjective quasi-isomorphism; the composite is returned as a witness and
 * can be checked with quasi_iso_check. All claims hold up to the cutoff.
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hfp/cdga.hpp"
#include "hfp/parse.hpp"

namespace hfp {

struct LinearBlock {
    int degree = 0;                    // source degree
    std::vector<std::size_t> sources;  // generators of this degree
    std::vector<std::size_t> targets;  // generators of degree + 1
    std::vector<std::vector<Rational>> matrix;  // [target][source]

    std::size_t rank() const
    {
        std::vector<SparseVector> cols;
        for (std::size_t s = 0; s < sources.size(); ++s) {
            SparseVector v;
            for (std::size_t t = 0; t < targets.size(); ++t)
                if (matrix[t][s] != 0) v.emplace(t, matrix[t][s]);
            cols.push_back(std::move(v));
        }
        return hfp::rank(cols);
    }
};

/// Word-length-1 part of the differential, one block per source degree.
struct LinearPart {
    std::map<int, LinearBlock> blocks;

    bool is_zero() const
    {
        for (const auto& [d, b] : blocks)
            for (const auto& row : b.matrix)
                for (const auto& x : row)
                    if (x != 0) return false;
        return true;
    }

    std::size_t rank(int degree) const
    {
        auto it = blocks.find(degree);
        return it == blocks.end() ? 0 : it->second.rank();
    }
};

inline LinearPart linear_part(const Cdga& c)
{
    LinearPart out;
    const auto& set = c.generators();
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < set.size(); ++i) by_degree[set.degree(i)].push_back(i);
    for (const auto& [deg, gens] : by_degree) {
        LinearBlock b;
        b.degree = deg;
        b.sources = gens;
        if (auto it = by_degree.find(deg + 1); it != by_degree.end()) b.targets = it->second;
        b.matrix.assign(b.targets.size(), std::vector<Rational>(b.sources.size(), 0));
        for (std::size_t s = 0; s < b.sources.size(); ++s)
            for (const auto& [m, coef] : c.d(b.sources[s]).terms())
                if (auto g = m.as_generator()) {
                    auto t = std::find(b.targets.begin(), b.targets.end(), *g);
                    b.matrix[static_cast<std::size_t>(t - b.targets.begin())][s] = coef;
                }
        out.blocks.emplace(deg, std::move(b));
    }
    return out;
}

enum class TieBreak { ascending, descending };

struct MinimizeOptions {
    TieBreak tie_break = TieBreak::ascending;
};

struct MinimalModel {
    Cdga minimal;
    CdgaMorphism witness;  // input -> minimal, surjective quasi-isomorphism
    int cutoff = 0;
    bool up_to_cutoff = false;  // generators above the cutoff were not certified
    std::vector<std::string> eliminated;  // "u -> w" pairs in elimination order
};

/**
 * Eliminates contractible pairs until the linear part vanishes. Pair order:
 * lowest target degree, then generator id (ascending or descending per the
 * tie-break option). Generators must have positive degree.
 */
inline MinimalModel minimize(const Cdga& input, int cutoff, const MinimizeOptions& opts = {})
{
    for (std::size_t i = 0; i < input.size(); ++i)
        if (input.generators().degree(i) <= 0)
            throw std::invalid_argument("minimize: generator '" + input.generators()[i].name +
                                        "' has non-positive degree");
    require_valid(input, "minimize input");

    Cdga cur = input;
    std::vector<Polynomial> to_cur;
    for (std::size_t i = 0; i < input.size(); ++i) to_cur.push_back(input.gen(i));
    MinimalModel out;
    out.cutoff = cutoff;

    while (true) {
        const auto& set = cur.generators();
        std::optional<std::tuple<int, long, long>> best_key;
        std::size_t bu = 0, bw = 0;
        Rational bc;
        for (std::size_t u = 0; u < set.size(); ++u)
            for (const auto& [m, c] : cur.d(u).terms()) {
                auto w = m.as_generator();
                if (!w) continue;
                const long su = opts.tie_break == TieBreak::ascending ? static_cast<long>(u) : -static_cast<long>(u);
                const long sw = opts.tie_break == TieBreak::ascending ? static_cast<long>(*w) : -static_cast<long>(*w);
                std::tuple<int, long, long> key{set.degree(*w), su, sw};
                if (!best_key || key < *best_key) {
                    best_key = key;
                    bu = u;
                    bw = *w;
                    bc = c;
                }
            }
        if (!best_key) break;

        // σ: u ↦ 0, w ↦ -(du - c w)/c, other generators kept.
        Polynomial rest = cur.d(bu) - Polynomial::generator(cur.set(), bw, bc);
        for (const auto& [m, c] : rest.terms())
            if (m[bu] > 0 || m[bw] > 0)
                throw std::invalid_argument("minimize: d(" + set[bu].name + ") is not triangular in " + set[bw].name);
        std::vector<Generator> keep;
        std::vector<std::optional<std::size_t>> idx(set.size());
        for (std::size_t i = 0; i < set.size(); ++i)
            if (i != bu && i != bw) {
                idx[i] = keep.size();
                keep.push_back(set[i]);
            }
        auto nset = make_generator_set(keep);
        std::vector<Polynomial> rename;
        for (std::size_t i = 0; i < set.size(); ++i)
            rename.push_back(idx[i] ? Polynomial::generator(nset, *idx[i]) : Polynomial(nset));
        std::vector<Polynomial> sigma = rename;
        sigma[bw] = substitute(rest, rename, nset) * Rational(-1 / bc);
        std::vector<Polynomial> nd;
        for (std::size_t i = 0; i < set.size(); ++i)
            if (idx[i]) nd.push_back(substitute(cur.d(i), sigma, nset));
        out.eliminated.push_back(set[bu].name + " -> " + set[bw].name);
        for (auto& p : to_cur) p = substitute(p, sigma, nset);
        cur = Cdga(nset, std::move(nd), cur.cutoff());
    }

    for (std::size_t i = 0; i < cur.size(); ++i)
        out.up_to_cutoff |= cur.generators().degree(i) > cutoff;
    cur.set_cutoff(cutoff);
    require_valid(cur, "minimal model");
    out.witness = CdgaMorphism(input, cur, std::move(to_cur));
    out.minimal = std::move(cur);
    return out;
}

/// dims[k] = dim π_k ⊗ Q for k = 0..cutoff (index 0 unused).
struct PiTable {
    std::vector<std::size_t> dims;

    int cutoff() const { return static_cast<int>(dims.size()) - 1; }
    std::size_t operator[](int k) const { return k >= 0 && k < static_cast<int>(dims.size()) ? dims[k] : 0; }
    bool operator==(const PiTable&) const = default;

    std::size_t total() const
    {
        std::size_t s = 0;
        for (auto d : dims) s += d;
        return s;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (int k = 1; k <= cutoff(); ++k)
            if (dims[k]) {
                os << (first ? "" : ", ") << k << ':' << dims[k];
                first = false;
            }
        os << '}';
        return os.str();
    }
};

/// Generator census of a minimal model; rejects non-minimal input.
inline PiTable pi_table(const Cdga& minimal, int cutoff)
{
    if (!linear_part(minimal).is_zero()) throw std::invalid_argument("pi_table: input is not minimal");
    PiTable t;
    t.dims.assign(static_cast<std::size_t>(std::max(cutoff, 0) + 1), 0);
    for (const auto& g : minimal.generators().generators())
        if (g.degree >= 1 && g.degree <= cutoff) ++t.dims[g.degree];
    return t;
}

inline PiTable pi_table(const Cdga& minimal) { return pi_table(minimal, minimal.cutoff()); }

// ---------------------------------------------------------------------------
// Shapes: products of S<k>, CP<m>, K<k>, T<k> and point factors.

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ShapeFactor {
    enum class Kind { point, sphere, cp, k_type, t_type } kind = Kind::point;
    int index = 0;

    std::string to_string() const
    {
        switch (kind) {
            case Kind::point: return "pt";
            case Kind::sphere: return "S" + std::to_string(index);
            case Kind::cp: return "CP" + std::to_string(index);
            case Kind::k_type: return "K" + std::to_string(index);
            case Kind::t_type: return "T" + std::to_string(index);
        }
        return "?";
    }
};

/// "S3*S7*CP3", "K1", "*" (point), "pt*S5". Empty factors are points.
inline std::vector<ShapeFactor> parse_shape(const std::string& expr)
{
    std::vector<ShapeFactor> out;
    std::string tok;
    auto flush = [&](const std::string& raw) {
        std::string t;
        for (char ch : raw)
            if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
        if (t.empty() || t == "pt" || t == "1") {
            out.push_back({ShapeFactor::Kind::point, 0});
            return;
        }
        std::string head, digits;
        std::size_t i = 0;
        while (i < t.size() && std::isalpha(static_cast<unsigned char>(t[i]))) head += t[i++];
        digits = t.substr(i);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw ShapeError("malformed shape factor '" + t + "'");
        const int n = std::stoi(digits);
        ShapeFactor f;
        f.index = n;
        if (head == "S") {
            f.kind = ShapeFactor::Kind::sphere;
            if (n < 1) throw ShapeError("sphere dimension must be >= 1");
        } else if (head == "CP") {
            f.kind = ShapeFactor::Kind::cp;
            if (n < 1) throw ShapeError("CP dimension must be >= 1");
        } else if (head == "K") {
            f.kind = ShapeFactor::Kind::k_type;
            if (n < 1) throw ShapeError("K index must be >= 1");
        } else if (head == "T") {
            f.kind = ShapeFactor::Kind::t_type;
            if (n < 1) throw ShapeError("T index must be >= 1");
        } else {
            throw ShapeError("unknown shape factor '" + t + "'");
        }
        out.push_back(f);
    };
    std::string trimmed;
    for (char ch : expr)
        if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
    if (trimmed == "*") return {ShapeFactor{ShapeFactor::Kind::point, 0}};
    std::size_t start = 0;
    for (std::size_t i = 0; i <= expr.size(); ++i)
        if (i == expr.size() || expr[i] == '*') {
            flush(expr.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

namespace detail {

struct FactorModel {
    std::vector<Generator> gens;
    std::vector<std::string> d;  // polynomial strings
};

inline FactorModel factor_model(const ShapeFactor& f, const std::string& p)
{
    FactorModel m;
    auto x = [&](int s) { return p + "x" + std::to_string(s); };
    auto y = [&](int r) { return p + "y" + std::to_string(r); };
    switch (f.kind) {
        case ShapeFactor::Kind::point: break;
        case ShapeFactor::Kind::sphere:
            if (f.index % 2) {
                m.gens = {{y(f.index), f.index}};
                m.d = {"0"};
            } else {
                m.gens = {{x(f.index), f.index}, {y(2 * f.index - 1), 2 * f.index - 1}};
                m.d = {"0", x(f.index) + "^2"};
            }
            break;
        case ShapeFactor::Kind::cp:
            m.gens = {{x(2), 2}, {y(2 * f.index + 1), 2 * f.index + 1}};
            m.d = {"0", x(2) + "^" + std::to_string(f.index + 1)};
            break;
        case ShapeFactor::Kind::k_type:
        case ShapeFactor::Kind::t_type: {
            const bool k = f.kind == ShapeFactor::Kind::k_type;
            const int n = f.index;
            for (int s = 1; s <= n; ++s) {
                m.gens.push_back({x(s), k ? 4 * s : 4 * s + 2});
                m.d.push_back("0");
            }
            for (int r = k ? 2 : 3; r <= (k ? 2 * n : 2 * n + 1); ++r) {
                m.gens.push_back({y(r), 4 * r - 1});
                std::string d;
                const int target = k ? r : r - 1;
                for (int s = 1; s <= n; ++s) {
                    const int t = target - s;
                    if (t < 1 || t > n) continue;
                    d += (d.empty() ? "" : " + ") + x(s) + "*" + x(t);
                }
                m.d.push_back(d.empty() ? "0" : d);
            }
            break;
        }
    }
    return m;
}

}  // namespace detail

/// Reference minimal model of a product shape, generators prefixed per factor.
inline Cdga shape_model(const std::vector<ShapeFactor>& factors, int cutoff)
{
    std::vector<Generator> gens;
    std::vector<std::string> ds;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto m = detail::factor_model(factors[i], "f" + std::to_string(i + 1) + "_");
        gens.insert(gens.end(), m.gens.begin(), m.gens.end());
        ds.insert(ds.end(), m.d.begin(), m.d.end());
    }
    auto set = make_generator_set(gens);
    std::vector<Polynomial> d;
    for (const auto& s : ds) d.push_back(parse_polynomial(s, set));
    Cdga c(set, std::move(d), cutoff);
    require_valid(c, "shape model");
    return c;
}

inline Cdga shape_model(const std::string& expr, int cutoff) { return shape_model(parse_shape(expr), cutoff); }

inline std::string shape_string(const std::vector<ShapeFactor>& factors)
{
    std::string s;
    for (const auto& f : factors) s += (s.empty() ? "" : "*") + f.to_string();
    return s.empty() ? "pt" : s;
}

/// π and Betti tables up to a cutoff. Shape comparisons see nothing else.
struct Fingerprint {
    PiTable pi;
    BettiTable betti;
    std::optional<std::string> shape;
    int cutoff = 0;
};

inline Fingerprint fingerprint_of_minimal(const Cdga& minimal, int cutoff, const CohomologyOptions& opts = {})
{
    return Fingerprint{pi_table(minimal, cutoff), cohomology(minimal, cutoff, opts), std::nullopt, cutoff};
}

/// True iff the shape's reference model has the same π and Betti tables up to f.cutoff.
inline bool fingerprint_match(const Fingerprint& f, const std::string& shape_expr, const CohomologyOptions& opts = {})
{
    const Cdga ref = shape_model(shape_expr, f.cutoff);
    return pi_table(ref, f.cutoff) == f.pi && cohomology(ref, f.cutoff, opts) == f.betti;
}

// ---------------------------------------------------------------------------
// Ellipticity

enum class Ellipticity { certified_elliptic, not_elliptic_evidence, inconclusive };

inline std::string to_string(Ellipticity e)
{
    switch (e) {
        case Ellipticity::certified_elliptic: return "certified-elliptic";
        case Ellipticity::not_elliptic_evidence: return "certified-not-elliptic-up-to-cutoff-evidence";
        case Ellipticity::inconclusive: return "inconclusive";
    }
    return "?";
}

struct EllipticVerdict {
    Ellipticity verdict = Ellipticity::inconclusive;
    int cutoff = 0;
    int formal_dimension = 0;
    std::string reason;
};

/**
 * For a minimal model with finitely many generators, formal dimension
 * N = Σ_odd |y| - Σ_even (|x| - 1). Certified elliptic when every generator
 * sits at or below cutoff/2, H^N != 0 and H vanishes on (N, cutoff].
 * Nonzero cohomology above N (or generators crowding the top window) is
 * evidence against ellipticity. Everything else is inconclusive.
 */
inline EllipticVerdict elliptic_verdict(const Cdga& minimal, int cutoff, const CohomologyOptions& opts = {})
{
    if (!linear_part(minimal).is_zero()) throw std::invalid_argument("elliptic_verdict: input is not minimal");
    EllipticVerdict v;
    v.cutoff = cutoff;
    int n = 0, top_gen = 0;
    for (const auto& g : minimal.generators().generators()) {
        n += g.odd() ? g.degree : -(g.degree - 1);
        top_gen = std::max(top_gen, g.degree);
    }
    v.formal_dimension = n;
    const auto betti = cohomology(minimal, cutoff, opts);
    for (int k = std::max(n + 1, 0); k <= cutoff; ++k)
        if (betti[k] != 0) {
            v.verdict = Ellipticity::not_elliptic_evidence;
            v.reason = "H^" + std::to_string(k) + " != 0 above the formal dimension " + std::to_string(n) +
                       " (up to degree " + std::to_string(cutoff) + ")";
            return v;
        }
    if (2 * top_gen > cutoff) {
        v.reason = "generators reach degree " + std::to_string(top_gen) + ", above half the cutoff " +
                   std::to_string(cutoff);
        return v;
    }
    if (n < 0 || n > cutoff || betti[n] == 0) {
        v.reason = "no fundamental class in degree " + std::to_string(n);
        return v;
    }
    v.verdict = Ellipticity::certified_elliptic;
    v.reason = "finite π census, cohomology ends at the formal dimension " + std::to_string(n) +
               " and vanishes up to degree " + std::to_string(cutoff);
    return v;
}

}  // namespace hfp
