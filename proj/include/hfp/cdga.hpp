#pragma once

/**
 * @file cdga.hpp
 * @brief Commutative differential graded algebras over Q.
 *
 * A Cdga is a free graded-commutative algebra (possibly truncated by
 * monomial relations) with a differential given on generators and extended
 * as a derivation. Cohomology is computed degree by degree on the monomial
 * basis with exact ranks; every result is only claimed up to the degree it
 * was computed for.
 */

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hfp/graded.hpp"
#include "hfp/linalg.hpp"

namespace hfp {

class BasisExplosion : public std::runtime_error {
public:
    BasisExplosion(int degree, std::size_t limit)
        : std::runtime_error("monomial basis in degree " + std::to_string(degree) + " exceeds " +
                             std::to_string(limit) + " elements"),
          degree_(degree)
    {
    }
    int degree() const { return degree_; }

private:
    int degree_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// First violation found by validate(); names the generator and the residual.
struct Violation {
    std::size_t generator = 0;
    std::string generator_name;
    std::string kind;  // "degree", "d^2", "set", "chain-map"
    std::string residual;

    std::string message() const
    {
        return kind + " violation on generator '" + generator_name + "': " + residual;
    }
};

/**
 * Algebra map defined on generators: images[i] is the image of source
 * generator i, all over one target set. Monomials are expanded in canonical
 * order, so Koszul signs come out of the target multiplication.
 */
inline Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images,
                             const GeneratorSetPtr& target)
{
    if (images.size() != p.set()->size())
        throw GeneratorSetMismatch("substitution size does not match the source generator set");
    Polynomial out(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size() && !term.is_zero(); ++i)
            for (int e = 0; e < m[i]; ++e) term = term * images[i];
        out += term;
    }
    return out;
}

class Cdga {
public:
    Cdga() = default;

    Cdga(GeneratorSetPtr set, std::vector<Polynomial> differential, int cutoff)
        : set_(std::move(set)), d_(std::move(differential)), cutoff_(cutoff)
    {
        if (d_.size() != set_->size())
            throw std::invalid_argument("differential must be given on every generator");
        for (auto& p : d_)
            if (!same_set(p.set(), set_))
                throw GeneratorSetMismatch("differential mentions a foreign generator set");
    }

    /// Zero differential.
    Cdga(GeneratorSetPtr set, int cutoff) : set_(std::move(set)), cutoff_(cutoff)
    {
        for (std::size_t i = 0; i < set_->size(); ++i) d_.emplace_back(set_);
    }

    const GeneratorSetPtr& set() const { return set_; }
    const GeneratorSet& generators() const { return *set_; }
    std::size_t size() const { return set_->size(); }
    const Polynomial& d(std::size_t gen) const { return d_.at(gen); }
    const std::vector<Polynomial>& differential() const { return d_; }
    int cutoff() const { return cutoff_; }
    void set_cutoff(int c) { cutoff_ = c; }

    Polynomial gen(std::size_t i) const { return Polynomial::generator(set_, i); }
    Polynomial gen(const std::string& name) const { return Polynomial::generator(set_, name); }

    /// Differential of a monomial by the graded Leibniz rule.
    Polynomial apply_d(const Monomial& m) const
    {
        Polynomial out(set_);
        Monomial prefix(set_->size());
        int prefix_degree = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            const int e = m[i];
            if (e == 0) continue;
            Monomial suffix(set_->size());
            for (std::size_t j = i + 1; j < m.size(); ++j) suffix[j] = m[j];
            // d(g^e) = e g^{e-1} dg; for odd g, e == 1
            Monomial lower(set_->size());
            lower[i] = e - 1;
            Polynomial term = Polynomial::monomial(set_, prefix) * Polynomial::monomial(set_, lower, e) *
                              d_[i] * Polynomial::monomial(set_, suffix);
            if (prefix_degree % 2 != 0) term *= Rational(-1);
            out += term;
            prefix[i] = e;
            prefix_degree += e * set_->degree(i);
        }
        return out;
    }

    Polynomial apply_d(const Polynomial& p) const
    {
        if (!same_set(p.set(), set_)) throw GeneratorSetMismatch("polynomial is not over this algebra");
        Polynomial out(set_);
        for (const auto& [m, c] : p.terms()) out += apply_d(m) * c;
        return out;
    }

    bool operator==(const Cdga& o) const { return same_set(set_, o.set_) && d_ == o.d_; }

    std::string to_string() const
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < size(); ++i) {
            os << "  " << (*set_)[i].name << " (" << set_->degree(i) << ")";
            if (set_->truncation(i) > 0) os << " [^" << set_->truncation(i) << "=0]";
            os << "  d = " << d_[i].to_string() << "\n";
        }
        return os.str();
    }

private:
    GeneratorSetPtr set_;
    std::vector<Polynomial> d_;
    int cutoff_ = 0;
};

/// Checks degree(+1) and d^2 = 0 on every generator, modulo the truncation ideal.
inline std::optional<Violation> validate(const Cdga& c)
{
    const auto& set = c.generators();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Polynomial& dg = c.d(i);
        if (!same_set(dg.set(), c.set())) return Violation{i, set[i].name, "set", dg.to_string()};
        if (!dg.is_homogeneous(set.degree(i) + 1)) return Violation{i, set[i].name, "degree", dg.to_string()};
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        Polynomial dd = c.apply_d(c.d(i));
        if (!dd.is_zero()) return Violation{i, set[i].name, "d^2", dd.to_string()};
    }
    return std::nullopt;
}

inline void require_valid(const Cdga& c, const std::string& what)
{
    if (auto v = validate(c)) throw ValidationError(what + ": " + v->message());
}

struct CohomologyOptions {
    std::size_t max_basis = 60000;
};

/// Per-degree dimensions, degrees 0..max_degree.
struct BettiTable {
    std::vector<std::size_t> dims;

    int max_degree() const { return static_cast<int>(dims.size()) - 1; }
    std::size_t operator[](int k) const { return k >= 0 && k < static_cast<int>(dims.size()) ? dims[k] : 0; }
    bool operator==(const BettiTable&) const = default;

    std::size_t total() const
    {
        std::size_t s = 0;
        for (auto d : dims) s += d;
        return s;
    }
};

namespace detail {

inline std::vector<Monomial> guarded_basis(const GeneratorSet& set, int degree, std::size_t limit)
{
    try {
        return monomial_basis(set, degree, limit);
    } catch (const std::length_error&) {
        throw BasisExplosion(degree, limit);
    }
}

inline std::size_t index_in(const std::vector<Monomial>& basis, const Monomial& m)
{
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) throw std::logic_error("monomial missing from basis");
    return static_cast<std::size_t>(it - basis.begin());
}

inline SparseVector coordinates(const Polynomial& p, const std::vector<Monomial>& basis)
{
    SparseVector v;
    for (const auto& [m, c] : p.terms()) v.emplace(index_in(basis, m), c);
    return v;
}

/// Images of the degree-k basis under d, as coordinates in the degree-(k+1) basis.
inline std::vector<SparseVector> differential_block(const Cdga& c, const std::vector<Monomial>& src,
                                                    const std::vector<Monomial>& dst)
{
    std::vector<SparseVector> out;
    out.reserve(src.size());
    for (const auto& m : src) out.push_back(coordinates(c.apply_d(m), dst));
    return out;
}

/// Degree-k data of a cochain complex: basis, cocycle basis, and coboundaries.
struct DegreeData {
    std::vector<Monomial> basis;
    std::vector<SparseVector> cycles;      // kernel of d_k
    std::vector<SparseVector> boundaries;  // images of d_{k-1}
};

inline DegreeData degree_data(const Cdga& c, int k, const CohomologyOptions& opts)
{
    DegreeData out;
    const auto& set = c.generators();
    out.basis = guarded_basis(set, k, opts.max_basis);
    auto above = guarded_basis(set, k + 1, opts.max_basis);
    out.cycles = kernel(differential_block(c, out.basis, above)).kernel;
    auto below = guarded_basis(set, k - 1, opts.max_basis);
    out.boundaries = differential_block(c, below, out.basis);
    return out;
}

}  // namespace detail

/**
 * dims[k] = dim ker d_k - rank d_{k-1} for k = 0..max_degree.
 * Throws BasisExplosion when a degree's monomial count exceeds the bound.
 */
inline BettiTable cohomology(const Cdga& c, int max_degree, const CohomologyOptions& opts = {})
{
    BettiTable t;
    t.dims.assign(static_cast<std::size_t>(std::max(max_degree, -1) + 1), 0);
    for (int k = 0; k <= max_degree; ++k) {
        auto data = detail::degree_data(c, k, opts);
        t.dims[k] = data.cycles.size() - rank(data.boundaries);
    }
    return t;
}

class CdgaMorphism {
public:
    CdgaMorphism() = default;

    CdgaMorphism(Cdga source, Cdga target, std::vector<Polynomial> assignment)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(assignment))
    {
        if (images_.size() != source_.size())
            throw std::invalid_argument("morphism must assign every source generator");
        for (const auto& p : images_)
            if (!same_set(p.set(), target_.set()))
                throw GeneratorSetMismatch("morphism image is not over the target algebra");
    }

    static CdgaMorphism identity(const Cdga& c)
    {
        std::vector<Polynomial> imgs;
        for (std::size_t i = 0; i < c.size(); ++i) imgs.push_back(c.gen(i));
        return CdgaMorphism(c, c, std::move(imgs));
    }

    const Cdga& source() const { return source_; }
    const Cdga& target() const { return target_; }
    const Polynomial& image(std::size_t gen) const { return images_.at(gen); }
    const std::vector<Polynomial>& images() const { return images_; }

    /// Multiplicative extension of the generator assignment.
    Polynomial apply(const Polynomial& p) const
    {
        if (!same_set(p.set(), source_.set()))
            throw GeneratorSetMismatch("polynomial is not over the morphism source");
        return substitute(p, images_, target_.set());
    }

private:
    Cdga source_;
    Cdga target_;
    std::vector<Polynomial> images_;
};

/// g after f.
inline CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f)
{
    if (!same_set(f.target().set(), g.source().set()))
        throw GeneratorSetMismatch("cannot compose: target and source differ");
    std::vector<Polynomial> imgs;
    for (const auto& p : f.images()) imgs.push_back(g.apply(p));
    return CdgaMorphism(f.source(), g.target(), std::move(imgs));
}

/// Degree preservation and phi(d s) = d phi(s) on every source generator.
inline std::optional<Violation> validate(const CdgaMorphism& m)
{
    const auto& src = m.source().generators();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!m.image(i).is_homogeneous(src.degree(i)))
            return Violation{i, src[i].name, "degree", m.image(i).to_string()};
        Polynomial lhs = m.apply(m.source().d(i));
        Polynomial rhs = m.target().apply_d(m.image(i));
        if (lhs != rhs) return Violation{i, src[i].name, "chain-map", (lhs - rhs).to_string()};
    }
    return std::nullopt;
}

/// Per-degree rank data of the map induced on cohomology.
struct InducedMapDegree {
    int degree = 0;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
    std::size_t rank = 0;

    bool iso() const { return source_dim == target_dim && rank == source_dim; }
};

inline std::vector<InducedMapDegree> induced_on_cohomology(const CdgaMorphism& m, int max_degree,
                                                           const CohomologyOptions& opts = {})
{
    std::vector<InducedMapDegree> out;
    for (int k = 0; k <= max_degree; ++k) {
        auto s = detail::degree_data(m.source(), k, opts);
        auto t = detail::degree_data(m.target(), k, opts);
        EchelonBasis target_bd;
        for (const auto& b : t.boundaries) target_bd.insert(b);
        const std::size_t target_bd_rank = target_bd.rank();
        const std::size_t source_bd_rank = rank(s.boundaries);
        for (const auto& z : s.cycles) {
            Polynomial p(m.source().set());
            for (const auto& [i, c] : z) p.add_term(s.basis[i], c);
            target_bd.insert(detail::coordinates(m.apply(p), t.basis));
        }
        InducedMapDegree row;
        row.degree = k;
        row.source_dim = s.cycles.size() - source_bd_rank;
        row.target_dim = t.cycles.size() - target_bd_rank;
        row.rank = target_bd.rank() - target_bd_rank;
        out.push_back(row);
    }
    return out;
}

/// True iff the induced map on cohomology is bijective in every degree <= max_degree.
inline bool quasi_iso_check(const CdgaMorphism& m, int max_degree, const CohomologyOptions& opts = {})
{
    for (const auto& row : induced_on_cohomology(m, max_degree, opts))
        if (!row.iso()) return false;
    return true;
}

}  // namespace hfp
