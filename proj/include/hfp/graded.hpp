#pragma once

/**
 * @file graded.hpp
 * @brief Graded-commutative polynomial algebra over the rationals.
 *
 * A GeneratorSet fixes the generators (name, degree) of a free
 * graded-commutative algebra together with monomial truncation relations
 * g^p = 0. Monomials are stored as dense exponent vectors in ascending
 * generator order; every product is brought back into that order and the
 * Koszul sign is accumulated by counting odd-odd transpositions.
 *
 * Degrees may be zero or negative (section-space models carry such
 * generators). Parity is the parity of the degree, so degree-0 generators
 * are even.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hfp {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parse "3", "-2/5", "+7". Throws std::invalid_argument.
inline Rational parse_rational(const std::string& text)
{
    std::string s = text;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
        if (!ok) throw std::invalid_argument("malformed rational '" + text + "'");
    }
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("malformed rational '" + text + "'");
    q.canonicalize();
    return q;
}

class GeneratorSetMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Generator {
    std::string name;
    int degree = 0;

    bool odd() const { return degree % 2 != 0; }
    bool operator==(const Generator&) const = default;
};

/// Relation g^power = 0 for the generator at index `generator`.
struct TruncationRelation {
    std::size_t generator = 0;
    int power = 1;
    bool operator==(const TruncationRelation&) const = default;
};

using TruncationIdeal = std::vector<TruncationRelation>;

class GeneratorSet {
public:
    GeneratorSet() = default;

    explicit GeneratorSet(std::vector<Generator> gens, const TruncationIdeal& ideal = {})
        : gens_(std::move(gens)), trunc_(gens_.size(), 0)
    {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (gens_[i].name == gens_[j].name)
                    throw std::invalid_argument("duplicate generator name '" + gens_[i].name + "'");
        for (const auto& rel : ideal) {
            if (rel.generator >= gens_.size())
                throw std::out_of_range("truncation relation names an unknown generator");
            if (rel.power < 1)
                throw std::invalid_argument("truncation power must be >= 1");
            const int cur = trunc_[rel.generator];
            trunc_[rel.generator] = cur == 0 ? rel.power : std::min(cur, rel.power);
        }
    }

    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }
    int degree(std::size_t i) const { return gens_[i].degree; }
    bool odd(std::size_t i) const { return gens_[i].odd(); }

    /// 0 when the generator is not truncated.
    int truncation(std::size_t i) const { return trunc_[i]; }

    TruncationIdeal ideal() const
    {
        TruncationIdeal out;
        for (std::size_t i = 0; i < trunc_.size(); ++i)
            if (trunc_[i] > 0) out.push_back({i, trunc_[i]});
        return out;
    }

    std::optional<std::size_t> find(const std::string& name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return i;
        return std::nullopt;
    }

    std::size_t index_of(const std::string& name) const
    {
        if (auto i = find(name)) return *i;
        throw std::out_of_range("unknown generator '" + name + "'");
    }

    bool operator==(const GeneratorSet& other) const
    {
        return gens_ == other.gens_ && trunc_ == other.trunc_;
    }

private:
    std::vector<Generator> gens_;
    std::vector<int> trunc_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

inline GeneratorSetPtr make_generator_set(std::vector<Generator> gens, const TruncationIdeal& ideal = {})
{
    return std::make_shared<const GeneratorSet>(std::move(gens), ideal);
}

inline bool same_set(const GeneratorSetPtr& a, const GeneratorSetPtr& b)
{
    return a == b || (a && b && *a == *b);
}

/// Exponent vector in ascending generator order.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n, 0) {}
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

    std::size_t size() const { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    int& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<int>& exponents() const { return exps_; }

    bool is_one() const
    {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }

    /// Total number of generator factors.
    int word_length() const
    {
        int n = 0;
        for (int e : exps_) n += e;
        return n;
    }

    /// Index of the single generator when word_length() == 1.
    std::optional<std::size_t> as_generator() const
    {
        if (word_length() != 1) return std::nullopt;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] == 1) return i;
        return std::nullopt;
    }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<int> exps_;
};

inline int degree(const GeneratorSet& set, const Monomial& m)
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * set.degree(i);
    return d;
}

/// True when the monomial survives the parity rule and the truncation ideal.
inline bool is_admissible(const GeneratorSet& set, const Monomial& m)
{
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) return false;
        if (set.odd(i) && m[i] > 1) return false;
        const int p = set.truncation(i);
        if (p > 0 && m[i] >= p) return false;
    }
    return true;
}

/**
 * Product of two canonical monomials. Returns the sign (+1/-1) and the
 * canonical product, or nullopt when the product vanishes (repeated odd
 * factor or truncation).
 *
 * Moving the odd factors of b left past the odd factors of a with a larger
 * index costs one sign per pair.
 */
inline std::optional<std::pair<int, Monomial>> multiply(const GeneratorSet& set, const Monomial& a,
                                                        const Monomial& b)
{
    const std::size_t n = set.size();
    Monomial out(n);
    int odd_in_a_above = 0;  // odd factors of a with index > i, filled from the right
    int swaps = 0;
    for (std::size_t k = n; k-- > 0;) {
        if (set.odd(k)) {
            if (b[k] && a[k]) return std::nullopt;
            if (b[k]) swaps += odd_in_a_above;
            if (a[k]) ++odd_in_a_above;
        }
        out[k] = a[k] + b[k];
    }
    if (!is_admissible(set, out)) return std::nullopt;
    return std::make_pair(swaps % 2 == 0 ? 1 : -1, std::move(out));
}

class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(GeneratorSetPtr set) : set_(std::move(set)) {}

    static Polynomial constant(GeneratorSetPtr set, const Rational& c)
    {
        Polynomial p(set);
        if (c != 0) p.terms_.emplace(Monomial(set->size()), c);
        return p;
    }

    /// c * m, reduced to zero when m is not admissible.
    static Polynomial monomial(GeneratorSetPtr set, Monomial m, const Rational& c = 1)
    {
        Polynomial p(set);
        if (m.size() != set->size()) throw GeneratorSetMismatch("monomial length does not match generator set");
        if (c != 0 && is_admissible(*set, m)) p.terms_.emplace(std::move(m), c);
        return p;
    }

    static Polynomial generator(GeneratorSetPtr set, std::size_t id, const Rational& c = 1)
    {
        if (id >= set->size()) throw std::out_of_range("generator index out of range");
        Monomial m(set->size());
        m[id] = 1;
        return monomial(std::move(set), std::move(m), c);
    }

    static Polynomial generator(GeneratorSetPtr set, const std::string& name, const Rational& c = 1)
    {
        const auto id = set->index_of(name);
        return generator(std::move(set), id, c);
    }

    const GeneratorSetPtr& set() const { return set_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Degree of a nonzero homogeneous polynomial; nullopt for zero or mixed.
    std::optional<int> degree() const
    {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            const int dm = hfp::degree(*set_, m);
            if (d && *d != dm) return std::nullopt;
            d = dm;
        }
        return d;
    }

    bool is_homogeneous(int d) const
    {
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return hfp::degree(*set_, t.first) == d; });
    }

    bool is_mixed() const { return !is_zero() && !degree(); }

    /// Adds c*m without admissibility checks beyond truncation.
    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0 || !is_admissible(*set_, m)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& q)
    {
        check(q);
        for (const auto& [m, c] : q.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& q)
    {
        check(q);
        for (const auto& [m, c] : q.terms_) add_term(m, -c);
        return *this;
    }

    Polynomial& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator-(Polynomial p) { return p *= Rational(-1); }
    friend Polynomial operator*(Polynomial p, const Rational& s) { return p *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q)
    {
        p.check(q);
        Polynomial out(p.set_);
        for (const auto& [ma, ca] : p.terms_)
            for (const auto& [mb, cb] : q.terms_)
                if (auto prod = multiply(*p.set_, ma, mb))
                    out.add_term(prod->second, prod->first == 1 ? Rational(ca * cb) : Rational(-ca * cb));
        return out;
    }

    bool operator==(const Polynomial& q) const { return same_set(set_, q.set_) && terms_ == q.terms_; }

    /// Part of word length exactly `n` (n = 1 gives the linear part).
    Polynomial word_length_part(int n) const
    {
        Polynomial out(set_);
        for (const auto& [m, c] : terms_)
            if (m.word_length() == n) out.terms_.emplace(m, c);
        return out;
    }

    std::string to_string() const;

private:
    void check(const Polynomial& q) const
    {
        if (!same_set(set_, q.set_))
            throw GeneratorSetMismatch("polynomials live over different generator sets");
    }

    GeneratorSetPtr set_;
    Terms terms_;
};

/// Graded-commutative product, reduced modulo the set's truncation ideal.
inline Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

inline Polynomial power(const Polynomial& p, int e)
{
    Polynomial out = Polynomial::constant(p.set(), 1);
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

inline std::string monomial_string(const GeneratorSet& set, const Monomial& m)
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += set[i].name;
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

/// Deterministic rendering, e.g. "e^2 + 1/2*x*e - 3".
inline std::string Polynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Higher-degree terms first, then canonical order; stable across runs.
    std::vector<std::pair<const Monomial*, const Rational*>> order;
    for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        return a.first->word_length() > b.first->word_length() ||
               (a.first->word_length() == b.first->word_length() && *a.first > *b.first);
    });
    for (const auto& [m, c] : order) {
        Rational mag = abs(*c);
        const bool neg = sgn(*c) < 0;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (m->is_one()) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << monomial_string(*set_, *m);
        }
    }
    return os.str();
}

namespace detail {

inline void enumerate_basis(const GeneratorSet& set, std::size_t idx, int remaining, Monomial& cur,
                            std::vector<Monomial>& out, std::size_t limit)
{
    if (idx == set.size()) {
        if (remaining == 0) {
            out.push_back(cur);
            if (limit && out.size() > limit) throw std::length_error("monomial basis exceeds limit");
        }
        return;
    }
    const int d = set.degree(idx);
    int max_e;
    if (set.odd(idx)) {
        max_e = 1;
    } else if (d > 0) {
        max_e = remaining > 0 ? remaining / d : 0;
    } else {
        max_e = -1;  // unbounded unless truncated
    }
    const int p = set.truncation(idx);
    if (p > 0) max_e = max_e < 0 ? p - 1 : std::min(max_e, p - 1);
    if (max_e < 0)
        throw std::domain_error("monomial basis is infinite: generator '" + set[idx].name +
                                "' has degree <= 0 and no truncation");
    for (int e = 0; e <= max_e; ++e) {
        cur[idx] = e;
        enumerate_basis(set, idx + 1, remaining - e * d, cur, out, limit);
    }
    cur[idx] = 0;
}

}  // namespace detail

/**
 * All admissible monomials of exactly the given degree, in canonical
 * (ascending) order. Generators of degree <= 0 must be odd or truncated,
 * otherwise the basis would be infinite and std::domain_error is thrown.
 * A nonzero `limit` bounds the result size (std::length_error beyond it).
 */
inline std::vector<Monomial> monomial_basis(const GeneratorSet& set, int degree, std::size_t limit = 0)
{
    std::vector<Monomial> out;
    Monomial cur(set.size());
    bool has_nonpositive = false;
    for (std::size_t i = 0; i < set.size(); ++i) has_nonpositive |= set.degree(i) <= 0;
    if (degree < 0 && !has_nonpositive) return out;
    detail::enumerate_basis(set, 0, degree, cur, out, limit);
    std::sort(out.begin(), out.end());
    return out;
}

/// Every admissible monomial of a finite-dimensional algebra, ordered by degree then canonically.
inline std::vector<Monomial> full_basis(const GeneratorSet& set)
{
    int top = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const int d = set.degree(i);
        if (d <= 0) throw std::domain_error("full_basis needs positive-degree generators");
        int e = set.odd(i) ? 1 : set.truncation(i) - 1;
        if (!set.odd(i) && set.truncation(i) == 0)
            throw std::domain_error("full_basis needs every even generator truncated");
        top += e * d;
    }
    std::vector<Monomial> out;
    for (int d = 0; d <= top; ++d) {
        auto b = monomial_basis(set, d);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

}  // namespace hfp
