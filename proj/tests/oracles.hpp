#pragma once

// Reference computations used by the tests. None of these call into the
// engine's basis enumeration, sign logic or linear algebra.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

/// A graded generator as the oracles see it.
struct Gen {
    int degree;
    int truncate;  // 0 = none
};

/// Product of two monomials written as words of generator ids. Returns the
/// sign and sorted word, or nullopt when an odd generator repeats or a
/// truncation is exceeded. Sign from bubble sort on odd-odd swaps.
inline std::optional<std::pair<int, std::vector<int>>> word_product(const std::vector<Gen>& gens,
                                                                    std::vector<int> a, const std::vector<int>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    int sign = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < a.size() - i; ++j)
            if (a[j] > a[j + 1]) {
                if (gens[a[j]].degree % 2 != 0 && gens[a[j + 1]].degree % 2 != 0) sign = -sign;
                std::swap(a[j], a[j + 1]);
            }
    std::map<int, int> count;
    for (int g : a) ++count[g];
    for (const auto& [g, c] : count) {
        if (gens[g].degree % 2 != 0 && c > 1) return std::nullopt;
        if (gens[g].truncate > 0 && c >= gens[g].truncate) return std::nullopt;
    }
    return std::make_pair(sign, a);
}

/// Number of monomials of the given degree, by direct recursion.
inline std::size_t basis_count(const std::vector<Gen>& gens, int degree, std::size_t i = 0)
{
    if (i == gens.size()) return degree == 0 ? 1 : 0;
    const auto& g = gens[i];
    int max_e = g.degree % 2 != 0 ? 1 : (g.truncate > 0 ? g.truncate - 1 : degree / std::max(g.degree, 1));
    std::size_t total = 0;
    for (int e = 0; e <= max_e && e * g.degree <= degree; ++e) total += basis_count(gens, degree - e * g.degree, i + 1);
    return total;
}

/// Closed form for Λx/x^m: one monomial in degrees 0, |x|, ..., (m-1)|x|.
inline std::size_t truncated_count(int xdeg, int m, int degree)
{
    return degree >= 0 && degree % xdeg == 0 && degree / xdeg < m ? 1 : 0;
}

/// Dense rank over Q.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> rows)
{
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i][c] != 0) {
                const mpq_class f = rows[i][c] / rows[r][c];
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
            }
        ++r;
    }
    return r;
}

/// ⊕_i H^i(base) ⊗ π_{i+*}(fiber): the mapping-space census, from the base
/// Betti degrees and the fiber's homotopy degrees.
inline std::map<int, std::size_t> mapping_census(const std::vector<int>& base_betti_degrees,
                                                 const std::vector<int>& fiber_pi_degrees)
{
    std::map<int, std::size_t> out;
    for (int i : base_betti_degrees)
        for (int v : fiber_pi_degrees)
            if (v - i > 0) ++out[v - i];
    return out;
}

/// Betti degrees of Λx/x^m.
inline std::vector<int> truncated_betti_degrees(int xdeg, int m)
{
    std::vector<int> out;
    for (int i = 0; i < m; ++i) out.push_back(i * xdeg);
    return out;
}

/// Rational roots of c^2 + λc.
inline std::set<mpq_class> quadratic_roots(const mpq_class& lambda) { return {mpq_class(0), mpq_class(-lambda)}; }

/// Betti numbers of a product of spheres S^{d_1} x ... x S^{d_r}, odd d_i.
inline std::map<int, std::size_t> odd_sphere_product_betti(const std::vector<int>& dims)
{
    std::map<int, std::size_t> out{{0, 1}};
    for (int d : dims) {
        std::map<int, std::size_t> next = out;
        for (const auto& [k, v] : out) next[k + d] += v;
        out = std::move(next);
    }
    return out;
}

}  // namespace oracle
