#pragma once

// Exact sparse linear algebra over Q: incremental row echelon form,
// rank and kernel of a linear map given by the images of basis vectors.

#include <cstddef>
#include <map>
#include <vector>

#include "hfp/graded.hpp"

namespace hfp {

using SparseVector = std::map<std::size_t, Rational>;

inline void axpy(SparseVector& y, const Rational& a, const SparseVector& x)
{
    if (a == 0) return;
    for (const auto& [i, v] : x) {
        auto [it, inserted] = y.emplace(i, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

/**
 * Rows kept in echelon form, keyed by pivot column; each row has a
 * leading 1 at its pivot. An optional companion vector tracks the linear
 * combination of inserted vectors that produced the row.
 */
class EchelonBasis {
public:
    /// Reduce v (and its companion) against the stored pivots.
    void reduce(SparseVector& v, SparseVector* combo = nullptr) const
    {
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            const std::size_t pivot = it->first;
            const Rational factor = -it->second;
            axpy(v, factor, row->second.vec);
            if (combo) axpy(*combo, factor, row->second.combo);
            it = v.upper_bound(pivot);
        }
    }

    /// Returns true when v was independent of the stored rows.
    bool insert(SparseVector v, SparseVector combo = {})
    {
        reduce(v, &combo);
        if (v.empty()) return false;
        const auto pivot = v.begin()->first;
        const Rational inv = 1 / Rational(v.begin()->second);
        for (auto& [i, x] : v) x *= inv;
        for (auto& [i, x] : combo) x *= inv;
        rows_.emplace(pivot, Row{std::move(v), std::move(combo)});
        return true;
    }

    bool contains(SparseVector v) const
    {
        reduce(v);
        return v.empty();
    }

    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        SparseVector vec;
        SparseVector combo;
    };
    std::map<std::size_t, Row> rows_;
};

struct KernelResult {
    std::size_t rank = 0;
    std::vector<SparseVector> kernel;  // coordinates in the source basis
};

/// images[i] is the image of the i-th source basis vector.
inline KernelResult kernel(const std::vector<SparseVector>& images)
{
    KernelResult out;
    EchelonBasis ech;
    for (std::size_t i = 0; i < images.size(); ++i) {
        SparseVector v = images[i];
        SparseVector combo{{i, Rational(1)}};
        ech.reduce(v, &combo);
        if (v.empty()) {
            out.kernel.push_back(std::move(combo));
        } else {
            ech.insert(std::move(v), std::move(combo));
        }
    }
    out.rank = ech.rank();
    return out;
}

inline std::size_t rank(const std::vector<SparseVector>& vectors)
{
    EchelonBasis ech;
    for (const auto& v : vectors) ech.insert(v);
    return ech.rank();
}

}  // namespace hfp
