#pragma once

// Sparse exact linear algebra: sorted sparse vectors and an incremental
// reduced-echelon engine with optional combination tracking.
//
// Conventions used everywhere downstream:
//  * a "row" is a sorted vector of (column, value) pairs with no zero values;
//  * pivots are chosen at the smallest column index;
//  * reduced rows have pivot value 1 and no entries at other pivot columns,
//    so a basis in this form is canonical for its row space.

#include "fields.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace kf {

template <class K>
using SVec = std::vector<std::pair<uint32_t, K>>;

template <class K>
K svec_get(const SVec<K>& v, uint32_t col, const K& zero) {
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& e, uint32_t c) { return e.first < c; });
    if (it != v.end() && it->first == col) return it->second;
    return zero;
}

// a + c*b, merged; drops exact zeros
template <class K>
SVec<K> svec_add_scaled(const SVec<K>& a, const K& c, const SVec<K>& b) {
    SVec<K> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            K val = c * b[j].second;
            if (!is_zero(val)) out.emplace_back(b[j].first, std::move(val));
            ++j;
        } else {
            K val = a[i].second + c * b[j].second;
            if (!is_zero(val)) out.emplace_back(a[i].first, std::move(val));
            ++i; ++j;
        }
    }
    return out;
}

template <class K>
void svec_scale_inplace(SVec<K>& v, const K& c) {
    for (auto& e : v) e.second = e.second * c;
}

template <class K>
SVec<K> svec_neg(SVec<K> v) {
    for (auto& e : v) e.second = -e.second;
    return v;
}

// sort+combine duplicate indices (for accumulation buffers)
template <class K>
void svec_normalize(SVec<K>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SVec<K> out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second = out.back().second + e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return is_zero(e.second); }),
              out.end());
    v = std::move(out);
}

// Incremental RREF. Rows are kept fully reduced against each other at all
// times, so `rows` sorted by pivot is a canonical basis of the span.
template <class K>
struct Echelon {
    uint32_t ambient = 0;
    bool track = false;
    std::vector<SVec<K>> rows;
    std::vector<SVec<K>> combos;       // combos[i]: rows[i] as combination of inserted vectors
    std::vector<int32_t> pivot_of_col; // column -> index into rows, or -1
    uint32_t inserted = 0;

    explicit Echelon(uint32_t amb, bool track_combos = false)
        : ambient(amb), track(track_combos), pivot_of_col(amb, -1) {}

    size_t rank() const { return rows.size(); }

    // Reduce v against current rows; also returns the combination of
    // existing rows that was subtracted (as row indices) when tracking.
    void reduce_inplace(SVec<K>& v, SVec<K>* combo = nullptr) const {
        // repeatedly eliminate the leading reducible entry
        size_t scan = 0;
        while (scan < v.size()) {
            uint32_t col = v[scan].first;
            int32_t r = pivot_of_col[col];
            if (r < 0) { ++scan; continue; }
            K c = -v[scan].second;
            v = svec_add_scaled(v, c, rows[r]);
            if (combo) *combo = svec_add_scaled(*combo, c, combos[r]);
            // entries before `scan` were at non-pivot columns already; the
            // reduced row has no entries at other pivot columns, so the
            // prefix stays irreducible
        }
    }

    // Insert a vector. Returns, when tracking and v reduces to zero, the
    // combination of previously inserted vectors that equals v (with unit
    // coefficient on the vector itself).
    std::optional<SVec<K>> insert(SVec<K> v) {
        SVec<K> combo;
        if (track && !v.empty()) combo = SVec<K>{{inserted, unit_like(v)}};
        ++inserted;
        reduce_inplace(v, track ? &combo : nullptr);
        if (v.empty()) {
            if (track) return combo;
            return SVec<K>{};
        }
        K lead_inv = unit_like(v) / v.front().second;
        svec_scale_inplace(v, lead_inv);
        if (track) svec_scale_inplace(combo, lead_inv);
        uint32_t pcol = v.front().first;
        // back-eliminate the new pivot from existing rows
        for (size_t i = 0; i < rows.size(); ++i) {
            K c = svec_get(rows[i], pcol, zero_like(v));
            if (is_zero(c)) continue;
            K nc = -c;
            rows[i] = svec_add_scaled(rows[i], nc, v);
            if (track) combos[i] = svec_add_scaled(combos[i], nc, combo);
        }
        pivot_of_col[pcol] = int32_t(rows.size());
        rows.push_back(std::move(v));
        if (track) combos.push_back(std::move(combo));
        return std::nullopt;
    }

    bool contains(SVec<K> v) const {
        reduce_inplace(v);
        return v.empty();
    }

    // Coordinates of v in terms of `rows` (requires v in span). Rows are
    // reduced, so coordinates are just the entries of v at pivot columns.
    std::optional<SVec<K>> coords(const SVec<K>& v) const {
        SVec<K> cs;
        SVec<K> rem = v;
        size_t scan = 0;
        while (scan < rem.size()) {
            uint32_t col = rem[scan].first;
            int32_t r = pivot_of_col[col];
            if (r < 0) return std::nullopt;
            K c = rem[scan].second;
            cs.emplace_back(uint32_t(r), c);
            K nc = -c;
            rem = svec_add_scaled(rem, nc, rows[r]);
        }
        std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return cs;
    }

    // canonical order: rows sorted by pivot column
    std::vector<SVec<K>> sorted_rows() const {
        std::vector<SVec<K>> out = rows;
        std::sort(out.begin(), out.end(),
                  [](const SVec<K>& a, const SVec<K>& b) { return a.front().first < b.front().first; });
        return out;
    }

  private:
    static K unit_like(const SVec<K>& v) { return v.front().second / v.front().second; }
    static K zero_like(const SVec<K>& v) { return v.front().second - v.front().second; }
};

// Rank of a family of rows; forward elimination only (no back-substitution),
// rows fed sparsest first. Destroys its argument.
template <class K>
size_t rank_of_rows(std::vector<SVec<K>>& rws, uint32_t ambient) {
    std::stable_sort(rws.begin(), rws.end(),
                     [](const SVec<K>& a, const SVec<K>& b) { return a.size() < b.size(); });
    std::vector<int32_t> piv(ambient, -1);
    std::vector<SVec<K>> kept;
    kept.reserve(std::min(rws.size(), size_t(ambient)));
    for (auto& v : rws) {
        size_t scan = 0;
        while (scan < v.size()) {
            int32_t r = piv[v[scan].first];
            if (r < 0) break; // irreducible leading entry: new pivot
            K c = -(v[scan].second / kept[r].front().second);
            v = svec_add_scaled(v, c, kept[r]);
        }
        if (v.empty()) continue;
        piv[v.front().first] = int32_t(kept.size());
        kept.push_back(std::move(v));
    }
    return kept.size();
}

// Kernel of the linear map sending the standard basis vector i to rows[i]
// (i.e. null combinations of the rows), canonicalized.
template <class K>
std::vector<SVec<K>> null_combinations(const std::vector<SVec<K>>& rws, uint32_t ambient,
                                       const K& one) {
    Echelon<K> ech(ambient, true);
    Echelon<K> ker(uint32_t(rws.size()));
    for (uint32_t i = 0; i < rws.size(); ++i) {
        auto combo = ech.insert(rws[i]); // must be called for every i to keep indices aligned
        if (!combo) continue;
        if (combo->empty()) *combo = SVec<K>{{i, one}}; // zero input row
        ker.insert(std::move(*combo));
    }
    return ker.sorted_rows();
}

// Kernel of the matrix whose rows are `rws` acting on column vectors,
// extracted from the RREF by the free-column construction.
template <class K>
std::vector<SVec<K>> kernel_of_rows(const std::vector<SVec<K>>& rws, uint32_t ambient, const K& one) {
    Echelon<K> ech(ambient);
    for (auto r : rws) ech.insert(std::move(r));
    std::vector<SVec<K>> basis;
    auto rr = ech.sorted_rows();
    K zero = one;
    zero = zero - one;
    for (uint32_t f = 0; f < ambient; ++f) {
        if (ech.pivot_of_col[f] >= 0) continue;
        SVec<K> x{{f, one}};
        for (const auto& row : rr) {
            K c = svec_get(row, f, zero);
            if (!is_zero(c)) x.emplace_back(row.front().first, -c);
        }
        svec_normalize(x);
        basis.push_back(std::move(x));
    }
    // already ordered by free column; canonicalize to RREF anyway
    Echelon<K> canon(ambient);
    for (auto& b : basis) canon.insert(std::move(b));
    return canon.sorted_rows();
}

} // namespace kf
