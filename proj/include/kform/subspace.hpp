#pragma once

// Subspaces of tensor powers E^{(x)n}, held as canonical RREF bases so that
// equality is literal row comparison. Intersection goes through null
// combinations of the stacked bases (cheap when both bases are small
// relative to the ambient dimension).

#include "linalg.hpp"

#include <cstdint>
#include <vector>

namespace kf {

// Encoding of words over {1..g}: enc(l_1..l_n) = sum (l_k - 1) g^(n-k).
// The leftmost letter is the most significant digit.
inline uint64_t word_pow(uint32_t g, uint32_t n) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (r > (uint64_t(1) << 62) / g) fail("DegreeOverflow", "g^n exceeds index range");
        r *= g;
    }
    return r;
}

inline uint64_t word_encode(const std::vector<uint32_t>& digits, uint32_t g) {
    uint64_t e = 0;
    for (uint32_t d : digits) {
        if (d < 1 || d > g) fail("BadIndex", "digit " + std::to_string(d) + " out of range 1.." + std::to_string(g));
        e = e * g + (d - 1);
    }
    return e;
}

inline std::vector<uint32_t> word_decode(uint64_t e, uint32_t g, uint32_t n) {
    std::vector<uint32_t> d(n);
    for (uint32_t i = 0; i < n; ++i) {
        d[n - 1 - i] = uint32_t(e % g) + 1;
        e /= g;
    }
    return d;
}

template <class K>
struct Subspace {
    uint32_t ambient = 0;
    std::vector<SVec<K>> basis; // canonical RREF, sorted by pivot column

    Subspace() = default;
    explicit Subspace(uint32_t amb) : ambient(amb) {}

    uint32_t dim() const { return uint32_t(basis.size()); }

    static Subspace from_rows(uint32_t ambient, const std::vector<SVec<K>>& rws) {
        Echelon<K> e(ambient);
        for (auto r : rws) e.insert(std::move(r));
        Subspace s(ambient);
        s.basis = e.sorted_rows();
        return s;
    }

    static Subspace full(uint32_t ambient, const K& one) {
        Subspace s(ambient);
        s.basis.reserve(ambient);
        for (uint32_t i = 0; i < ambient; ++i) s.basis.push_back(SVec<K>{{i, one}});
        return s;
    }

    bool contains(const SVec<K>& v) const {
        Echelon<K> e(ambient);
        for (auto r : basis) e.insert(std::move(r));
        return e.contains(v);
    }

    bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
};

template <class K>
Subspace<K> subspace_sum(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient != b.ambient) fail("DimensionMismatch", "sum of subspaces of different ambient spaces");
    Echelon<K> e(a.ambient);
    for (auto r : a.basis) e.insert(std::move(r));
    for (auto r : b.basis) e.insert(std::move(r));
    Subspace<K> s(a.ambient);
    s.basis = e.sorted_rows();
    return s;
}

template <class K>
Subspace<K> subspace_intersect(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient != b.ambient) fail("DimensionMismatch", "intersection of subspaces of different ambient spaces");
    // null combinations of stacked bases; the a-part of each combination
    // spans the intersection
    Echelon<K> ech(a.ambient, true);
    Echelon<K> inter(a.ambient);
    size_t na = a.basis.size();
    for (const auto& r : a.basis) ech.insert(r);
    for (const auto& r : b.basis) {
        auto combo = ech.insert(r);
        if (!combo) continue;
        SVec<K> x;
        for (const auto& [i, c] : *combo) {
            if (i < na) x = svec_add_scaled(x, c, a.basis[i]);
        }
        if (!x.empty()) inter.insert(std::move(x));
    }
    Subspace<K> s(a.ambient);
    s.basis = inter.sorted_rows();
    return s;
}

// E^{(x)i} (x) S (x) E^{(x)j} inside E^{(x)(i+n+j)}, for S in E^{(x)n}.
template <class K>
Subspace<K> tensor_place(const Subspace<K>& S, uint32_t g, uint32_t n, uint32_t i, uint32_t j) {
    uint64_t gi = word_pow(g, i), gj = word_pow(g, j);
    uint64_t amb = word_pow(g, i + n + j);
    if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "tensor placement ambient too large");
    std::vector<SVec<K>> rws;
    rws.reserve(size_t(gi) * gj * S.basis.size());
    for (uint64_t I = 0; I < gi; ++I)
        for (const auto& row : S.basis)
            for (uint64_t J = 0; J < gj; ++J) {
                SVec<K> r;
                r.reserve(row.size());
                for (const auto& [c, v] : row)
                    r.emplace_back(uint32_t((I * word_pow(g, n) + c) * gj + J), v);
                rws.push_back(std::move(r));
            }
    // rows of a placement of an RREF basis are already mutually reduced;
    // just canonicalize the order
    return Subspace<K>::from_rows(uint32_t(amb), rws);
}

} // namespace kf
