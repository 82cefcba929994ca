#pragma once

// Chain complexes attached to an N-homogeneous algebra: the generalized
// Koszul complex and its contractions (strands A_{t-n} (x) V_n with the
// letter-moving differential), and the bimodule / small variants used for
// Hochschild-type computations.
//
// All complexes are built one internal degree at a time as explicit sparse
// matrices, so exactness questions reduce to rank counts.

#include "graded_basis.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace kf {

// Components of the dual algebra realized inside E^{(x)n}:
// full below N, the relation space at N, then
// V_n = (V_{n-1} (x) E) n (E (x) V_{n-1}).
template <class F>
std::vector<Subspace<typename F::Elem>> dual_components(const F& field,
                                                        const Presentation<typename F::Elem>& P,
                                                        uint32_t max_n) {
    using K = typename F::Elem;
    std::vector<Subspace<K>> V;
    V.reserve(max_n + 1);
    for (uint32_t n = 0; n <= max_n; ++n) {
        uint64_t amb = word_pow(P.g, n);
        if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "dual component too large");
        if (n < P.N) {
            V.push_back(Subspace<K>::full(uint32_t(amb), field.one()));
        } else if (n == P.N) {
            V.push_back(P.R);
        } else {
            auto right = tensor_place(V[n - 1], P.g, n - 1, 0, 1);
            auto left = tensor_place(V[n - 1], P.g, n - 1, 1, 0);
            V.push_back(subspace_intersect(right, left));
        }
    }
    return V;
}

// V_n must embed into E (x) V_{n-1} and V_{n-1} (x) E for the letter-moving
// differentials to be defined.
template <class K>
bool chain_nested(const std::vector<Subspace<K>>& V, uint32_t g) {
    for (uint32_t n = 1; n < V.size(); ++n) {
        if (V[n].dim() == 0) continue;
        auto left = tensor_place(V[n - 1], g, n - 1, 1, 0);
        auto right = tensor_place(V[n - 1], g, n - 1, 0, 1);
        for (const auto& r : V[n].basis)
            if (!left.contains(r) || !right.contains(r)) return false;
    }
    return true;
}

// One homogeneous strand of a complex: space_dim[j] and the differential
// maps[j] : C_j -> C_{j-1} stored as one image row per C_j basis vector
// (maps[0] stays empty).
template <class K>
struct ChainSlice {
    std::vector<uint32_t> space_dim;
    std::vector<std::vector<SVec<K>>> maps;
};

template <class K>
std::vector<int64_t> homology_dims(const ChainSlice<K>& c) {
    size_t len = c.space_dim.size();
    std::vector<size_t> ranks(len + 1, 0);
    for (size_t j = 1; j < len; ++j) {
        auto rows = c.maps[j];
        ranks[j] = rank_of_rows(rows, c.space_dim[j - 1]);
    }
    std::vector<int64_t> h(len);
    for (size_t j = 0; j < len; ++j)
        h[j] = int64_t(c.space_dim[j]) - int64_t(ranks[j]) - int64_t(j + 1 < len ? ranks[j + 1] : 0);
    return h;
}

template <class K>
bool composites_vanish(const ChainSlice<K>& c) {
    for (size_t j = 2; j < c.maps.size(); ++j)
        for (const auto& row : c.maps[j]) {
            SVec<K> img;
            for (const auto& [i, v] : row) img = svec_add_scaled(img, v, c.maps[j - 1][i]);
            if (!img.empty()) return false;
        }
    return true;
}

// Representative of the homology class at position j, when nonzero.
template <class K>
std::optional<SVec<K>> homology_witness(const ChainSlice<K>& c, uint32_t j, const K& one) {
    std::vector<SVec<K>> cycles;
    if (j == 0) {
        cycles.reserve(c.space_dim[0]);
        for (uint32_t i = 0; i < c.space_dim[0]; ++i) cycles.push_back(SVec<K>{{i, one}});
    } else {
        cycles = null_combinations(c.maps[j], c.space_dim[j - 1], one);
    }
    Echelon<K> image(c.space_dim[j]);
    if (j + 1 < c.maps.size())
        for (const auto& r : c.maps[j + 1]) image.insert(r);
    for (auto& z : cycles)
        if (!image.contains(z)) return z;
    return std::nullopt;
}

// True when v is a cycle at position j that no boundary reaches.
template <class K>
bool vector_is_homology_witness(const ChainSlice<K>& c, uint32_t j, const SVec<K>& v) {
    if (v.empty()) return false;
    if (j > 0) {
        SVec<K> image;
        for (const auto& [i, coef] : v) image = svec_add_scaled(image, coef, c.maps[j][i]);
        if (!image.empty()) return false;
    }
    Echelon<K> boundaries(c.space_dim[j]);
    if (j + 1 < c.maps.size())
        for (const auto& r : c.maps[j + 1]) boundaries.insert(r);
    return !boundaries.contains(v);
}

// nu_N: 0, 1, N, N+1, 2N, 2N+1, ...
inline std::vector<uint32_t> alternating_positions(uint32_t N, uint32_t upto) {
    std::vector<uint32_t> pos;
    for (uint32_t k = 0;; ++k) {
        uint32_t even = N * k, odd = N * k + 1;
        if (even > upto) break;
        pos.push_back(even);
        if (odd > upto) break;
        pos.push_back(odd);
    }
    return pos;
}

// Positions n(2k) = Nk + r, n(2k+1) = Nk + (N-p) + r with 0 <= r < p <= N-1;
// the arrows then move N-p and p letters alternately.
inline std::vector<uint32_t> contraction_positions(uint32_t N, uint32_t p, uint32_t r,
                                                   uint32_t upto) {
    if (p < 1 || p > N - 1 || r >= p)
        fail("BadContractionIndices", "need 0 <= r < p <= N-1");
    std::vector<uint32_t> pos;
    for (uint32_t k = 0;; ++k) {
        uint32_t even = N * k + r, odd = N * k + (N - p) + r;
        if (even > upto) break;
        pos.push_back(even);
        if (odd > upto) break;
        pos.push_back(odd);
    }
    return pos;
}

// d^p on one strand: A_s (x) V_n -> A_{s+p} (x) V_{n-p}, rows indexed by
// (i * dim V_n + t).
template <class F>
std::vector<SVec<typename F::Elem>> letter_move_rows(GradedBasis<F>& A, uint32_t s,
                                                     const std::vector<Subspace<typename F::Elem>>& V,
                                                     uint32_t n, uint32_t p) {
    using K = typename F::Elem;
    uint32_t g = A.g;
    const auto& Vn = V[n];
    const auto& Vt = V[n - p];
    Echelon<K> tar(Vt.ambient);
    for (const auto& r : Vt.basis) tar.insert(r);

    uint64_t tail_w = word_pow(g, n - p);
    // per V-basis row: its image decomposed as sum over length-p prefixes
    std::vector<std::vector<std::pair<uint64_t, SVec<K>>>> split(Vn.dim());
    std::vector<uint64_t> prefixes;
    for (uint32_t t = 0; t < Vn.dim(); ++t) {
        std::map<uint64_t, SVec<K>> parts;
        for (const auto& [enc, c] : Vn.basis[t])
            parts[enc / tail_w].emplace_back(uint32_t(enc % tail_w), c);
        for (auto& [u, vec] : parts) {
            svec_normalize(vec);
            auto coords = tar.coords(vec);
            if (!coords) fail("ChainMismatch", "component does not embed after moving letters");
            if (coords->empty()) continue;
            split[t].emplace_back(u, std::move(*coords));
            prefixes.push_back(u);
        }
    }
    std::sort(prefixes.begin(), prefixes.end());
    prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());

    uint32_t as = A.dim(s), dimVt = Vt.dim();
    uint64_t width = uint64_t(A.dim(s + p)) * dimVt;
    if (width > (uint64_t(1) << 31)) fail("DegreeOverflow", "strand too large");
    std::vector<SVec<K>> rows(size_t(as) * Vn.dim());
    for (uint32_t i = 0; i < as; ++i) {
        std::map<uint64_t, SVec<K>> prod; // a_i . u for needed prefixes
        for (uint64_t u : prefixes)
            prod.emplace(u, A.product(s, SVec<K>{{i, A.field.one()}}, p, u));
        for (uint32_t t = 0; t < Vn.dim(); ++t) {
            SVec<K> row;
            for (const auto& [u, coords] : split[t]) {
                const auto& left = prod[u];
                for (const auto& [ai, ca] : left)
                    for (const auto& [ti, ct] : coords)
                        row.emplace_back(uint32_t(uint64_t(ai) * dimVt + ti), ca * ct);
            }
            svec_normalize(row);
            rows[size_t(i) * Vn.dim() + t] = std::move(row);
        }
    }
    return rows;
}

// Strand of total degree t over the given positions; truncated where the
// module degree would go negative.
template <class F>
ChainSlice<typename F::Elem> strand_complex(GradedBasis<F>& A,
                                            const std::vector<Subspace<typename F::Elem>>& V,
                                            const std::vector<uint32_t>& positions, uint32_t t) {
    using K = typename F::Elem;
    ChainSlice<K> c;
    for (size_t j = 0; j < positions.size(); ++j) {
        uint32_t n = positions[j];
        if (n > t || n >= V.size()) break;
        c.space_dim.push_back(A.dim(t - n) * V[n].dim());
        if (j == 0) {
            c.maps.emplace_back();
            continue;
        }
        uint32_t p = positions[j] - positions[j - 1];
        c.maps.push_back(letter_move_rows(A, t - n, V, n, p));
    }
    return c;
}

// Bimodule strand: K_j = sum over s of A_s (x) V_{n_j} (x) A_{T-n_j-s},
// with the one-sided letter moves d_L (prefix into the left factor) and
// d_R (suffix into the right factor). Odd-to-even arrows apply d_L - d_R,
// even-to-odd arrows apply sum_p d_L^p d_R^{N-1-p}.
template <class F>
class BimoduleBuilder {
    using K = typename F::Elem;

public:
    BimoduleBuilder(GradedBasis<F>& A, const std::vector<Subspace<K>>& V, uint32_t T)
        : A_(A), V_(V), T_(T) {}

    ChainSlice<K> build(const std::vector<uint32_t>& positions, uint32_t N) {
        ChainSlice<K> c;
        for (size_t j = 0; j < positions.size(); ++j) {
            uint32_t n = positions[j];
            if (n > T_ || n >= V_.size()) break;
            c.space_dim.push_back(space_dim(n));
            if (j == 0) {
                c.maps.emplace_back();
                continue;
            }
            uint32_t drop = positions[j] - positions[j - 1];
            bool odd_source = (j % 2 == 1);
            c.maps.push_back(differential_rows(n, drop, odd_source, N));
        }
        return c;
    }

private:
    GradedBasis<F>& A_;
    const std::vector<Subspace<K>>& V_;
    uint32_t T_;

    uint32_t space_dim(uint32_t n) {
        uint64_t total = 0;
        for (uint32_t s = 0; s + n <= T_; ++s)
            total += uint64_t(A_.dim(s)) * V_[n].dim() * A_.dim(T_ - n - s);
        if (total > (uint64_t(1) << 31)) fail("DegreeOverflow", "bimodule strand too large");
        return uint32_t(total);
    }

    // flat index of (s-block, left coord, middle coord, right coord)
    uint32_t flat(uint32_t n, uint32_t s, uint32_t i, uint32_t t, uint32_t k) {
        uint64_t off = 0;
        for (uint32_t s2 = 0; s2 < s; ++s2)
            off += uint64_t(A_.dim(s2)) * V_[n].dim() * A_.dim(T_ - n - s2);
        uint32_t dv = V_[n].dim();
        return uint32_t(off + (uint64_t(i) * dv + t) * A_.dim(T_ - n - s) + k);
    }

    std::vector<SVec<K>> differential_rows(uint32_t n, uint32_t drop, bool odd_source, uint32_t N) {
        uint32_t tn = n - drop;
        Echelon<K> tar(V_[tn].ambient);
        for (const auto& r : V_[tn].basis) tar.insert(r);

        std::vector<SVec<K>> rows;
        for (uint32_t s = 0; s + n <= T_; ++s) {
            uint32_t as = A_.dim(s), ar = A_.dim(T_ - n - s), dv = V_[n].dim();
            for (uint32_t i = 0; i < as; ++i)
                for (uint32_t t = 0; t < dv; ++t)
                    for (uint32_t k = 0; k < ar; ++k) {
                        SVec<K> row;
                        auto add_term = [&](uint32_t p, const K& sign) {
                            uint32_t q = drop - p;
                            append_moved(row, n, s, i, t, k, p, q, sign, tar);
                        };
                        if (odd_source) {
                            add_term(drop, A_.field.one());       // all letters left
                            add_term(0, -A_.field.one());         // all letters right
                        } else {
                            for (uint32_t p = 0; p <= drop; ++p) add_term(p, A_.field.one());
                        }
                        svec_normalize(row);
                        rows.push_back(std::move(row));
                    }
        }
        return rows;
    }

    // move p prefix letters into the left factor and q suffix letters into
    // the right factor, accumulate sign * image into row
    void append_moved(SVec<K>& row, uint32_t n, uint32_t s, uint32_t i, uint32_t t, uint32_t k,
                      uint32_t p, uint32_t q, const K& sign, Echelon<K>& tar) {
        uint32_t g = A_.g;
        uint64_t wq = word_pow(g, q), wmid = word_pow(g, n - p - q);
        std::map<std::pair<uint64_t, uint64_t>, SVec<K>> parts;
        for (const auto& [enc, c] : V_[n].basis[t]) {
            uint64_t u = enc / (wmid * wq);
            uint64_t v = enc % wq;
            uint64_t mid = (enc / wq) % wmid;
            parts[{u, v}].emplace_back(uint32_t(mid), c);
        }
        for (auto& [uv, vec] : parts) {
            svec_normalize(vec);
            auto coords = tar.coords(vec);
            if (!coords) fail("ChainMismatch", "component does not embed after moving letters");
            if (coords->empty()) continue;
            auto left = A_.product(s, SVec<K>{{i, A_.field.one()}}, p, uv.first);
            // suffix acts on the right factor from the left, rightmost letter first
            SVec<K> right{{k, A_.field.one()}};
            if (q > 0) {
                auto digits = word_decode(uv.second, g, q);
                for (uint32_t j = q; j-- > 0;)
                    right = A_.lmul_apply(T_ - n - s + (q - 1 - j), digits[j], right);
            }
            for (const auto& [ai, ca] : left)
                for (const auto& [ti, ct] : *coords)
                    for (const auto& [ki, ck] : right)
                        row.emplace_back(flat(n - p - q, s + p, ai, ti, ki), sign * ca * ct * ck);
        }
    }
};

template <class F>
ChainSlice<typename F::Elem> bimodule_complex(GradedBasis<F>& A,
                                              const std::vector<Subspace<typename F::Elem>>& V,
                                              uint32_t N, uint32_t T) {
    BimoduleBuilder<F> b(A, V, T);
    return b.build(alternating_positions(N, T), N);
}

// Small strand: S_j = M_{T - n_j} (x) V_{n_j} with M = A as a module over
// itself: prefix letters multiply on the right of the module element,
// suffix letters act on its left, optionally transformed letterwise first
// (this is how a twisted coefficient module enters).
template <class F>
ChainSlice<typename F::Elem> small_complex(GradedBasis<F>& A,
                                           const std::vector<Subspace<typename F::Elem>>& V,
                                           uint32_t N, uint32_t T,
                                           const Mat<typename F::Elem>* left_letter_map = nullptr) {
    using K = typename F::Elem;
    auto positions = alternating_positions(N, T);
    uint32_t g = A.g;

    auto act_left = [&](uint32_t deg, uint32_t letter, const SVec<K>& m) -> SVec<K> {
        if (!left_letter_map) return A.lmul_apply(deg, letter, m);
        SVec<K> out;
        for (uint32_t l = 0; l < g; ++l) {
            const K& c = (*left_letter_map)[l][letter - 1];
            if (is_zero(c)) continue;
            auto part = A.lmul_apply(deg, l + 1, m);
            svec_scale_inplace(part, c);
            out = svec_add_scaled(out, A.field.one(), part);
        }
        return out;
    };

    ChainSlice<K> c;
    for (size_t j = 0; j < positions.size(); ++j) {
        uint32_t n = positions[j];
        if (n > T || n >= V.size()) break;
        uint32_t dv = V[n].dim(), md = A.dim(T - n);
        c.space_dim.push_back(md * dv);
        if (j == 0) {
            c.maps.emplace_back();
            continue;
        }
        uint32_t drop = positions[j] - positions[j - 1];
        uint32_t tn = n - drop;
        Echelon<K> tar(V[tn].ambient);
        for (const auto& r : V[tn].basis) tar.insert(r);
        uint32_t dvt = V[tn].dim(), mdt = A.dim(T - tn);
        bool odd_source = (j % 2 == 1);

        std::vector<SVec<K>> rows(size_t(md) * dv);
        for (uint32_t i = 0; i < md; ++i)
            for (uint32_t t = 0; t < dv; ++t) {
                SVec<K> row;
                auto add_term = [&](uint32_t p, const K& sign) {
                    uint32_t q = drop - p;
                    uint64_t wq = word_pow(g, q), wmid = word_pow(g, n - p - q);
                    std::map<std::pair<uint64_t, uint64_t>, SVec<K>> parts;
                    for (const auto& [enc, cv] : V[n].basis[t]) {
                        uint64_t u = enc / (wmid * wq);
                        uint64_t v = enc % wq;
                        parts[{u, v}].emplace_back(uint32_t((enc / wq) % wmid), cv);
                    }
                    for (auto& [uv, vec] : parts) {
                        svec_normalize(vec);
                        auto coords = tar.coords(vec);
                        if (!coords) fail("ChainMismatch", "component does not embed after moving letters");
                        if (coords->empty()) continue;
                        auto m = A.product(T - n, SVec<K>{{i, A.field.one()}}, p, uv.first);
                        if (q > 0) {
                            auto digits = word_decode(uv.second, g, q);
                            for (uint32_t jj = q; jj-- > 0;)
                                m = act_left(T - n + p + (q - 1 - jj), digits[jj], m);
                        }
                        for (const auto& [mi, cm] : m)
                            for (const auto& [ti, ct] : *coords)
                                row.emplace_back(uint32_t(uint64_t(mi) * dvt + ti), sign * cm * ct);
                    }
                };
                if (odd_source) {
                    add_term(drop, A.field.one());
                    add_term(0, -A.field.one());
                } else {
                    for (uint32_t p = 0; p <= drop; ++p) add_term(p, A.field.one());
                }
                svec_normalize(row);
                rows[size_t(i) * dv + t] = std::move(row);
            }
        c.maps.push_back(std::move(rows));
        (void)mdt;
    }
    return c;
}

} // namespace kf
