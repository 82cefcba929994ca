#pragma once

// Degreewise monomial bases for T(E)/(R), R homogeneous of degree N.
//
// Level n is the quotient of A_{n-1} (x) E by the span of
// (NF (x) id)(b (x) r) over basis words b of A_{n-N} and relations r;
// lower ideal contributions die under NF, and non-basis words of degree
// n-N reduce to basis words modulo them, so these rows span the whole
// image of I_n. Columns are ordered by (basis word index, letter), which
// is word order, so pivot words and normal forms agree with a full
// word-space elimination of I_n. Basis words are the non-pivot columns;
// their prefixes and suffixes are again basis words.

#include "presentation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace kf {

template <class F>
struct GradedBasis {
    using K = typename F::Elem;

    F field;
    uint32_t g = 0, N = 0;
    std::vector<SVec<K>> rel; // canonical relation basis over g^N

    GradedBasis(const F& fld, const Presentation<K>& P)
        : field(fld), g(P.g), N(P.N), rel(P.R.basis) {
        if (N < 2) fail("BadIndex", "relations must sit in degree >= 2");
        words_.push_back({0}); // the empty word
    }

    uint32_t max_level() const { return uint32_t(words_.size()) - 1; }

    void extend_to(uint32_t degree) {
        while (max_level() < degree) build_next_level();
    }

    uint32_t dim(uint32_t n) {
        extend_to(n);
        return uint32_t(words_[n].size());
    }

    std::vector<uint32_t> dims(uint32_t max_degree) {
        extend_to(max_degree);
        std::vector<uint32_t> d;
        d.reserve(max_degree + 1);
        for (uint32_t n = 0; n <= max_degree; ++n) d.push_back(uint32_t(words_[n].size()));
        return d;
    }

    const std::vector<uint64_t>& words(uint32_t n) {
        extend_to(n);
        return words_[n];
    }

    std::optional<uint32_t> word_index(uint32_t n, uint64_t enc) {
        extend_to(n);
        const auto& ws = words_[n];
        auto it = std::lower_bound(ws.begin(), ws.end(), enc);
        if (it == ws.end() || *it != enc) return std::nullopt;
        return uint32_t(it - ws.begin());
    }

    // coords at level n -> coords at level n+1 after right multiplication
    // by the letter k in 1..g
    SVec<K> rmul_apply(uint32_t n, const SVec<K>& coords, uint32_t k) {
        extend_to(n + 1);
        if (k < 1 || k > g) fail("BadIndex", "letter out of range");
        SVec<K> out;
        for (const auto& [u, c] : coords)
            out = svec_add_scaled(out, c, rmul_[n][size_t(u) * g + (k - 1)]);
        return out;
    }

    SVec<K> lmul_apply(uint32_t n, uint32_t k, const SVec<K>& coords) {
        ensure_lmul(n);
        if (k < 1 || k > g) fail("BadIndex", "letter out of range");
        SVec<K> out;
        for (const auto& [u, c] : coords)
            out = svec_add_scaled(out, c, lmul_[n][size_t(k - 1) * words_[n].size() + u]);
        return out;
    }

    // normal form of a single word given by its encoding
    SVec<K> nf_word(uint32_t n, uint64_t enc) {
        extend_to(n);
        SVec<K> v{{0, field.one()}};
        if (n == 0) return v;
        auto digits = word_decode(enc, g, n);
        v = SVec<K>{{digits[0] - 1, field.one()}};
        for (uint32_t j = 1; j < n; ++j) v = rmul_apply(j, v, digits[j]);
        return v;
    }

    // normal form of a sparse vector over the full word space g^n
    SVec<K> normal_form(uint32_t n, const SVec<K>& x) {
        SVec<K> out;
        for (const auto& [enc, c] : x) out = svec_add_scaled(out, c, nf_word(n, enc));
        return out;
    }

    // [u] * [word v], v given by encoding at degree q
    SVec<K> product(uint32_t p, const SVec<K>& up, uint32_t q, uint64_t enc_v) {
        SVec<K> v = up;
        auto digits = word_decode(enc_v, g, q);
        for (uint32_t j = 0; j < q; ++j) v = rmul_apply(p + j, v, digits[j]);
        return v;
    }

    // NF((M (x) ... (x) M) e_{word u}) at level n
    SVec<K> apply_letterwise(uint32_t n, const Mat<K>& M, uint32_t u) {
        extend_to(n);
        SVec<K> word{{uint32_t(words_[n][u]), field.one()}};
        return normal_form(n, tensor_apply(field, M, word, g, n));
    }

private:
    std::vector<std::vector<uint64_t>> words_;   // [n][i] = encoding of i-th basis word
    std::vector<std::vector<SVec<K>>> rmul_;     // [n][u*g+k-1] = coords at level n+1
    std::vector<std::vector<SVec<K>>> lmul_;     // [n][(k-1)*a_n+u] = coords at level n+1

    void build_next_level() {
        uint32_t n = max_level() + 1;
        uint32_t an1 = uint32_t(words_[n - 1].size());
        uint64_t width64 = uint64_t(an1) * g;
        if (width64 > (uint64_t(1) << 31)) fail("DegreeOverflow", "level too large");
        uint32_t width = uint32_t(width64);

        Echelon<K> ech(width);
        if (n >= N && !rel.empty()) {
            uint32_t bdim = uint32_t(words_[n - N].size());
            for (uint32_t b = 0; b < bdim; ++b) {
                std::map<uint64_t, SVec<K>> prefix_nf; // relation-term prefixes, shared per b
                for (const auto& r : rel) {
                    SVec<K> row;
                    for (const auto& [enc_r, c] : r) {
                        uint64_t pre = enc_r / g;
                        uint32_t last = uint32_t(enc_r % g);
                        auto it = prefix_nf.find(pre);
                        if (it == prefix_nf.end()) {
                            SVec<K> v{{b, field.one()}};
                            auto digits = word_decode(pre, g, N - 1);
                            for (uint32_t j = 0; j < N - 1; ++j)
                                v = rmul_apply(n - N + j, v, digits[j]);
                            it = prefix_nf.emplace(pre, std::move(v)).first;
                        }
                        for (const auto& [u, val] : it->second)
                            row.emplace_back(u * g + last, val * c);
                    }
                    svec_normalize(row);
                    ech.insert(std::move(row));
                }
            }
        }

        // free columns in column order = basis words in word order
        std::vector<uint32_t> new_index(width, 0);
        std::vector<uint64_t> ws;
        ws.reserve(width - ech.rank());
        for (uint32_t col = 0; col < width; ++col) {
            if (ech.pivot_of_col[col] >= 0) continue;
            new_index[col] = uint32_t(ws.size());
            ws.push_back(words_[n - 1][col / g] * g + (col % g));
        }

        std::vector<SVec<K>> table(width);
        for (uint32_t col = 0; col < width; ++col) {
            int32_t r = ech.pivot_of_col[col];
            if (r < 0) {
                table[col] = SVec<K>{{new_index[col], field.one()}};
                continue;
            }
            const auto& row = ech.rows[size_t(r)];
            SVec<K> img;
            img.reserve(row.size() - 1);
            for (size_t i = 1; i < row.size(); ++i)
                img.emplace_back(new_index[row[i].first], -row[i].second);
            svec_normalize(img); // tails hit free columns in increasing order already; cheap
            table[col] = std::move(img);
        }

        words_.push_back(std::move(ws));
        rmul_.push_back(std::move(table));
    }

    void ensure_lmul(uint32_t n) {
        extend_to(n + 1);
        if (lmul_.size() > n) return;
        if (lmul_.empty()) {
            std::vector<SVec<K>> base(g);
            for (uint32_t k = 0; k < g; ++k) base[k] = SVec<K>{{k, field.one()}};
            lmul_.push_back(std::move(base));
        }
        while (lmul_.size() <= n) {
            uint32_t lev = uint32_t(lmul_.size());
            uint32_t a = uint32_t(words_[lev].size());
            std::vector<SVec<K>> table(size_t(g) * a);
            for (uint32_t u = 0; u < a; ++u) {
                uint64_t wu = words_[lev][u];
                uint64_t pre = wu / g;
                uint32_t last = uint32_t(wu % g) + 1;
                auto up = word_index(lev - 1, pre);
                if (!up) fail("InternalError", "basis word with non-basis prefix");
                for (uint32_t k = 0; k < g; ++k)
                    table[size_t(k) * a + u] =
                        rmul_apply(lev, lmul_[lev - 1][size_t(k) * words_[lev - 1].size() + *up], last);
            }
            lmul_.push_back(std::move(table));
        }
    }
};

} // namespace kf
