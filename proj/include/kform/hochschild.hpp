#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kform/dense.hpp"
#include "kform/graded_basis.hpp"
#include "kform/regularity.hpp"

namespace kf {

// Chains over the algebra acting on itself, with the left action twisted
// letterwise. A chain is graded by its degree profile: the module degree
// first, then the internal degree of every tensor slot. Coefficients sit
// over the product of the graded basis index spaces, module slot most
// significant.
template <class K>
struct HochschildChain {
    std::map<std::vector<uint32_t>, SVec<K>> parts;

    bool zero() const { return parts.empty(); }

    void add(const std::vector<uint32_t>& profile, SVec<K> vec) {
        svec_normalize(vec);
        if (vec.empty()) return;
        auto [it, fresh] = parts.try_emplace(profile, std::move(vec));
        if (fresh) return;
        SVec<K> merged = it->second;
        for (const auto& [i, c] : vec) merged.emplace_back(i, c);
        svec_normalize(merged);
        if (merged.empty()) parts.erase(it);
        else it->second = std::move(merged);
    }
};

template <class F>
std::vector<uint32_t> profile_strides(GradedBasis<F>& A, const std::vector<uint32_t>& profile) {
    std::vector<uint32_t> stride(profile.size());
    uint64_t acc = 1;
    for (size_t i = profile.size(); i-- > 0;) {
        stride[i] = uint32_t(acc);
        acc *= A.dim(profile[i]);
        if (acc > (uint64_t(1) << 31)) fail("DegreeOverflow", "chain space too large");
    }
    return stride;
}

// b(xi (x) a_1 ... a_S) merges adjacent slots left to right with alternating
// signs; the wraparound term acts on the module from the left through the
// inverse letterwise twist, picking up (-1)^deg a when the twist parity is
// odd.
template <class F>
HochschildChain<typename F::Elem> hochschild_boundary(GradedBasis<F>& A,
                                                      const Mat<typename F::Elem>& left_letter,
                                                      bool odd_twist,
                                                      const HochschildChain<typename F::Elem>& x) {
    using K = typename F::Elem;
    const K one = A.field.one();
    HochschildChain<K> out;
    for (const auto& [profile, vec] : x.parts) {
        uint32_t S = uint32_t(profile.size()) - 1;
        if (S == 0) continue;
        auto stride = profile_strides(A, profile);

        for (const auto& [flat, c] : vec) {
            std::vector<uint32_t> u(S + 1);
            uint64_t rest = flat;
            for (uint32_t i = 0; i <= S; ++i) { u[i] = uint32_t(rest / stride[i]); rest %= stride[i]; }

            for (uint32_t i = 0; i <= S; ++i) {
                K sgn = (i % 2 == 0) ? c : -c;
                std::vector<uint32_t> tp; // target profile
                SVec<K> merged;           // coords of the merged slot
                uint32_t merged_slot;     // its position in the target
                if (i < S) {
                    // slots i and i+1 multiply (i = 0 is the right module action)
                    uint64_t wv = A.words(profile[i + 1])[u[i + 1]];
                    merged = A.product(profile[i], SVec<K>{{u[i], one}}, profile[i + 1], wv);
                    merged_slot = i;
                    tp = profile;
                    tp[i] += tp[i + 1];
                    tp.erase(tp.begin() + i + 1);
                } else {
                    // wraparound: twist the last slot, then act on the left
                    if (odd_twist && profile[S] % 2 == 1) sgn = -sgn;
                    auto twisted = A.apply_letterwise(profile[S], left_letter, u[S]);
                    uint64_t wm = A.words(profile[0])[u[0]];
                    merged = A.product(profile[S], twisted, profile[0], wm);
                    merged_slot = 0;
                    tp.push_back(profile[S] + profile[0]);
                    for (uint32_t j = 1; j < S; ++j) tp.push_back(profile[j]);
                }
                auto tstride = profile_strides(A, tp);
                SVec<K> part;
                for (const auto& [mi, mc] : merged) {
                    uint64_t base = uint64_t(mi) * tstride[merged_slot];
                    uint32_t slot = 0;
                    for (uint32_t j = 0; j <= S; ++j) {
                        if (i < S && (j == i || j == i + 1)) { slot = i + 1; continue; }
                        if (i == S && (j == 0 || j == S)) { slot = 1; continue; }
                        base += uint64_t(u[j]) * tstride[slot];
                        ++slot;
                    }
                    part.emplace_back(uint32_t(base), sgn * mc);
                }
                out.add(tp, std::move(part));
            }
        }
    }
    return out;
}

template <class F>
struct TwistedModule {
    Mat<typename F::Elem> left_letter; // inverse transpose of the form twist
    bool odd_twist = false;
};

template <class F>
TwistedModule<F> volume_module(const F& field, const PreregularReport<typename F::Elem>& pre,
                               uint32_t m) {
    auto inv = mat_inverse(field, mat_transpose(pre.twist));
    if (!inv) fail("InternalError", "preregular twist must be invertible");
    return {std::move(*inv), (m - 1) % 2 == 1};
}

struct VolumeCycleReport {
    bool cycle = false;
    bool nontrivial = false;
    bool ok() const { return cycle && nontrivial; }
};

// The candidate class 1 (x) w in the twisted complex: closed, and not hit
// by any boundary. Degree counting confines possible sources to chains of
// one more slot carrying the same letters plus a scalar slot, so the search
// below is complete.
template <class F>
VolumeCycleReport is_volume_cycle(const F& field, const Form<typename F::Elem>& f, uint32_t N) {
    using K = typename F::Elem;
    if (N != 2) fail("NotQuadratic", "volume cycles are only certified for quadratic relations");
    auto bundle = algebra_from_form(field, f, N);
    auto& A = bundle.A;
    auto mod = volume_module(field, bundle.pre, f.m);
    uint32_t m = f.m, g = f.g;

    VolumeCycleReport rep;
    std::vector<uint32_t> profile(m + 1, 1);
    profile[0] = 0;
    HochschildChain<K> chain;
    chain.add(profile, f.w);
    rep.cycle = hochschild_boundary(A, mod.left_letter, mod.odd_twist, chain).zero();

    uint64_t letters = word_pow(g, m);
    Echelon<K> image{uint32_t(letters)};
    for (uint32_t pos = 1; pos <= m + 1 && image.rank() < letters; ++pos) {
        std::vector<uint32_t> src(m + 2, 1);
        src[0] = 0;
        src[pos] = 0;
        for (uint64_t pt = 0; pt < letters; ++pt) {
            HochschildChain<K> e;
            e.add(src, SVec<K>{{uint32_t(pt), field.one()}});
            auto b = hochschild_boundary(A, mod.left_letter, mod.odd_twist, e);
            auto it = b.parts.find(profile);
            if (it != b.parts.end()) image.insert(it->second);
        }
    }
    rep.nontrivial = !image.contains(f.w);
    return rep;
}

} // namespace kf
