#pragma once

// Randomized invariants shared by the property suite and the acceptance
// gate. Every suite runs a fixed number of seeded cases and returns how
// many violated the invariant, so callers can print or assert as needed.

#include <kform/engine.hpp>

#include <random>
#include <vector>

namespace kft {

using kf::FpField;
using kf::Mat;
using kf::SVec;

struct SuiteResult {
    int cases = 0;
    int failures = 0;
    bool ok() const { return cases > 0 && failures == 0; }
};

inline FpField property_field() { return FpField(10007); }

template <class F>
kf::Form<typename F::Elem> random_form(const F& field, std::mt19937_64& rng, uint32_t g,
                                       uint32_t m) {
    using K = typename F::Elem;
    std::vector<std::pair<std::vector<uint32_t>, K>> entries;
    std::vector<uint32_t> word(m, 1);
    for (;;) {
        entries.push_back({word, field.from_long(long(rng() % 9) - 4)});
        uint32_t i = 0;
        while (i < m && ++word[i] > g) word[i++] = 1;
        if (i == m) break;
    }
    return make_form(field, g, m, entries);
}

template <class F>
kf::Form<typename F::Elem> random_slot1_form(const F& field, std::mt19937_64& rng, uint32_t g,
                                             uint32_t m) {
    for (;;) {
        auto f = random_form(field, rng, g, m);
        if (slot_nondegeneracy(field, f, 1).nondegenerate) return f;
    }
}

// dims and the solved twist must be stable under a change of generators
inline SuiteResult suite_orbit_covariance(int cases) {
    auto F = property_field();
    std::mt19937_64 rng(101);
    SuiteResult r;
    for (int it = 0; it < cases; ++it) {
        uint32_t g = 2 + uint32_t(it % 2);
        auto f = random_slot1_form(F, rng, g, 2);
        auto L = kf::pseudo_random_gl(F, g, 0x9000 + uint64_t(it));
        auto rep = kf::orbit_consistency(F, f, 2, L, 4);
        ++r.cases;
        if (!rep.consistent()) ++r.failures;
    }
    return r;
}

// the GL action composes, respects the identity, and preserves dims
inline SuiteResult suite_gl_functoriality(int cases) {
    auto F = property_field();
    using K = FpField::Elem;
    std::mt19937_64 rng(202);
    SuiteResult r;
    for (int it = 0; it < cases; ++it) {
        uint32_t g = 2 + uint32_t(it % 2);
        uint32_t m = 2 + uint32_t((it / 2) % 2);
        auto f = random_form(F, rng, g, m);
        auto L1 = kf::pseudo_random_gl(F, g, 0xa000 + uint64_t(it));
        auto L2 = kf::pseudo_random_gl(F, g, 0xb000 + uint64_t(it));
        ++r.cases;
        auto joint = compose_gl(F, f, mat_mul(L1, L2));
        auto steps = compose_gl(F, compose_gl(F, f, L1), L2);
        if (joint.w != steps.w) { ++r.failures; continue; }
        if (compose_gl(F, f, mat_identity(F, g)).w != f.w) { ++r.failures; continue; }
        if (m == 2) {
            auto P0 = presentation_from_form(F, f, 2);
            auto P1 = presentation_from_form(F, joint, 2);
            kf::GradedBasis<FpField> A0(F, P0), A1(F, P1);
            if (A0.dims(4) != A1.dims(4)) ++r.failures;
        } else {
            // trilinear: the degree-2 contraction spaces must keep their dim
            auto S0 = contraction_space(F, f, 2, 2);
            auto S1 = contraction_space(F, joint, 2, 2);
            if (S0.dim() != S1.dim()) ++r.failures;
        }
    }
    return r;
}

// consecutive strand maps compose to zero (the N-differential identity)
inline SuiteResult suite_composites_vanish(int cases) {
    auto F = property_field();
    std::mt19937_64 rng(303);
    SuiteResult r;
    for (int it = 0; it < cases; ++it) {
        uint32_t N = 2 + uint32_t(it % 2);
        auto f = random_form(F, rng, 2, N == 2 ? 2 : 3);
        auto P = presentation_from_form(F, f, N);
        kf::GradedBasis<FpField> A(F, P);
        auto V = dual_components(F, P, 5);
        ++r.cases;
        bool good = true;
        for (uint32_t t = 2; t <= 5; ++t) {
            auto c = strand_complex(A, V, kf::alternating_positions(N, t), t);
            if (!composites_vanish(c)) good = false;
        }
        if (!good) ++r.failures;
    }
    return r;
}

// the twisted Hochschild boundary squares to zero on arbitrary chains
inline SuiteResult suite_boundary_square_zero(int cases) {
    auto F = property_field();
    using K = FpField::Elem;
    std::mt19937_64 rng(404);
    SuiteResult r;
    const char* names[] = {"manin_plane", "jordan_plane", "polynomial_plane",
                           "extended_sklyanin"};
    for (int it = 0; it < cases; ++it) {
        auto built = kf::catalog_build(F, names[it % 4], {});
        kf::GradedBasis<FpField> A(F, built.presentation);
        auto pre = preregular_check(F, *built.form);
        auto mod = volume_module(F, pre, built.form->m);
        kf::HochschildChain<K> x;
        for (int part = 0; part < 3; ++part) {
            uint32_t S = 1 + uint32_t(rng() % 3);
            std::vector<uint32_t> profile;
            uint32_t total = 1;
            for (uint32_t s = 0; s <= S; ++s) {
                profile.push_back(uint32_t(rng() % 3));
                total *= A.dim(profile.back());
            }
            SVec<K> vec;
            for (int t = 0; t < 4; ++t)
                vec.emplace_back(uint32_t(rng() % total), F.from_long(long(rng() % 9) - 4));
            x.add(profile, vec);
        }
        auto once = hochschild_boundary(A, mod.left_letter, mod.odd_twist, x);
        auto twice = hochschild_boundary(A, mod.left_letter, mod.odd_twist, once);
        ++r.cases;
        if (!twice.zero()) ++r.failures;
    }
    return r;
}

// the quadratic dual is an involution on relation subspaces
inline SuiteResult suite_dual_involution(int cases) {
    auto F = property_field();
    using K = FpField::Elem;
    std::mt19937_64 rng(505);
    SuiteResult r;
    for (int it = 0; it < cases; ++it) {
        uint32_t g = 2 + uint32_t(it % 3);
        uint32_t amb = g * g;
        uint32_t want = 1 + uint32_t(rng() % (amb - 1));
        std::vector<SVec<K>> rows;
        for (uint32_t i = 0; i < want; ++i) {
            SVec<K> v;
            for (uint32_t j = 0; j < amb; ++j) {
                K c = F.from_long(long(rng() % 7) - 3);
                if (!kf::is_zero(c)) v.emplace_back(j, c);
            }
            if (!v.empty()) rows.push_back(std::move(v));
        }
        if (rows.empty()) rows.push_back(SVec<K>{{0, F.one()}});
        auto P = make_presentation(F, g, 2, rows);
        auto Pdd = dual_presentation(F, dual_presentation(F, P));
        ++r.cases;
        bool same = Pdd.R.dim() == P.R.dim();
        for (const auto& row : Pdd.R.basis)
            if (!P.R.contains(row)) same = false;
        if (!same) ++r.failures;
    }
    return r;
}

// commutative relations in any basis: algebra dims are the symmetric
// binomials while the dual components carry the Grassmann binomials
inline SuiteResult suite_grassmann_dims(int cases) {
    auto F = property_field();
    using K = FpField::Elem;
    std::mt19937_64 rng(606);
    auto choose = [](uint64_t n, uint64_t k) {
        if (k > n) return uint64_t(0);
        uint64_t v = 1;
        for (uint64_t i = 1; i <= k; ++i) v = v * (n - k + i) / i;
        return v;
    };
    SuiteResult r;
    for (int it = 0; it < cases; ++it) {
        uint32_t g = 2 + uint32_t(it % 3);
        uint32_t t_max = g == 2 ? 6 : (g == 3 ? 5 : 4);
        std::vector<SVec<K>> rows;
        for (uint32_t i = 0; i < g; ++i)
            for (uint32_t j = i + 1; j < g; ++j) {
                SVec<K> v{{i * g + j, F.one()}, {j * g + i, F.zero() - F.one()}};
                svec_normalize(v);
                rows.push_back(std::move(v));
            }
        auto L = kf::pseudo_random_gl(F, g, 0xc000 + uint64_t(it));
        for (auto& row : rows) row = tensor_apply(F, L, row, g, 2);
        auto P = make_presentation(F, g, 2, rows);
        kf::GradedBasis<FpField> A(F, P);
        auto V = dual_components(F, P, t_max);
        ++r.cases;
        bool good = true;
        for (uint32_t n = 0; n <= t_max; ++n) {
            if (A.dim(n) != choose(n + g - 1, g - 1)) good = false;
            if (V[n].dim() != choose(g, n)) good = false;
        }
        if (!good) ++r.failures;
    }
    return r;
}

} // namespace kft
