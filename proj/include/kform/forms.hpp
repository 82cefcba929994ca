#pragma once

// Multilinear forms w on K^g with m arguments, stored sparsely over the
// word index space g^m. The central primitive is the twisted cyclicity
// solver: find the unique Q with
//
//   w(X_1,...,X_m) = w(Q X_m, X_1, ..., X_{m-1})
//
// by solving g decoupled linear systems that share one coefficient matrix,
// namely the slot-1 contraction of w. Uniqueness of Q is exactly
// nondegeneracy of w in its first argument.

#include "dense.hpp"
#include "subspace.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kf {

template <class K>
struct Form {
    uint32_t g = 0, m = 0;
    SVec<K> w; // sorted, no zeros, columns in [0, g^m)

    uint64_t ambient() const { return word_pow(g, m); }
};

template <class F>
Form<typename F::Elem> make_form(const F&, uint32_t g, uint32_t m,
                                 std::vector<std::pair<std::vector<uint32_t>, typename F::Elem>> entries) {
    using K = typename F::Elem;
    Form<K> f;
    f.g = g;
    f.m = m;
    uint64_t amb = word_pow(g, m);
    if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "form index space too large");
    for (auto& [word, val] : entries) {
        if (word.size() != m) fail("BadIndex", "word length differs from form arity");
        f.w.emplace_back(uint32_t(word_encode(word, g)), val);
    }
    svec_normalize(f.w);
    return f;
}

template <class F>
typename F::Elem form_entry(const F& field, const Form<typename F::Elem>& f,
                            const std::vector<uint32_t>& word) {
    if (word.size() != f.m) fail("BadIndex", "word length differs from form arity");
    return svec_get(f.w, uint32_t(word_encode(word, f.g)), field.zero());
}

// y = (M (x) ... (x) M) x on E^{(x)n}: y_{l_1..l_n} = sum_mu prod_k M[l_k][mu_k] x_mu.
template <class F>
SVec<typename F::Elem> tensor_apply(const F& field, const Mat<typename F::Elem>& M,
                                    SVec<typename F::Elem> x, uint32_t g, uint32_t n) {
    using K = typename F::Elem;
    if (mat_rows(M) != g || mat_cols(M) != g) fail("DimensionMismatch", "slot matrix must be g x g");
    for (uint32_t slot = 0; slot < n; ++slot) {
        uint64_t wgt = word_pow(g, n - 1 - slot);
        SVec<K> next;
        next.reserve(x.size() * g);
        for (const auto& [idx, c] : x) {
            uint32_t mu = uint32_t((idx / wgt) % g);
            uint64_t base = idx - mu * wgt;
            for (uint32_t l = 0; l < g; ++l) {
                const K& a = M[l][mu];
                if (is_zero(a)) continue;
                next.emplace_back(uint32_t(base + l * wgt), c * a);
            }
        }
        svec_normalize(next);
        x = std::move(next);
    }
    (void)field;
    return x;
}

// w . L, i.e. (w . L)(X_1,...,X_m) = w(L X_1, ..., L X_m).
template <class F>
Form<typename F::Elem> compose_gl(const F& field, const Form<typename F::Elem>& f,
                                  const Mat<typename F::Elem>& L) {
    Form<typename F::Elem> out = f;
    out.w = tensor_apply(field, mat_transpose(L), f.w, f.g, f.m);
    return out;
}

// rho_Q(w)(X_1,...,X_m) = w(Q X_m, X_1, ..., X_{m-1});
// componentwise rho(W)_{l_1..l_m} = sum_mu Q[mu][l_m] W_{mu l_1..l_{m-1}}.
template <class F>
Form<typename F::Elem> rotate_twist(const F& field, const Form<typename F::Elem>& f,
                                    const Mat<typename F::Elem>& Q) {
    using K = typename F::Elem;
    if (mat_rows(Q) != f.g || mat_cols(Q) != f.g) fail("DimensionMismatch", "twist must be g x g");
    uint64_t rest = word_pow(f.g, f.m - 1);
    Form<K> out = f;
    out.w.clear();
    out.w.reserve(f.w.size() * f.g);
    for (const auto& [idx, c] : f.w) {
        uint32_t mu = uint32_t(idx / rest);
        uint64_t tail = idx % rest;
        for (uint32_t t = 0; t < f.g; ++t) {
            const K& a = Q[mu][t];
            if (is_zero(a)) continue;
            out.w.emplace_back(uint32_t(tail * f.g + t), c * a);
        }
    }
    svec_normalize(out.w);
    (void)field;
    return out;
}

// Rows of the slot contraction: row mu over words of the remaining m-1
// slots in their original order.
template <class F>
std::vector<SVec<typename F::Elem>> slot_rows(const F&, const Form<typename F::Elem>& f,
                                              uint32_t slot) {
    using K = typename F::Elem;
    if (slot < 1 || slot > f.m) fail("BadIndex", "slot out of range");
    uint64_t wgt = word_pow(f.g, f.m - slot);
    std::vector<SVec<K>> rows(f.g);
    for (const auto& [idx, c] : f.w) {
        uint32_t mu = uint32_t((idx / wgt) % f.g);
        uint64_t hi = idx / (wgt * f.g), lo = idx % wgt;
        rows[mu].emplace_back(uint32_t(hi * wgt + lo), c);
    }
    for (auto& r : rows) svec_normalize(r);
    return rows;
}

template <class K>
struct SlotReport {
    bool nondegenerate = false;
    SVec<K> witness; // nonzero x with w(..., x at slot, ...) = 0, when degenerate
};

template <class F>
SlotReport<typename F::Elem> slot_nondegeneracy(const F& field, const Form<typename F::Elem>& f,
                                                uint32_t slot) {
    SlotReport<typename F::Elem> rep;
    auto rows = slot_rows(field, f, slot);
    auto ker = null_combinations(rows, uint32_t(word_pow(f.g, f.m - 1)), field.one());
    rep.nondegenerate = ker.empty();
    if (!ker.empty()) rep.witness = ker.front();
    return rep;
}

template <class F>
std::vector<bool> one_site_nondegenerate(const F& field, const Form<typename F::Elem>& f) {
    std::vector<bool> ok(f.m);
    for (uint32_t slot = 1; slot <= f.m; ++slot)
        ok[slot - 1] = slot_nondegeneracy(field, f, slot).nondegenerate;
    return ok;
}

template <class K>
struct TwistSolve {
    bool slot1_nondegenerate = false;
    uint32_t rank = 0;        // rank of the shared coefficient matrix (g when nondegenerate)
    bool consistent = false;  // do all g systems admit a solution
    int64_t solution_dim = -1; // affine dimension of the solution set, -1 when empty
    SVec<K> witness;          // slot-1 kernel vector when degenerate
    std::optional<Mat<K>> Q;  // the unique twist, present iff rank = g and consistent
};

template <class F>
TwistSolve<typename F::Elem> solve_twisting(const F& field, const Form<typename F::Elem>& f) {
    using K = typename F::Elem;
    TwistSolve<K> out;
    uint32_t g = f.g;
    uint64_t rest = word_pow(g, f.m - 1);

    // columns of the shared matrix: col_mu[(l_1..l_{m-1})] = W_{mu l_1..l_{m-1}}
    std::vector<SVec<K>> cols(g);
    for (const auto& [idx, c] : f.w)
        cols[uint32_t(idx / rest)].emplace_back(uint32_t(idx % rest), c);
    for (auto& r : cols) svec_normalize(r);

    Echelon<K> ech(uint32_t(rest), true);
    for (const auto& c : cols) ech.insert(c);
    out.rank = uint32_t(ech.rank());
    out.slot1_nondegenerate = (out.rank == g);
    if (!out.slot1_nondegenerate) {
        auto ker = null_combinations(cols, uint32_t(rest), field.one());
        if (!ker.empty()) out.witness = ker.front();
    }

    // right hand sides: c_t[(l_1..l_{m-1})] = W_{l_1..l_{m-1} t}
    std::vector<SVec<K>> rhs(g);
    for (const auto& [idx, c] : f.w)
        rhs[idx % g].emplace_back(uint32_t(idx / g), c);
    for (auto& r : rhs) svec_normalize(r);

    out.consistent = true;
    Mat<K> Q = mat_zero(field, g, g);
    for (uint32_t t = 0; t < g && out.consistent; ++t) {
        Echelon<K> work = ech;
        auto combo = work.insert(rhs[t]);
        if (!combo) {
            out.consistent = false;
            break;
        }
        for (const auto& [i, c] : *combo)
            if (i < g) Q[i][t] = -c;
    }
    if (!out.consistent) return out;
    out.solution_dim = int64_t(g) * (int64_t(g) - int64_t(out.rank));
    if (out.slot1_nondegenerate) out.Q = std::move(Q);
    return out;
}

template <class K>
struct PreregularReport {
    bool slot1_nondegenerate = false;
    bool has_twist = false;
    bool twist_invertible = false;
    bool cyclic = false;    // rho_Q(w) == w for the solved Q
    bool invariant = false; // w . Q = w, implied by cyclicity, verified anyway
    Mat<K> twist;
    SVec<K> witness;
    bool preregular() const {
        return slot1_nondegenerate && has_twist && twist_invertible && cyclic && invariant;
    }
};

template <class F>
PreregularReport<typename F::Elem> preregular_check(const F& field,
                                                    const Form<typename F::Elem>& f) {
    PreregularReport<typename F::Elem> rep;
    auto ts = solve_twisting(field, f);
    rep.slot1_nondegenerate = ts.slot1_nondegenerate;
    rep.witness = std::move(ts.witness);
    if (!ts.Q) return rep;
    rep.has_twist = true;
    rep.twist = std::move(*ts.Q);
    rep.twist_invertible = !is_zero(mat_det(field, rep.twist));
    rep.cyclic = rotate_twist(field, f, rep.twist).w == f.w;
    rep.invariant = compose_gl(field, f, rep.twist).w == f.w;
    return rep;
}

// (1/m) sum_{j<m} rho_Q^j(w): the projector onto Q-twisted cyclic forms.
// Only a projector on the Q-invariant subspace, so f . Q = f is required,
// and m must be invertible in the field.
template <class F>
Form<typename F::Elem> twisted_cyclic_average(const F& field, const Form<typename F::Elem>& f,
                                              const Mat<typename F::Elem>& Q) {
    using K = typename F::Elem;
    if (field.characteristic() != 0 && f.m % field.characteristic() == 0)
        fail("CharacteristicDividesDegree", "cyclic average needs m invertible in the field");
    if (compose_gl(field, f, Q).w != f.w)
        fail("NotInvariant", "cyclic average needs the form fixed by the twist action");
    Form<K> acc = f, rot = f;
    for (uint32_t j = 1; j < f.m; ++j) {
        rot = rotate_twist(field, rot, Q);
        acc.w = svec_add_scaled(acc.w, field.one(), rot.w);
    }
    K inv_m = field.one() / field.from_long(long(f.m));
    svec_scale_inplace(acc.w, inv_m);
    return acc;
}

// First-order twisted cyclicity along a deformation w_t = w0 + t wdot with
// twist Q_t = Q0 + t Qdot: wdot = rho_{Qdot}(w0) + rho_{Q0}(wdot).
template <class F>
bool derivative_identity_holds(const F& field, const Form<typename F::Elem>& w0,
                               const Mat<typename F::Elem>& Q0,
                               const Form<typename F::Elem>& wdot,
                               const Mat<typename F::Elem>& Qdot) {
    auto lhs = rotate_twist(field, w0, Qdot);
    auto rhs = rotate_twist(field, wdot, Q0);
    auto sum = svec_add_scaled(lhs.w, field.one(), rhs.w);
    return sum == wdot.w;
}

// Fully antisymmetric g-linear form, normalized so the identity word gets +1.
template <class F>
Form<typename F::Elem> epsilon_form(const F& field, uint32_t g) {
    using K = typename F::Elem;
    std::vector<uint32_t> perm(g);
    for (uint32_t i = 0; i < g; ++i) perm[i] = i + 1;
    std::vector<std::pair<std::vector<uint32_t>, K>> entries;
    do {
        uint32_t inv = 0;
        for (uint32_t i = 0; i < g; ++i)
            for (uint32_t j = i + 1; j < g; ++j)
                if (perm[i] > perm[j]) ++inv;
        entries.emplace_back(perm, inv % 2 == 0 ? field.one() : -field.one());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return make_form(field, g, g, std::move(entries));
}

template <class F>
Form<typename F::Elem> form_from_matrix(const F& field, const Mat<typename F::Elem>& B) {
    using K = typename F::Elem;
    uint32_t g = mat_rows(B);
    if (g != mat_cols(B)) fail("DimensionMismatch", "bilinear form matrix must be square");
    std::vector<std::pair<std::vector<uint32_t>, K>> entries;
    for (uint32_t i = 0; i < g; ++i)
        for (uint32_t j = 0; j < g; ++j)
            if (!is_zero(B[i][j])) entries.push_back({{i + 1, j + 1}, B[i][j]});
    return make_form(field, g, 2, std::move(entries));
}

template <class F>
Mat<typename F::Elem> matrix_from_form(const F& field, const Form<typename F::Elem>& f) {
    if (f.m != 2) fail("NotBilinear", "matrix extraction needs a bilinear form");
    auto B = mat_zero(field, f.g, f.g);
    for (const auto& [idx, c] : f.w) B[idx / f.g][idx % f.g] = c;
    return B;
}

template <class K>
struct ThreeRegularReport {
    bool regular = false;
    uint32_t solution_dim = 0; // 1 when regular: only the scalar pair (k.1, k.1)
    std::optional<std::pair<Mat<K>, Mat<K>>> counterexample;
};

// Solves w(L0 x0, x1, ..., xN) = w(x0, L1 x1, ..., xN) for matrix pairs
// (L0, L1). The scalar pairs always work; w passes when nothing else does.
template <class F>
ThreeRegularReport<typename F::Elem> is_3_regular(const F& field,
                                                  const Form<typename F::Elem>& f, uint32_t N) {
    using K = typename F::Elem;
    if (f.m != N + 1) fail("ShapeMismatch", "degree-N regularity needs an (N+1)-linear form");
    uint32_t g = f.g;
    uint64_t suffix = word_pow(g, N);      // g^N, the span of (l_1..l_N)
    uint64_t tail = suffix / g;            // g^(N-1), the span of (l_2..l_N)
    uint32_t unknowns = 2 * g * g;         // L0 entries then L1 entries

    std::vector<SVec<K>> eqs;
    eqs.reserve(size_t(suffix) * g);
    for (uint64_t idx = 0; idx < suffix * g; ++idx) {
        uint32_t l0 = uint32_t(idx / suffix);
        uint32_t l1 = uint32_t((idx / tail) % g);
        uint64_t rest = idx % tail;
        SVec<K> row;
        for (uint32_t mu = 0; mu < g; ++mu) {
            K c = svec_get(f.w, uint32_t(mu * suffix + idx % suffix), field.zero());
            if (!is_zero(c)) row.emplace_back(mu * g + l0, c);
            c = svec_get(f.w, uint32_t(l0 * suffix + mu * tail + rest), field.zero());
            if (!is_zero(c)) row.emplace_back(g * g + mu * g + l1, -c);
        }
        svec_normalize(row);
        if (!row.empty()) eqs.push_back(std::move(row));
    }

    auto basis = kernel_of_rows(eqs, unknowns, field.one());
    ThreeRegularReport<K> rep;
    rep.solution_dim = uint32_t(basis.size());
    rep.regular = (basis.size() == 1);
    if (rep.regular) return rep;
    for (const auto& v : basis) {
        auto L0 = mat_zero(field, g, g);
        auto L1 = mat_zero(field, g, g);
        for (const auto& [i, c] : v)
            (i < g * g ? L0[i / g][i % g] : L1[(i - g * g) / g][(i - g * g) % g]) = c;
        auto scalar = mat_scale(mat_identity(field, g), L0[0][0]);
        if (!mat_equal(L0, scalar) || !mat_equal(L1, scalar)) {
            rep.counterexample = {std::move(L0), std::move(L1)};
            break;
        }
    }
    return rep;
}

// Rank of the g^2 x g^(N-1) flattening that groups the first two slots.
template <class F>
bool satisfies_iii_prime(const F& field, const Form<typename F::Elem>& f, uint32_t N) {
    using K = typename F::Elem;
    if (f.m != N + 1) fail("ShapeMismatch", "degree-N regularity needs an (N+1)-linear form");
    uint64_t rest = word_pow(f.g, f.m - 2);
    std::vector<SVec<K>> rows(size_t(f.g) * f.g);
    for (const auto& [idx, c] : f.w) rows[idx / rest].emplace_back(uint32_t(idx % rest), c);
    for (auto& r : rows) svec_normalize(r);
    return rank_of_rows(rows, uint32_t(rest)) == size_t(f.g) * f.g;
}

template <class K>
struct InfinitesimalTwist {
    Mat<K> Qdot;
    bool traceless = false;
};

// First-order twist along a deformation of the antisymmetric g-form: solves
//   wdot_{l_1..l_g} = sum_l Qdot[l][l_g] eps_{l l_1..l_{g-1}}
//                     + (-1)^(g-1) wdot_{l_g l_1..l_{g-1}}
// for Qdot. The solution is unique modulo matrices that annihilate eps under
// the twisted rotation; the reported one zeroes those directions.
template <class F>
std::optional<InfinitesimalTwist<typename F::Elem>> infinitesimal_twist(
    const F& field, const Form<typename F::Elem>& wdot) {
    using K = typename F::Elem;
    uint32_t g = wdot.g;
    if (wdot.m != g) fail("ShapeMismatch", "infinitesimal twists live on g-linear forms");
    auto eps = epsilon_form(field, g);
    auto id = mat_identity(field, g);

    Echelon<K> ech(uint32_t(word_pow(g, g)), true);
    for (uint32_t mu = 0; mu < g; ++mu)
        for (uint32_t t = 0; t < g; ++t) {
            auto unit = mat_zero(field, g, g);
            unit[mu][t] = field.one();
            ech.insert(rotate_twist(field, eps, unit).w);
        }

    K msign = (g % 2 == 1) ? -field.one() : field.one();
    auto target = svec_add_scaled(wdot.w, msign, rotate_twist(field, wdot, id).w);
    auto combo = ech.insert(std::move(target));
    if (!combo) return std::nullopt;

    InfinitesimalTwist<K> out;
    out.Qdot = mat_zero(field, g, g);
    for (const auto& [i, c] : *combo)
        if (i < g * g) out.Qdot[i / g][i % g] = -c;
    out.traceless = is_zero(mat_trace(out.Qdot));
    return out;
}

} // namespace kf
