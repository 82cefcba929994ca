#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "kform/dense.hpp"
#include "kform/forms.hpp"
#include "kform/presentation.hpp"

namespace kf {

// R = Id + K (.) B on the two-letter space, rows and columns indexed by
// mu*g + nu. The lower pair feeds B, the upper pair comes out of K.
template <class F>
Mat<typename F::Elem> hecke_R(const F& field, const Mat<typename F::Elem>& B,
                              const Mat<typename F::Elem>& K) {
    uint32_t g = mat_rows(B);
    if (g != mat_cols(B) || g != mat_rows(K) || g != mat_cols(K))
        fail("DimensionMismatch", "B and K must be square of equal size");
    auto R = mat_identity(field, g * g);
    for (uint32_t mu = 0; mu < g; ++mu)
        for (uint32_t nu = 0; nu < g; ++nu)
            for (uint32_t la = 0; la < g; ++la)
                for (uint32_t rho = 0; rho < g; ++rho)
                    R[mu * g + nu][la * g + rho] =
                        R[mu * g + nu][la * g + rho] + K[mu][nu] * B[la][rho];
    return R;
}

// Second eigenvalue of R; the first is always 1.
template <class F>
typename F::Elem hecke_eigenvalue(const F& field, const Mat<typename F::Elem>& B,
                                  const Mat<typename F::Elem>& K) {
    return field.one() + mat_trace(mat_mul(K, mat_transpose(B)));
}

// The two matrix identities equivalent to R solving the braid equation:
//   K B K^t B^t + (1 + tr(K B^t)) Id = 0
//   K^t B^t K B + (1 + tr(K B^t)) Id = 0
template <class F>
bool verify_structure_identities(const F& field, const Mat<typename F::Elem>& B,
                                 const Mat<typename F::Elem>& K) {
    auto Bt = mat_transpose(B), Kt = mat_transpose(K);
    auto scaled = mat_scale(mat_identity(field, mat_rows(B)), hecke_eigenvalue(field, B, K));
    auto first = mat_add(mat_mul(mat_mul(K, B), mat_mul(Kt, Bt)), scaled);
    auto second = mat_add(mat_mul(mat_mul(Kt, Bt), mat_mul(K, B)), scaled);
    return mat_is_zero(first) && mat_is_zero(second);
}

// Full check on the three-letter space: (1(x)R)(R(x)1)(1(x)R) against the
// reversed composition.
template <class F>
bool verify_yang_baxter(const F& field, const Mat<typename F::Elem>& R, uint32_t g) {
    using K = typename F::Elem;
    if (mat_rows(R) != g * g || mat_cols(R) != g * g)
        fail("DimensionMismatch", "R must act on the two-letter space");
    uint32_t n = g * g * g;
    auto lift = [&](bool low) {
        auto M = mat_zero(field, n, n);
        for (uint32_t a = 0; a < g; ++a)
            for (uint32_t i = 0; i < g * g; ++i)
                for (uint32_t j = 0; j < g * g; ++j) {
                    if (is_zero(R[i][j])) continue;
                    if (low)
                        M[a * g * g + i][a * g * g + j] = R[i][j]; // acts on letters 2,3
                    else
                        M[i * g + a][j * g + a] = R[i][j]; // acts on letters 1,2
                }
        return M;
    };
    auto R23 = lift(true), R12 = lift(false);
    auto lhs = mat_mul(R23, mat_mul(R12, R23));
    auto rhs = mat_mul(R12, mat_mul(R23, R12));
    return mat_equal(lhs, rhs);
}

// (R - Id)(R - c Id) = 0 with c the second eigenvalue.
template <class F>
bool verify_hecke(const F& field, const Mat<typename F::Elem>& R, const typename F::Elem& c) {
    uint32_t n = mat_rows(R);
    auto a = mat_sub(R, mat_identity(field, n));
    auto b = mat_sub(R, mat_scale(mat_identity(field, n), c));
    return mat_is_zero(mat_mul(a, b));
}

// Image of R^t - Id inside the two-letter space; for R = Id + K (.) B this
// is the line through the relation vector of B whenever K is nonzero.
template <class F>
Subspace<typename F::Elem> relation_space_from_R(const F& field, const Mat<typename F::Elem>& R) {
    using Elem = typename F::Elem;
    uint32_t n = mat_rows(R);
    std::vector<SVec<Elem>> rows(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            Elem v = i == j ? R[i][j] - field.one() : R[i][j];
            if (!is_zero(v)) rows[i].emplace_back(j, v);
        }
    return Subspace<Elem>::from_rows(n, rows);
}

template <class K>
struct HeckeRoots {
    bool exists = false;
    K q1, q2; // q2 = 1/q1; equal on a double root
    K trace;  // tr(B^{-1} B^t), determines the pair
    K discriminant;
    bool double_root = false;
};

// Roots of q^2 + tr(B^{-1}B^t) q + 1 = 0 inside the coefficient field.
template <class F>
HeckeRoots<typename F::Elem> hecke_roots(const F& field, const Mat<typename F::Elem>& B) {
    using K = typename F::Elem;
    auto Binv = mat_inverse(field, B);
    if (!Binv) fail("SingularMatrix", "B must be invertible");
    K t = mat_trace(mat_mul(*Binv, mat_transpose(B)));
    HeckeRoots<K> out{false, field.zero(), field.zero(), t, field.zero(), false};
    if (field.characteristic() == 2) {
        // only q = 1 can work, and 1 + t + 1 = t
        if (is_zero(t)) {
            out = {true, field.one(), field.one(), t, field.zero(), true};
        }
        return out;
    }
    K four = field.from_long(4);
    out.discriminant = t * t - four;
    auto root = field_sqrt(field, out.discriminant);
    if (!root) return out;
    K two = field.from_long(2);
    out.exists = true;
    out.q1 = (field.zero() - t + *root) / two;
    out.q2 = (field.zero() - t - *root) / two;
    out.double_root = is_zero(*root);
    return out;
}

// K = q B^{-1}; q must solve the eigenvalue constraint for the braid
// identities to hold.
template <class F>
Mat<typename F::Elem> standard_hecke(const F& field, const Mat<typename F::Elem>& B,
                                     const typename F::Elem& q) {
    using K = typename F::Elem;
    if (is_zero(q)) fail("BadRoot", "q must be a unit");
    auto Binv = mat_inverse(field, B);
    if (!Binv) fail("SingularMatrix", "B must be invertible");
    K t = mat_trace(mat_mul(*Binv, mat_transpose(B)));
    K residue = q * q + t * q + field.one();
    if (!is_zero(residue)) {
        K disc = t * t - field.from_long(4);
        fail("BadRoot", "q does not solve q^2 + tr(B^-1 B^t) q + 1 = 0; discriminant " +
                            field.str(disc));
    }
    return mat_scale(*Binv, q);
}

template <class K>
struct HeckeReport {
    bool structure_identities = false;
    bool yang_baxter = false;
    bool hecke = false;
    bool relation_match = false; // image of R^t - Id spans the relation of B
    K eigenvalue;
};

template <class F>
HeckeReport<typename F::Elem> hecke_verify(const F& field, const Mat<typename F::Elem>& B,
                                           const Mat<typename F::Elem>& K) {
    using Elem = typename F::Elem;
    uint32_t g = mat_rows(B);
    HeckeReport<Elem> rep{false, false, false, false, hecke_eigenvalue(field, B, K)};
    rep.structure_identities = verify_structure_identities(field, B, K);
    auto R = hecke_R(field, B, K);
    rep.yang_baxter = verify_yang_baxter(field, R, g);
    rep.hecke = verify_hecke(field, R, rep.eigenvalue);
    auto span = relation_space_from_R(field, R);
    auto P = presentation_from_form(field, form_from_matrix(field, B), 2);
    rep.relation_match = span == P.R;
    return rep;
}

} // namespace kf
