#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kform/complexes.hpp"
#include "kform/dense.hpp"
#include "kform/forms.hpp"
#include "kform/graded_basis.hpp"
#include "kform/presentation.hpp"

namespace kf {

// ---------------------------------------------------------------------------
// shape bookkeeping for duality certificates

struct KgShape {
    uint32_t p = 0; // m = Np + 1 when N >= 3, unused for N = 2
    uint32_t D = 0; // duality length
};

inline KgShape kgd_shape_validate(uint32_t N, uint32_t D, uint32_t m) {
    if (N < 2) fail("ShapeError", "relations must sit in degree at least 2");
    if (N == 2) {
        if (m != D) fail("ShapeError", "quadratic duality needs D equal to the form arity");
        return {0, D};
    }
    if (m < N + 1 || (m - 1) % N != 0)
        fail("ShapeError", "form arity must be Np + 1 with p >= 1");
    uint32_t p = (m - 1) / N;
    if (D != 2 * p + 1) fail("ShapeError", "duality length must be 2p + 1 when m = Np + 1");
    return {p, D};
}

// ---------------------------------------------------------------------------
// the chain of iterated contraction spaces of w

template <class F>
std::vector<Subspace<typename F::Elem>> w_chain(const F& field, const Form<typename F::Elem>& f,
                                                uint32_t N, uint32_t upto) {
    std::vector<Subspace<typename F::Elem>> W;
    W.reserve(upto + 1);
    for (uint32_t n = 0; n <= upto; ++n) W.push_back(contraction_space(field, f, n, N));
    return W;
}

template <class F>
struct FormAlgebra {
    PreregularReport<typename F::Elem> pre;
    Presentation<typename F::Elem> P;
    GradedBasis<F> A;
};

template <class F>
FormAlgebra<F> algebra_from_form(const F& field, const Form<typename F::Elem>& f, uint32_t N) {
    auto pre = preregular_check(field, f);
    if (!pre.preregular()) fail("NotPreregular", "form admits no invertible cyclic twist");
    auto P = presentation_from_form(field, f, N);
    if (f.m == N + 1 && P.R.dim() != f.g)
        fail("InternalError", "principal case must yield exactly g independent relations");
    GradedBasis<F> A(field, P);
    return {std::move(pre), std::move(P), std::move(A)};
}

// ---------------------------------------------------------------------------
// resolution profile: every strand must be exact except for the scalar in
// homological and total degree zero

template <class K>
struct ResolutionViolation {
    uint32_t position = 0;
    int64_t homology = 0;
    uint32_t module_dim = 0; // dim of the algebra tensor factor at the failure
    uint32_t coeff_dim = 0;  // dim of the coefficient space at the failure
    SVec<K> witness;         // a cycle that is not a boundary
};

template <class K>
std::optional<ResolutionViolation<K>> resolution_profile_violation(const ChainSlice<K>& c,
                                                                   uint32_t t, const K& one) {
    auto h = homology_dims(c);
    for (uint32_t j = 0; j < h.size(); ++j) {
        int64_t want = (j == 0 && t == 0) ? 1 : 0;
        if (h[j] == want) continue;
        ResolutionViolation<K> v;
        v.position = j;
        v.homology = h[j];
        if (auto z = homology_witness(c, j, one)) v.witness = std::move(*z);
        return v;
    }
    return std::nullopt;
}

template <class K>
struct StrandFailure {
    uint32_t t = 0;
    ResolutionViolation<K> violation;
};

template <class K>
struct KoszulReport {
    uint32_t t_max = 0;
    bool koszul = false;
    std::optional<StrandFailure<K>> failure;
};

// Koszulity to total degree t_max: the strands with coefficients in the
// dual components must be exact away from the scalar. V must cover degrees
// up to t_max since the dual components need not vanish eventually.
template <class F>
KoszulReport<typename F::Elem> koszulity_check(GradedBasis<F>& A,
                                               const std::vector<Subspace<typename F::Elem>>& V,
                                               uint32_t N, uint32_t t_max) {
    using K = typename F::Elem;
    if (V.size() <= t_max)
        fail("DimensionMismatch", "coefficient chain shorter than the requested degree");
    KoszulReport<K> rep;
    rep.t_max = t_max;
    rep.koszul = true;
    auto positions = alternating_positions(N, t_max);
    for (uint32_t t = 0; t <= t_max; ++t) {
        auto slice = strand_complex(A, V, positions, t);
        if (auto v = resolution_profile_violation(slice, t, A.field.one())) {
            rep.koszul = false;
            rep.failure = StrandFailure<K>{t, std::move(*v)};
            uint32_t n = positions[rep.failure->violation.position];
            rep.failure->violation.module_dim = A.dim(t - n);
            rep.failure->violation.coeff_dim = V[n].dim();
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Frobenius structure of the quotient of the dual algebra by the radical
// of the word-level pairing induced by w

template <class F>
Mat<typename F::Elem> word_pairing_gram(const F& field, const Form<typename F::Elem>& f,
                                        const std::vector<uint64_t>& left,
                                        const std::vector<uint64_t>& right, uint32_t right_deg) {
    using K = typename F::Elem;
    uint64_t shift = word_pow(f.g, right_deg);
    Mat<K> gram = mat_zero(field, uint32_t(left.size()), uint32_t(right.size()));
    for (uint32_t i = 0; i < left.size(); ++i)
        for (uint32_t j = 0; j < right.size(); ++j)
            gram[i][j] = svec_get(f.w, uint32_t(left[i] * shift + right[j]), field.zero());
    return gram;
}

template <class K>
struct FrobeniusReport {
    uint32_t m = 0;
    std::vector<uint32_t> dual_dims;           // dim of the dual algebra, degrees 0..m
    std::vector<uint32_t> quotient_dims;       // dims after dividing by the radical
    std::vector<std::vector<SVec<K>>> radical; // radical basis per degree, 0..m
    bool radical_trivial = false;
    bool pairings_nondegenerate = false; // complementary quotient dims agree
    bool twist_identity = false;         // w(uv) = w(sigma(v) u) on basis words
    bool twist_preserves_dual_relations = false;
    bool transpose_twist_preserves_relations = false;
};

template <class F>
FrobeniusReport<typename F::Elem> frobenius_quotient(const F& field,
                                                     const Form<typename F::Elem>& f, uint32_t N) {
    using K = typename F::Elem;
    auto bundle = algebra_from_form(field, f, N);
    const auto& Q = bundle.pre.twist;
    auto dualP = dual_presentation(field, bundle.P);
    GradedBasis<F> dual(field, dualP);

    uint32_t m = f.m, g = f.g;
    FrobeniusReport<K> rep;
    rep.m = m;
    rep.dual_dims = dual.dims(m);

    // gram[n] pairs degree n on the left with degree m - n on the right
    std::vector<Mat<K>> gram(m + 1);
    for (uint32_t n = 0; n <= m; ++n)
        gram[n] = word_pairing_gram(field, f, dual.words(n), dual.words(m - n), m - n);

    rep.radical.resize(m + 1);
    rep.quotient_dims.resize(m + 1);
    rep.radical_trivial = true;
    for (uint32_t n = 0; n <= m; ++n) {
        std::vector<SVec<K>> rows(rep.dual_dims[m - n]);
        for (uint32_t i = 0; i < rows.size(); ++i) {
            for (uint32_t j = 0; j < rep.dual_dims[n]; ++j)
                if (!is_zero(gram[m - n][i][j])) rows[i].emplace_back(j, gram[m - n][i][j]);
        }
        rep.radical[n] = kernel_of_rows(rows, rep.dual_dims[n], field.one());
        rep.quotient_dims[n] = rep.dual_dims[n] - uint32_t(rep.radical[n].size());
        if (!rep.radical[n].empty()) rep.radical_trivial = false;
    }
    rep.pairings_nondegenerate = true;
    for (uint32_t n = 0; n <= m; ++n)
        if (rep.quotient_dims[n] != rep.quotient_dims[m - n]) rep.pairings_nondegenerate = false;

    // w(u . v) = w(sigma(v) . u) with sigma acting letterwise through the twist
    rep.twist_identity = true;
    for (uint32_t n = 0; n <= m && rep.twist_identity; ++n) {
        const auto& vs = dual.words(n);
        const auto& us = dual.words(m - n);
        uint64_t shift_u = word_pow(g, m - n);
        for (uint32_t j = 0; j < vs.size() && rep.twist_identity; ++j) {
            auto sigma_v = tensor_apply(field, Q, SVec<K>{{uint32_t(vs[j]), field.one()}}, g, n);
            for (uint32_t i = 0; i < us.size(); ++i) {
                K rhs = field.zero();
                for (const auto& [z, c] : sigma_v)
                    rhs = rhs + c * svec_get(f.w, uint32_t(uint64_t(z) * shift_u + us[i]),
                                             field.zero());
                if (!is_zero(gram[m - n][i][j] - rhs)) {
                    rep.twist_identity = false;
                    break;
                }
            }
        }
    }
    rep.twist_preserves_dual_relations = preserves_relations(field, dualP, Q);
    rep.transpose_twist_preserves_relations =
        preserves_relations(field, bundle.P, mat_transpose(Q));
    return rep;
}

// ---------------------------------------------------------------------------
// the alternating-degree subalgebra of the dual and its Frobenius test

template <class K>
struct AlternatingReport {
    std::vector<uint32_t> dims; // dim at homological slots 0..D
    bool frobenius = false;
    std::optional<uint32_t> failure_slot;
};

// Pairs slot n against slot D - n through the word pairing; the products
// of two odd slots fall outside the alternating degrees once N >= 3, so
// this is the whole multiplication table that matters.
template <class F>
AlternatingReport<typename F::Elem> alternating_frobenius(const F& field,
                                                          const Form<typename F::Elem>& f,
                                                          GradedBasis<F>& dual, uint32_t N,
                                                          uint32_t D) {
    using K = typename F::Elem;
    AlternatingReport<K> rep;
    auto nu = alternating_positions(N, f.m);
    if (nu.size() < D + 1) fail("ShapeError", "alternating degrees do not reach the form arity");
    rep.dims.resize(D + 1);
    for (uint32_t n = 0; n <= D; ++n) rep.dims[n] = dual.dim(nu[n]);
    rep.frobenius = true;
    for (uint32_t n = 0; n <= D; ++n) {
        uint32_t k = nu[n], k2 = nu[D - n];
        if (rep.dims[n] != rep.dims[D - n]) {
            rep.frobenius = false;
            rep.failure_slot = n;
            break;
        }
        auto gram = word_pairing_gram(field, f, dual.words(k), dual.words(k2), k2);
        if (mat_rank(gram) != rep.dims[n]) {
            rep.frobenius = false;
            rep.failure_slot = n;
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// the full duality certificate

template <class K>
struct KgReport {
    uint32_t t_max = 0;
    uint32_t D = 0;
    bool preregular = false;
    bool shape_ok = false;
    bool dual_match = false; // contraction spaces equal the dual components
    std::optional<uint32_t> dual_mismatch_degree;
    bool acyclic = false;
    std::optional<StrandFailure<K>> failure;
    bool poincare_dual = false; // mirrored contraction spaces have equal dims
    bool alternating_frobenius_ok = false;
    std::vector<uint32_t> alternating_dims;
    std::vector<uint32_t> dims; // dims of the algebra itself, 0..t_max
    bool certified() const {
        return preregular && shape_ok && dual_match && acyclic && poincare_dual &&
               alternating_frobenius_ok;
    }
};

template <class F>
KgReport<typename F::Elem> check_koszul_gorenstein(const F& field,
                                                   const Form<typename F::Elem>& f, uint32_t N,
                                                   uint32_t D, uint32_t t_max) {
    using K = typename F::Elem;
    KgReport<K> rep;
    rep.t_max = t_max;
    rep.D = D;
    auto shape = kgd_shape_validate(N, D, f.m);
    rep.shape_ok = true;

    auto pre = preregular_check(field, f);
    rep.preregular = pre.preregular();
    if (!rep.preregular) return rep;

    auto P = presentation_from_form(field, f, N);
    GradedBasis<F> A(field, P);
    rep.dims = A.dims(t_max);

    auto W = w_chain(field, f, N, std::max(t_max, f.m));
    auto comps = dual_components(field, P, f.m);
    auto nu = alternating_positions(N, f.m);

    rep.dual_match = true;
    for (uint32_t n : nu) {
        if (W[n] == comps[n]) continue;
        rep.dual_match = false;
        rep.dual_mismatch_degree = n;
        break;
    }

    rep.poincare_dual = true;
    for (uint32_t n = 0; n <= shape.D; ++n)
        if (W[nu[n]].dim() != W[nu[shape.D - n]].dim()) rep.poincare_dual = false;

    rep.acyclic = true;
    auto positions = alternating_positions(N, t_max);
    for (uint32_t t = 0; t <= t_max; ++t) {
        auto slice = strand_complex(A, W, positions, t);
        if (auto v = resolution_profile_violation(slice, t, field.one())) {
            rep.acyclic = false;
            rep.failure = StrandFailure<K>{t, std::move(*v)};
            uint32_t n = positions[rep.failure->violation.position];
            rep.failure->violation.module_dim = A.dim(t - n);
            rep.failure->violation.coeff_dim = W[n].dim();
            break;
        }
    }

    auto dualP = dual_presentation(field, P);
    GradedBasis<F> dual(field, dualP);
    auto alt = alternating_frobenius(field, f, dual, N, shape.D);
    rep.alternating_frobenius_ok = alt.frobenius;
    rep.alternating_dims = std::move(alt.dims);
    return rep;
}

// Gorenstein certificate that needs no volume form: the dual algebra must
// stop just above D, its top component must be a line, and multiplication
// into the top must pair complementary degrees perfectly.
struct DualFrobeniusReport {
    uint32_t D = 0;
    std::vector<uint32_t> dual_dims; // degrees 0..D+1
    bool top_is_line = false;
    bool vanishes_above = false;
    bool dims_symmetric = false;
    bool pairings_nondegenerate = false;
    std::optional<uint32_t> failure_degree;
    bool frobenius() const {
        return top_is_line && vanishes_above && dims_symmetric && pairings_nondegenerate;
    }
};

template <class F>
DualFrobeniusReport dual_frobenius(const F& field, const Presentation<typename F::Elem>& P,
                                   uint32_t D) {
    using K = typename F::Elem;
    if (P.N != 2) fail("NotQuadratic", "the dual-Frobenius certificate needs quadratic relations");
    if (D < 1) fail("ShapeError", "duality length must be at least 1");
    DualFrobeniusReport rep;
    rep.D = D;
    auto dualP = dual_presentation(field, P);
    GradedBasis<F> dual(field, dualP);
    rep.dual_dims = dual.dims(D + 1);
    rep.top_is_line = rep.dual_dims[D] == 1;
    // the dual is generated in degree one, so one zero component kills
    // everything above it
    rep.vanishes_above = rep.dual_dims[D + 1] == 0;
    rep.dims_symmetric = true;
    for (uint32_t n = 0; n <= D; ++n)
        if (rep.dual_dims[n] != rep.dual_dims[D - n]) {
            rep.dims_symmetric = false;
            if (!rep.failure_degree) rep.failure_degree = n;
        }
    rep.pairings_nondegenerate = rep.top_is_line && rep.dims_symmetric;
    if (!rep.pairings_nondegenerate) return rep;
    for (uint32_t n = 0; n <= D; ++n) {
        uint32_t a = rep.dual_dims[n], b = rep.dual_dims[D - n];
        std::vector<SVec<K>> rows(a);
        for (uint32_t i = 0; i < a; ++i) {
            SVec<K> row;
            for (uint32_t j = 0; j < b; ++j) {
                auto prod = dual.product(n, SVec<K>{{i, field.one()}}, D - n,
                                         dual.words(D - n)[j]);
                K c = svec_get(prod, 0u, field.zero());
                if (!is_zero(c)) row.emplace_back(j, c);
            }
            rows[i] = std::move(row);
        }
        if (Subspace<K>::from_rows(b, rows).dim() != a) {
            rep.pairings_nondegenerate = false;
            rep.failure_degree = n;
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// cross checks

struct ThreeRegularAgreement {
    bool direct = false;   // the two-matrix linear system has only scalars
    bool via_dual = false; // the (N+1)-st dual component is the line through w
    bool agree = false;
};

template <class F>
ThreeRegularAgreement three_regular_equivalence(const F& field,
                                                const Form<typename F::Elem>& f, uint32_t N) {
    ThreeRegularAgreement out;
    out.direct = is_3_regular(field, f, N).regular;
    auto P = presentation_from_form(field, f, N);
    auto comps = dual_components(field, P, N + 1);
    out.via_dual = comps[N + 1].dim() == 1 && comps[N + 1].contains(f.w);
    out.agree = out.direct == out.via_dual;
    return out;
}

template <class K>
struct OrbitReport {
    bool dims_match = false;
    bool twists_compared = false;
    bool twist_covariant = false;
    std::vector<uint32_t> dims, dims_moved;
    bool consistent() const { return dims_match && (!twists_compared || twist_covariant); }
};

// A GL move on the form must leave the dims alone and conjugate the twist.
template <class F>
OrbitReport<typename F::Elem> orbit_consistency(const F& field, const Form<typename F::Elem>& f,
                                                uint32_t N, const Mat<typename F::Elem>& L,
                                                uint32_t t_max) {
    using K = typename F::Elem;
    auto Linv = mat_inverse(field, L);
    if (!Linv) fail("SingularMatrix", "orbit moves need an invertible matrix");
    OrbitReport<K> rep;
    auto moved = compose_gl(field, f, L);

    GradedBasis<F> A(field, presentation_from_form(field, f, N));
    GradedBasis<F> B(field, presentation_from_form(field, moved, N));
    rep.dims = A.dims(t_max);
    rep.dims_moved = B.dims(t_max);
    rep.dims_match = rep.dims == rep.dims_moved;

    auto pre = preregular_check(field, f);
    auto pre_moved = preregular_check(field, moved);
    if (pre.has_twist && pre_moved.has_twist) {
        rep.twists_compared = true;
        auto conj = mat_mul(*Linv, mat_mul(pre.twist, L));
        rep.twist_covariant = mat_equal(pre_moved.twist, conj);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// series arithmetic used by the numerical duality test

inline std::vector<int64_t> signed_dual_series(const std::vector<uint32_t>& dual_dims, uint32_t N,
                                               uint32_t upto) {
    std::vector<int64_t> q(upto + 1, 0);
    for (uint32_t k = 0;; ++k) {
        uint64_t even = uint64_t(N) * k, odd = even + 1;
        if (even > upto) break;
        if (even < dual_dims.size()) q[even] += int64_t(dual_dims[even]);
        if (odd <= upto && odd < dual_dims.size()) q[odd] -= int64_t(dual_dims[odd]);
    }
    return q;
}

inline std::vector<int64_t> series_product(const std::vector<int64_t>& a,
                                           const std::vector<int64_t>& b, uint32_t upto) {
    std::vector<int64_t> out(upto + 1, 0);
    for (uint32_t i = 0; i <= upto; ++i) {
        if (i >= a.size()) break;
        for (uint32_t j = 0; i + j <= upto; ++j) {
            if (j >= b.size()) break;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// P_A(t) . Q_A(t) = 1 up to the verified degree, with Q_A read off the
// signed dual dims at the alternating positions.
inline bool series_product_is_one(const std::vector<uint32_t>& dims,
                                  const std::vector<uint32_t>& dual_dims, uint32_t N,
                                  uint32_t upto) {
    std::vector<int64_t> a(dims.begin(), dims.end());
    auto prod = series_product(a, signed_dual_series(dual_dims, N, upto), upto);
    for (uint32_t i = 0; i <= upto; ++i)
        if (prod[i] != (i == 0 ? 1 : 0)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// bilinear case: full classification in two generators

template <class K>
struct Dim2Report {
    bool regular = false;
    uint32_t sym_rank = 0;
    std::string label; // set only when the isomorphism class is determined
    K twist_trace, twist_det;
    bool has_twist_invariants = false;
    std::optional<bool> dual_unbounded; // degenerate two-generator branch
    std::vector<uint32_t> dims;
    bool series_matches = false; // dims against a_n = g a_{n-1} - a_{n-2}
};

inline std::vector<uint64_t> quadratic_pair_series(uint32_t g, uint32_t upto) {
    std::vector<uint64_t> a{1};
    if (upto >= 1) a.push_back(g);
    for (uint32_t n = 2; n <= upto; ++n) a.push_back(g * a[n - 1] - a[n - 2]);
    return a;
}

template <class F>
Dim2Report<typename F::Elem> dim2_analyze(const F& field, const Form<typename F::Elem>& f,
                                          uint32_t t_max = 0) {
    using K = typename F::Elem;
    if (f.m != 2) fail("NotBilinear", "two-sided analysis needs a bilinear form");
    if (f.w.empty()) fail("BadParameters", "zero bilinear form");
    auto B = matrix_from_form(field, f);
    uint32_t g = f.g;

    Dim2Report<K> rep{.twist_trace = field.zero(), .twist_det = field.zero()};
    rep.regular = !is_zero(mat_det(field, B));
    rep.sym_rank = mat_rank(mat_add(B, mat_transpose(B)));

    if (rep.regular) {
        auto pre = preregular_check(field, f);
        if (pre.has_twist) {
            rep.has_twist_invariants = true;
            rep.twist_trace = mat_trace(pre.twist);
            rep.twist_det = mat_det(field, pre.twist);
        }
        if (g == 2) {
            if (rep.sym_rank == 0) rep.label = "polynomial";
            else if (rep.sym_rank == 1) rep.label = "jordanian";
            else rep.label = "manin";
        }
    } else if (g == 2) {
        // one degenerate relation on two generators: always Koszul, the dual
        // stays nonzero forever exactly when the symmetric part has rank one
        rep.label = "degenerate";
        rep.dual_unbounded = (rep.sym_rank == 1);
    }

    if (t_max > 0) {
        GradedBasis<F> A(field, presentation_from_form(field, f, 2));
        rep.dims = A.dims(t_max);
        if (rep.regular) {
            auto want = quadratic_pair_series(g, t_max);
            rep.series_matches =
                std::equal(want.begin(), want.end(), rep.dims.begin(), rep.dims.end(),
                           [](uint64_t x, uint32_t y) { return x == y; });
        }
    }
    return rep;
}

// Known growth classes for small duality lengths; silent otherwise.
inline std::optional<std::string> expected_growth(uint32_t g, uint32_t N, uint32_t D) {
    if (D == 2) return std::string(g == 2 ? "polynomial" : "exponential");
    if (D == 3) {
        bool poly = (g == 3 && N == 2) || (g == 2 && N == 3);
        return std::string(poly ? "polynomial" : "exponential");
    }
    return std::nullopt;
}

} // namespace kf
