#pragma once

// Presentations of graded algebras T(E)/(R) with all relations in one
// degree N, plus the constructions that stay at the level of relation
// subspaces: contraction spaces of a form, ideal components, dual
// presentations under the slotwise pairing.

#include "forms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace kf {

template <class K>
struct Presentation {
    uint32_t g = 0; // generators
    uint32_t N = 0; // degree of the relations
    Subspace<K> R;  // canonical basis of the relation space inside E^{(x)N}

    uint32_t relation_count() const { return R.dim(); }
};

template <class F>
Presentation<typename F::Elem> make_presentation(const F&, uint32_t g, uint32_t N,
                                                 const std::vector<SVec<typename F::Elem>>& rows) {
    using K = typename F::Elem;
    if (g == 0) fail("BadIndex", "need at least one generator");
    if (N < 2) fail("BadIndex", "relations must sit in degree >= 2");
    uint64_t amb = word_pow(g, N);
    if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "relation space too large");
    auto sorted = rows;
    for (auto& r : sorted) svec_normalize(r);
    Presentation<K> p;
    p.g = g;
    p.N = N;
    p.R = Subspace<K>::from_rows(uint32_t(amb), sorted);
    return p;
}

// Span of the prefix contractions w(x_{l_1},...,x_{l_{m-n}}, -, ..., -)
// inside E^{(x)n}. By convention the space is all of E^{(x)n} below the
// cutoff degree and zero above m.
template <class F>
Subspace<typename F::Elem> contraction_space(const F& field, const Form<typename F::Elem>& f,
                                             uint32_t n, uint32_t cutoff) {
    using K = typename F::Elem;
    uint64_t amb = word_pow(f.g, n);
    if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "contraction space too large");
    if (n > f.m) return Subspace<K>(uint32_t(amb));
    if (n < cutoff) return Subspace<K>::full(uint32_t(amb), field.one());
    uint64_t suff = amb;
    std::vector<SVec<K>> rows(size_t(word_pow(f.g, f.m - n)));
    for (const auto& [idx, c] : f.w)
        rows[idx / suff].emplace_back(uint32_t(idx % suff), c);
    for (auto& r : rows) svec_normalize(r);
    return Subspace<K>::from_rows(uint32_t(amb), rows);
}

// A(w, N): one relation per length-(m-N) prefix of w.
template <class F>
Presentation<typename F::Elem> presentation_from_form(const F& field,
                                                      const Form<typename F::Elem>& f,
                                                      uint32_t N) {
    if (N < 2 || N > f.m) fail("BadIndex", "relation degree must lie in [2, m]");
    Presentation<typename F::Elem> p;
    p.g = f.g;
    p.N = N;
    p.R = contraction_space(field, f, N, N);
    return p;
}

// Degree-n component of the two-sided ideal (R), built incrementally:
// I_n = I_{n-1} (x) E + E^{(x)(n-N)} (x) R.
template <class F>
std::vector<Subspace<typename F::Elem>> ideal_components(const F& field,
                                                         const Presentation<typename F::Elem>& P,
                                                         uint32_t max_degree) {
    using K = typename F::Elem;
    std::vector<Subspace<K>> comps;
    comps.reserve(max_degree + 1);
    for (uint32_t n = 0; n <= max_degree; ++n) {
        uint64_t amb = word_pow(P.g, n);
        if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "ideal component too large");
        if (n < P.N) {
            comps.emplace_back(uint32_t(amb));
            continue;
        }
        Echelon<K> ech{uint32_t(amb)};
        if (n > P.N) {
            // rows of I_{n-1} tensored with a letter stay mutually reduced
            for (const auto& row : comps[n - 1].basis)
                for (uint32_t k = 0; k < P.g; ++k) {
                    SVec<K> r;
                    r.reserve(row.size());
                    for (const auto& [c, v] : row) r.emplace_back(c * P.g + k, v);
                    ech.insert(std::move(r));
                }
        }
        auto left = tensor_place(P.R, P.g, P.N, n - P.N, 0);
        for (auto& r : left.basis) ech.insert(std::move(r));
        Subspace<K> s{uint32_t(amb)};
        s.basis = ech.sorted_rows();
        comps.push_back(std::move(s));
    }
    (void)field;
    return comps;
}

// Dual presentation: relations are the orthogonal of R under the slotwise
// pairing <e_{i_1..i_N}, e_{j_1..j_N}> = prod delta_{i_k j_k}.
template <class F>
Presentation<typename F::Elem> dual_presentation(const F& field,
                                                 const Presentation<typename F::Elem>& P) {
    Presentation<typename F::Elem> d;
    d.g = P.g;
    d.N = P.N;
    uint32_t amb = uint32_t(word_pow(P.g, P.N));
    d.R = Subspace<typename F::Elem>(amb);
    d.R.basis = kernel_of_rows(P.R.basis, amb, field.one());
    return d;
}

// Relations spread over several degrees. Only dimension counts and the
// degreewise independence check make sense here; everything Koszul-shaped
// requires a single relation degree and lives on Presentation.
template <class K>
struct MultiPresentation {
    uint32_t g = 0;
    std::vector<std::pair<uint32_t, Subspace<K>>> groups; // ascending degree, one group per degree

    bool homogeneous() const { return groups.size() == 1; }
};

template <class F>
MultiPresentation<typename F::Elem> make_multi_presentation(
    const F&, uint32_t g,
    const std::vector<std::pair<uint32_t, std::vector<SVec<typename F::Elem>>>>& grps) {
    using K = typename F::Elem;
    if (g == 0) fail("BadIndex", "need at least one generator");
    std::map<uint32_t, std::vector<SVec<K>>> merged;
    for (const auto& [N, rows] : grps) {
        if (N < 2) fail("BadIndex", "relations must sit in degree >= 2");
        auto& dst = merged[N];
        dst.insert(dst.end(), rows.begin(), rows.end());
    }
    MultiPresentation<K> p;
    p.g = g;
    for (auto& [N, rows] : merged) {
        uint64_t amb = word_pow(g, N);
        if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "relation space too large");
        for (auto& r : rows) svec_normalize(r);
        auto S = Subspace<K>::from_rows(uint32_t(amb), rows);
        if (S.dim() == 0)
            fail("BadIndex", "relation group in degree " + std::to_string(N) + " is zero");
        p.groups.emplace_back(N, std::move(S));
    }
    return p;
}

template <class F>
MultiPresentation<typename F::Elem> to_multi(const F&, const Presentation<typename F::Elem>& P) {
    MultiPresentation<typename F::Elem> p;
    p.g = P.g;
    p.groups.emplace_back(P.N, P.R);
    return p;
}

// The single-degree view of a homogeneous MultiPresentation.
template <class F>
Presentation<typename F::Elem> to_homogeneous(const F&,
                                              const MultiPresentation<typename F::Elem>& P) {
    if (!P.homogeneous())
        fail("NotHomogeneous", "presentation has relations in several degrees");
    Presentation<typename F::Elem> q;
    q.g = P.g;
    q.N = P.groups.front().first;
    q.R = P.groups.front().second;
    return q;
}

// Two-sided ideal of all groups, degree by degree:
// J_n = J_{n-1} (x) E + E (x) J_{n-1} + R_n.
template <class F>
std::vector<Subspace<typename F::Elem>> multi_ideal_components(
    const F&, const MultiPresentation<typename F::Elem>& P, uint32_t max_degree) {
    using K = typename F::Elem;
    std::map<uint32_t, const Subspace<K>*> at;
    for (const auto& [N, R] : P.groups) at[N] = &R;
    std::vector<Subspace<K>> comps;
    comps.reserve(max_degree + 1);
    for (uint32_t n = 0; n <= max_degree; ++n) {
        uint64_t amb = word_pow(P.g, n);
        if (amb > (uint64_t(1) << 31)) fail("DegreeOverflow", "ideal component too large");
        Echelon<K> ech{uint32_t(amb)};
        if (n > 0) {
            uint64_t shift = amb / P.g;
            for (const auto& row : comps[n - 1].basis)
                for (uint32_t k = 0; k < P.g; ++k) {
                    SVec<K> r, l;
                    r.reserve(row.size());
                    l.reserve(row.size());
                    for (const auto& [c, v] : row) {
                        r.emplace_back(c * P.g + k, v);
                        l.emplace_back(uint32_t(k * shift + c), v);
                    }
                    ech.insert(std::move(r));
                    ech.insert(std::move(l));
                }
        }
        if (auto it = at.find(n); it != at.end())
            for (auto row : it->second->basis) ech.insert(std::move(row));
        Subspace<K> s{uint32_t(amb)};
        s.basis = ech.sorted_rows();
        comps.push_back(std::move(s));
    }
    return comps;
}

template <class F>
std::vector<uint64_t> multi_dims(const F& field, const MultiPresentation<typename F::Elem>& P,
                                 uint32_t max_degree) {
    auto comps = multi_ideal_components(field, P, max_degree);
    std::vector<uint64_t> d;
    d.reserve(comps.size());
    for (uint32_t n = 0; n < comps.size(); ++n) d.push_back(word_pow(P.g, n) - comps[n].dim());
    return d;
}

// Degreewise minimality: no group may meet the ideal generated by the
// lower-degree groups. On failure returns the offending degree together
// with a relation that already lies in the lower ideal.
template <class F>
std::optional<std::pair<uint32_t, SVec<typename F::Elem>>> independence_violation(
    const F& field, const MultiPresentation<typename F::Elem>& P) {
    using K = typename F::Elem;
    if (P.groups.size() < 2) return std::nullopt;
    for (size_t i = 1; i < P.groups.size(); ++i) {
        MultiPresentation<K> lower;
        lower.g = P.g;
        lower.groups.assign(P.groups.begin(), P.groups.begin() + i);
        uint32_t n = P.groups[i].first;
        auto J = multi_ideal_components(field, lower, n);
        auto inter = subspace_intersect(P.groups[i].second, J[n]);
        if (inter.dim() > 0) return std::make_pair(n, inter.basis.front());
    }
    return std::nullopt;
}

// Does M (x) ... (x) M preserve the relation space?
template <class F>
bool preserves_relations(const F& field, const Presentation<typename F::Elem>& P,
                         const Mat<typename F::Elem>& M) {
    if (!mat_inverse(field, M)) return false;
    for (const auto& r : P.R.basis)
        if (!P.R.contains(tensor_apply(field, M, r, P.g, P.N))) return false;
    return true;
}

} // namespace kf
