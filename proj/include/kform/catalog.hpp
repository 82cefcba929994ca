#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kform/dense.hpp"
#include "kform/forms.hpp"
#include "kform/presentation.hpp"

// Named algebras with known certificates. Every entry returns the raw
// input object (a multilinear form, or a relation presentation when no
// volume form exists) together with the record of properties the generic
// pipeline is expected to reproduce. Builders validate parameters and
// nothing else; all mathematical verdicts come from the checkers.

namespace kf {

using Params = std::map<std::string, std::string>;

// What the pipeline should find. Absent fields mean "not asserted", not
// "false": e.g. counterexample_d leaves koszul unset because only the
// combined resolution test is known to fail.
template <class K>
struct CatalogExpected {
    std::optional<Mat<K>> twist;       // Q with w = w(Q x_m, x_1, ..)
    std::vector<uint64_t> dims;        // leading dimensions of the algebra
    std::optional<bool> koszul;
    std::optional<bool> gorenstein;
    std::optional<uint32_t> D;         // duality / global dimension length
    std::optional<std::string> growth; // "polynomial" | "exponential"
    std::optional<std::string> plane_label; // dim2_analyze label, g = 2 only
    std::string notes;
};

template <class K>
struct CatalogBuilt {
    std::string name;
    uint32_t N = 2;                // homogeneity degree of the relations
    std::optional<Form<K>> form;   // present for form-defined entries
    Presentation<K> presentation;  // always usable
    CatalogExpected<K> expected;
};

struct CatalogInfo {
    std::string name;
    std::string params;      // "key=default" summary for --catalog refs
    std::string constraints; // parameter domain, in the words of the check
};

inline const std::vector<CatalogInfo>& catalog_entries() {
    static const std::vector<CatalogInfo> table = {
        {"sklyanin3", "p=1,q=2", "(p,q) != (0,0) and (p^3+1,q^3+1) != (0,0)"},
        {"qdef3", "q=2,a=1,b=1,c=1", "abc = 1 and q != 0"},
        {"typeE", "p=19,zeta=4", "zeta a primitive 9th root of 1 in the field"},
        {"counterexample_d", "", "none"},
        {"yang_mills", "g=4", "g >= 2, euclidean metric"},
        {"super_yang_mills", "g=4", "g >= 2, euclidean metric"},
        {"self_duality", "", "none"},
        {"super_self_duality", "", "none"},
        {"epsilon_algebra", "g=3,N=2", "g >= N >= 2"},
        {"qdefD", "D=3,q12=..,q13=..", "each q<mu><nu> (mu < nu) nonzero"},
        {"extended_sklyanin", "c1=5/4,s1=3/4,c2=13/12,s2=5/12,c3=25/24,s3=7/24,trigonometric=0",
         "the six relations must be independent; trigonometric asserts c_k^2 - s_k^2 = 1"},
        {"manin_plane", "q=2", "q^2 - q != 0"},
        {"jordan_plane", "", "none"},
        {"polynomial_plane", "", "none"},
    };
    return table;
}

// "name:k=v,k=v" -> (name, params). The bare "name" form is allowed.
inline std::pair<std::string, Params> catalog_parse_ref(const std::string& ref) {
    auto colon = ref.find(':');
    std::string name = ref.substr(0, colon);
    Params params;
    if (colon == std::string::npos) return {name, params};
    std::string rest = ref.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string piece = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!piece.empty()) {
            auto eq = piece.find('=');
            if (eq == std::string::npos || eq == 0)
                fail("BadParameters", "catalog parameter must be key=value: " + piece);
            params[piece.substr(0, eq)] = piece.substr(eq + 1);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return {name, params};
}

namespace detail {

// Tracks which keys an entry consumed so typos are rejected by name.
class ParamReader {
public:
    ParamReader(std::string entry, const Params& params) : entry_(std::move(entry)), params_(params) {}

    template <class F>
    typename F::Elem scalar(const F& field, const std::string& key, const char* fallback) {
        return field.parse(raw(key, fallback));
    }

    uint32_t integer(const std::string& key, uint32_t fallback) {
        std::string s = raw(key, std::to_string(fallback).c_str());
        try {
            size_t used = 0;
            unsigned long v = std::stoul(s, &used);
            if (used != s.size() || v > (1u << 30)) throw std::invalid_argument(s);
            return uint32_t(v);
        } catch (const std::exception&) {
            fail("BadParameters", entry_ + ": parameter " + key + " must be a small integer, got " + s);
        }
    }

    bool flag(const std::string& key) {
        std::string s = raw(key, "0");
        if (s == "1" || s == "true" || s == "yes") return true;
        if (s == "0" || s == "false" || s == "no") return false;
        fail("BadParameters", entry_ + ": parameter " + key + " must be a boolean flag, got " + s);
    }

    bool has(const std::string& key) const { return params_.count(key) != 0; }

    std::string raw(const std::string& key, const char* fallback) {
        seen_.insert(key);
        auto it = params_.find(key);
        return it == params_.end() ? std::string(fallback) : it->second;
    }

    void finish() const {
        for (const auto& [key, value] : params_)
            if (!seen_.count(key))
                fail("BadParameters", entry_ + ": unknown parameter " + key + "=" + value);
    }

private:
    std::string entry_;
    const Params& params_;
    std::set<std::string> seen_;
};

inline std::vector<uint64_t> binomial_dims(uint32_t g, uint32_t len) {
    std::vector<uint64_t> out(len, 1);
    for (uint32_t n = 1; n < len; ++n) out[n] = out[n - 1] * (n + g - 1) / n;
    return out;
}

// 1 / (1 - g t + g t^N - t^{N+1}), the series of the length-4 resolutions.
inline std::vector<uint64_t> cubic_family_dims(uint32_t g, uint32_t N, uint32_t len) {
    std::vector<uint64_t> a(len, 0);
    for (uint32_t n = 0; n < len; ++n) {
        uint64_t v = n == 0 ? 1 : 0;
        if (n >= 1) v += uint64_t(g) * a[n - 1];
        if (n >= N + 1) v += a[n - N - 1];
        if (n >= N) v -= uint64_t(g) * a[n - N];
        a[n] = v;
    }
    return a;
}

inline std::vector<uint64_t> free_step_dims(uint32_t len) {
    // 1 / ((1-t)(1-3t)): partial sums of powers of 3
    std::vector<uint64_t> a(len);
    uint64_t pow3 = 1, acc = 0;
    for (uint32_t n = 0; n < len; ++n) {
        acc += pow3;
        a[n] = acc;
        pow3 *= 3;
    }
    return a;
}

inline std::vector<uint64_t> plane_dims(uint32_t len) {
    std::vector<uint64_t> a(len);
    std::iota(a.begin(), a.end(), uint64_t(1));
    return a;
}

template <class F>
Mat<typename F::Elem> diag_matrix(const F& field, const std::vector<typename F::Elem>& d) {
    auto Q = mat_zero(field, uint32_t(d.size()), uint32_t(d.size()));
    for (uint32_t i = 0; i < d.size(); ++i) Q[i][i] = d[i];
    return Q;
}

template <class F>
typename F::Elem small_pow(const F& field, typename F::Elem x, uint32_t e) {
    auto acc = field.one();
    for (uint32_t i = 0; i < e; ++i) acc = acc * x;
    return acc;
}

// Splits prod_k (c_k + s_k) into its even and odd parts in total s-degree.
// With s_k standing for i sin(theta_k) this yields cos and i sin of the
// signed angle sum, without ever leaving the base field.
template <class F>
std::pair<typename F::Elem, typename F::Elem>
angle_sum_parts(const F& field, const std::vector<std::pair<typename F::Elem, typename F::Elem>>& factors) {
    using K = typename F::Elem;
    K even = field.one();
    K odd = field.zero();
    for (const auto& [c, s] : factors) {
        K e2 = even * c + odd * s;
        K o2 = even * s + odd * c;
        even = std::move(e2);
        odd = std::move(o2);
    }
    return {even, odd};
}

} // namespace detail

template <class F>
CatalogBuilt<typename F::Elem> catalog_build(const F& field, const std::string& name,
                                             const Params& params) {
    using K = typename F::Elem;
    using Entry = std::pair<std::vector<uint32_t>, K>;
    detail::ParamReader read(name, params);
    CatalogBuilt<K> out;
    out.name = name;
    const K kone = field.one();
    const K kneg = -field.one();

    auto from_form = [&](const Form<K>& f, uint32_t N) {
        out.form = f;
        out.N = N;
        out.presentation = presentation_from_form(field, f, N);
    };

    if (name == "sklyanin3") {
        K p = read.scalar(field, "p", "1"), q = read.scalar(field, "q", "2");
        if (p == field.zero() && q == field.zero())
            fail("BadParameters", "sklyanin3: (p,q) = (0,0) is excluded");
        K p3 = detail::small_pow(field, p, 3) + field.one();
        K q3 = detail::small_pow(field, q, 3) + field.one();
        if (p3 == field.zero() && q3 == field.zero())
            fail("BadParameters", "sklyanin3: (p^3+1,q^3+1) = (0,0) is excluded");
        read.finish();
        K one = field.one();
        std::vector<Entry> entries = {
            {{1, 2, 3}, one},  {{2, 3, 1}, one},  {{3, 1, 2}, one},
            {{1, 3, 2}, -q},   {{2, 1, 3}, -q},   {{3, 2, 1}, -q},
            {{1, 1, 1}, -p},   {{2, 2, 2}, -p},   {{3, 3, 3}, -p},
        };
        from_form(make_form(field, 3, 3, entries), 2);
        out.expected.twist = mat_identity(field, 3);
        out.expected.dims = detail::binomial_dims(3, 8);
        out.expected.koszul = true;
        out.expected.gorenstein = true;
        out.expected.D = 3;
        out.expected.growth = "polynomial";
        return out;
    }

    if (name == "qdef3") {
        K q = read.scalar(field, "q", "2");
        K a = read.scalar(field, "a", "1"), b = read.scalar(field, "b", "1"), c = read.scalar(field, "c", "1");
        if (q == field.zero()) fail("BadParameters", "qdef3: q must be nonzero");
        if (a * b * c != field.one()) fail("BadParameters", "qdef3: abc = 1 is required");
        read.finish();
        std::vector<Entry> entries = {
            {{1, 2, 3}, b},          {{2, 3, 1}, c},          {{3, 1, 2}, a},
            {{1, 3, 2}, -q * a * b}, {{2, 1, 3}, -q * b * c}, {{3, 2, 1}, -q * c * a},
        };
        from_form(make_form(field, 3, 3, entries), 2);
        out.expected.twist = detail::diag_matrix(field, {c / b, a / c, b / a});
        out.expected.dims = detail::binomial_dims(3, 8);
        out.expected.koszul = true;
        out.expected.gorenstein = true;
        out.expected.D = 3;
        out.expected.growth = "polynomial";
        return out;
    }

    if (name == "typeE") {
        // The printed parameter p names the default prime field; the build
        // itself runs in whatever field context the caller supplies, so we
        // only validate zeta there.
        std::string zdefault = "4";
        uint32_t p = read.integer("p", 19);
        if (read.has("p") && !read.has("zeta")) {
            FpField fp{p};
            auto root = nth_root_of_unity(fp, 9);
            if (!root)
                fail("BadParameters", "typeE: no primitive 9th root of 1 modulo " + std::to_string(p));
            zdefault = fp.str(*root);
        }
        K zeta = field.parse(read.raw("zeta", zdefault.c_str()));
        read.finish();
        if (detail::small_pow(field, zeta, 9) != field.one() || detail::small_pow(field, zeta, 3) == field.one())
            fail("BadParameters", "typeE: zeta must be a primitive 9th root of 1");
        std::vector<K> zp(9);
        zp[0] = field.one();
        for (uint32_t i = 1; i < 9; ++i) zp[i] = zp[i - 1] * zeta;
        std::vector<Entry> entries = {
            {{1, 3, 1}, zp[0]}, {{2, 1, 2}, zp[0]}, {{3, 2, 3}, zp[0]},
            {{3, 1, 1}, zp[1]}, {{1, 1, 3}, zp[8]},
            {{1, 2, 2}, zp[4]}, {{2, 2, 1}, zp[5]},
            {{2, 3, 3}, zp[7]}, {{3, 3, 2}, zp[2]},
        };
        from_form(make_form(field, 3, 3, entries), 2);
        out.expected.twist = detail::diag_matrix(field, {zp[1], zp[4], zp[7]});
        out.expected.dims = detail::binomial_dims(3, 8);
        out.expected.koszul = true;
        out.expected.gorenstein = true;
        out.expected.D = 3;
        out.expected.growth = "polynomial";
        return out;
    }

    if (name == "counterexample_d") {
        read.finish();
        K one = field.one();
        std::vector<Entry> entries = {
            {{1, 1, 1}, one}, {{2, 2, 2}, one}, {{1, 2, 3}, one}, {{2, 3, 1}, one}, {{3, 1, 2}, one},
        };
        from_form(make_form(field, 3, 3, entries), 2);
        out.expected.twist = mat_identity(field, 3);
        out.expected.gorenstein = false;
        out.expected.notes = "3-regular, but the candidate resolution is not exact at homological "
                             "position 2: (yz,0,0) is a cycle and not a boundary";
        return out;
    }

    if (name == "yang_mills" || name == "super_yang_mills") {
        bool super = name == "super_yang_mills";
        uint32_t g = read.integer("g", 4);
        if (g < 2) fail("BadParameters", name + ": need g >= 2");
        read.finish();
        std::vector<Entry> entries;
        std::vector<uint32_t> word(4);
        for (uint32_t a1 = 1; a1 <= g; ++a1)
            for (uint32_t a2 = 1; a2 <= g; ++a2)
                for (uint32_t a3 = 1; a3 <= g; ++a3)
                    for (uint32_t a4 = 1; a4 <= g; ++a4) {
                        int coeff;
                        if (super)
                            coeff = (a2 == a3 && a4 == a1 ? 1 : 0) - (a1 == a2 && a3 == a4 ? 1 : 0);
                        else
                            coeff = (a1 == a2 && a3 == a4 ? 1 : 0) + (a2 == a3 && a4 == a1 ? 1 : 0) -
                                    2 * (a1 == a3 && a2 == a4 ? 1 : 0);
                        if (coeff == 0) continue;
                        word = {a1, a2, a3, a4};
                        K v = coeff > 0 ? kone : kneg;
                        if (coeff == 2) v = v + field.one();
                        if (coeff == -2) v = v - field.one();
                        entries.emplace_back(word, v);
                    }
        from_form(make_form(field, g, 4, entries), 3);
        auto Q = mat_identity(field, g);
        if (super) Q = mat_scale(Q, kneg);
        out.expected.twist = Q;
        out.expected.dims = detail::cubic_family_dims(g, 3, 8);
        out.expected.koszul = true;
        out.expected.gorenstein = true;
        out.expected.D = 3;
        out.expected.growth = g == 2 ? "polynomial" : "exponential";
        if (super)
            out.expected.notes = "the euclidean square x_1^2 + .. + x_g^2 is central; each relation "
                                 "is its commutator with one generator";
        return out;
    }

    if (name == "self_duality" || name == "super_self_duality") {
        // Quotients of the (super) Yang-Mills algebra at g = 4. For the
        // super case the fourth generator is rescaled by the quaternionic
        // unit so the relations keep rational coefficients.
        bool super = name == "super_self_duality";
        read.finish();
        K one = field.one();
        std::vector<SVec<K>> rows;
        auto enc2 = [&](uint32_t a, uint32_t b) { return uint32_t(word_encode({a, b}, 4)); };
        for (auto [k, l, m] : {std::array<uint32_t, 3>{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}) {
            SVec<K> r;
            r.emplace_back(enc2(4, k), one);
            r.emplace_back(enc2(k, 4), super ? kone : kneg);
            r.emplace_back(enc2(l, m), -one);
            r.emplace_back(enc2(m, l), one);
            svec_normalize(r);
            rows.push_back(std::move(r));
        }
        out.N = 2;
        out.presentation = make_presentation(field, 4, 2, rows);
        out.expected.dims = detail::free_step_dims(8);
        out.expected.koszul = true;
        out.expected.gorenstein = false;
        out.expected.D = 2;
        out.expected.growth = "exponential";
        if (super)
            out.expected.notes = "fourth generator rescaled to absorb the quaternionic unit";
        return out;
    }

    if (name == "epsilon_algebra") {
        uint32_t g = read.integer("g", 3), N = read.integer("N", 2);
        if (N < 2 || g < N) fail("BadParameters", "epsilon_algebra: need g >= N >= 2");
        read.finish();
        std::vector<Entry> entries;
        std::vector<uint32_t> perm(g);
        std::iota(perm.begin(), perm.end(), 1u);
        do {
            uint32_t inversions = 0;
            for (uint32_t i = 0; i < g; ++i)
                for (uint32_t j = i + 1; j < g; ++j)
                    if (perm[i] > perm[j]) ++inversions;
            entries.emplace_back(perm, inversions % 2 == 0 ? kone : kneg);
        } while (std::next_permutation(perm.begin(), perm.end()));
        from_form(make_form(field, g, g, entries), N);
        const K& sign = g % 2 == 1 ? kone : kneg;
        out.expected.twist = mat_scale(mat_identity(field, g), sign);
        out.expected.koszul = true;
        bool gorenstein = N == 2 || (g > N && (g - 1) % N == 0);
        out.expected.gorenstein = gorenstein;
        if (N == 2) {
            out.expected.D = g;
            out.expected.dims = detail::binomial_dims(g, 8);
            out.expected.growth = "polynomial";
        } else {
            if (gorenstein) out.expected.D = 2 * ((g - 1) / N) + 1;
            if (g == N + 1) out.expected.dims = detail::cubic_family_dims(g, N, 8);
            out.expected.growth = "exponential";
        }
        return out;
    }

    if (name == "qdefD") {
        uint32_t D = read.integer("D", 3);
        if (D < 2 || D > 8) fail("BadParameters", "qdefD: need 2 <= D <= 8");
        // q(mu,nu) for mu < nu comes from the parameters, the transpose
        // entries are forced by q^{mu nu} q^{nu mu} = 1.
        auto q = mat_identity(field, D);
        for (uint32_t mu = 1; mu <= D; ++mu)
            for (uint32_t nu = mu + 1; nu <= D; ++nu) {
                std::string key = "q" + std::to_string(mu) + std::to_string(nu);
                K v = read.scalar(field, key.c_str(), "1");
                if (v == field.zero())
                    fail("BadParameters", "qdefD: " + key + " must be nonzero");
                q[mu - 1][nu - 1] = v;
                q[nu - 1][mu - 1] = field.one() / v;
            }
        read.finish();
        std::vector<Entry> entries;
        std::vector<uint32_t> perm(D);
        std::iota(perm.begin(), perm.end(), 1u);
        do {
            // chi(pi): one factor -q^{mu nu} (values mu < nu) per inversion
            K chi = field.one();
            for (uint32_t i = 0; i < D; ++i)
                for (uint32_t j = i + 1; j < D; ++j)
                    if (perm[i] > perm[j]) chi = chi * (-q[perm[j] - 1][perm[i] - 1]);
            entries.emplace_back(perm, chi);
        } while (std::next_permutation(perm.begin(), perm.end()));
        from_form(make_form(field, D, D, entries), 2);
        std::vector<K> diag(D);
        for (uint32_t mu = 1; mu <= D; ++mu) {
            K prod = field.one();
            for (uint32_t lam = 1; lam <= D; ++lam)
                if (lam != mu) prod = prod * (-q[mu - 1][lam - 1]);
            diag[mu - 1] = prod;
        }
        out.expected.twist = detail::diag_matrix(field, diag);
        out.expected.dims = detail::binomial_dims(D, 8);
        out.expected.koszul = true;
        out.expected.gorenstein = true;
        out.expected.D = D;
        out.expected.growth = "polynomial";
        return out;
    }

    if (name == "extended_sklyanin") {
        // Scalars c_k, s_k stand for cos(phi_k - phi_0) and i sin(phi_k - phi_0);
        // with the i absorbed the circle identity reads c_k^2 - s_k^2 = 1.
        std::vector<K> c(4), s(4);
        c[0] = field.one();
        s[0] = field.zero();
        const char* cdef[] = {"5/4", "13/12", "25/24"};
        const char* sdef[] = {"3/4", "5/12", "7/24"};
        for (uint32_t k = 1; k <= 3; ++k) {
            c[k] = read.scalar(field, "c" + std::to_string(k), cdef[k - 1]);
            s[k] = read.scalar(field, "s" + std::to_string(k), sdef[k - 1]);
        }
        bool trig = read.flag("trigonometric");
        read.finish();
        if (trig)
            for (uint32_t k = 1; k <= 3; ++k)
                if (c[k] * c[k] - s[k] * s[k] != field.one())
                    fail("BadParameters", "extended_sklyanin: trigonometric demands c" +
                                              std::to_string(k) + "^2 - s" + std::to_string(k) + "^2 = 1");

        auto u = [&](uint32_t a) { return std::pair<K, K>{c[a], s[a]}; };
        auto ubar = [&](uint32_t a) { return std::pair<K, K>{c[a], -s[a]}; };
        std::vector<Entry> entries;
        // volume part: -sum eps_{abcd} cos(phi_a - phi_b + phi_c - phi_d)
        uint32_t sigma[4] = {0, 1, 2, 3};
        do {
            uint32_t inversions = 0;
            for (uint32_t i = 0; i < 4; ++i)
                for (uint32_t j = i + 1; j < 4; ++j)
                    if (sigma[i] > sigma[j]) ++inversions;
            auto [cos_part, sin_part] =
                detail::angle_sum_parts(field, {u(sigma[0]), ubar(sigma[1]), u(sigma[2]), ubar(sigma[3])});
            (void)sin_part;
            K coeff = inversions % 2 == 0 ? K(-cos_part) : cos_part;
            if (coeff != field.zero())
                entries.push_back({{sigma[0] + 1, sigma[1] + 1, sigma[2] + 1, sigma[3] + 1}, coeff});
        } while (std::next_permutation(sigma, sigma + 4));
        // oscillating part: sum_{mu,nu} i sin(2(phi_mu - phi_nu)) on words mu nu mu nu
        for (uint32_t mu = 0; mu < 4; ++mu)
            for (uint32_t nu = 0; nu < 4; ++nu) {
                if (mu == nu) continue;
                auto [cos_part, sin_part] = detail::angle_sum_parts(field, {u(mu), u(mu), ubar(nu), ubar(nu)});
                (void)cos_part;
                if (sin_part != field.zero())
                    entries.push_back({{mu + 1, nu + 1, mu + 1, nu + 1}, sin_part});
            }
        from_form(make_form(field, 4, 4, entries), 2);

        // defining relations, used here only for the independence check
        K one = field.one();
        std::vector<SVec<K>> rows;
        auto enc2 = [&](uint32_t a, uint32_t b) { return uint32_t(word_encode({a, b}, 4)); };
        auto push = [&](uint32_t a, uint32_t b, K pa, uint32_t x, uint32_t y, K px, bool anti_ab, bool anti_xy,
                        const std::string& label) {
            SVec<K> r;
            if (pa != field.zero()) {
                r.emplace_back(enc2(a, b), pa);
                r.emplace_back(enc2(b, a), anti_ab ? K(-pa) : pa);
            }
            if (px != field.zero()) {
                r.emplace_back(enc2(x, y), px);
                r.emplace_back(enc2(y, x), anti_xy ? K(-px) : px);
            }
            svec_normalize(r);
            if (r.empty()) fail("BadParameters", "extended_sklyanin: relation " + label + " degenerates");
            rows.push_back(std::move(r));
        };
        for (auto [k, l, m] : {std::array<uint32_t, 3>{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}) {
            std::string kn = std::to_string(k);
            push(1, k + 1, c[k], l + 1, m + 1, -(s[l] * c[m] - c[l] * s[m]), true, false, "C" + kn);
            push(l + 1, m + 1, c[l] * c[m] - s[l] * s[m], 1, k + 1, s[k], true, false, "S" + kn);
        }
        if (Subspace<K>::from_rows(16, rows).dim() != 6)
            fail("BadParameters", "extended_sklyanin: the six relations are not independent");

        out.expected.twist = mat_scale(mat_identity(field, 4), kneg);
        if (trig) {
            out.expected.dims = detail::binomial_dims(4, 8);
            out.expected.koszul = true;
            out.expected.gorenstein = true;
            out.expected.D = 4;
            out.expected.growth = "polynomial";
            out.expected.notes = "1 (x) w is a Hochschild 4-cycle for the twisted bimodule";
        } else {
            out.expected.notes = "scalars do not assert c_k^2 - s_k^2 = 1; only graded cyclicity is expected";
        }
        return out;
    }

    if (name == "manin_plane" || name == "jordan_plane" || name == "polynomial_plane") {
        K q = field.zero();
        if (name == "manin_plane") {
            q = read.scalar(field, "q", "2");
            if (q * q - q == field.zero())
                fail("BadParameters", "manin_plane: q^2 - q = 0 is excluded");
        }
        read.finish();
        K one = field.one();
        Mat<K> B;
        if (name == "manin_plane")
            B = {{field.zero(), -one}, {q, field.zero()}};
        else if (name == "jordan_plane")
            B = {{field.zero(), -one}, {one, one}};
        else
            B = {{field.zero(), -one}, {one, field.zero()}};
        from_form(form_from_matrix(field, B), 2);
        auto Binv = mat_inverse(field, B);
        out.expected.twist = mat_mul(mat_transpose(*Binv), B);
        out.expected.dims = detail::plane_dims(8);
        out.expected.koszul = true;
        out.expected.gorenstein = true;
        out.expected.D = 2;
        out.expected.growth = "polynomial";
        out.expected.plane_label =
            name == "manin_plane" ? "manin" : (name == "jordan_plane" ? "jordanian" : "polynomial");
        return out;
    }

    fail("BadParameters", "unknown catalog entry: " + name);
}

// Entries that only make sense over a specific field when the caller does
// not force one. Used by the front end to pick a default field context.
inline std::optional<std::string> catalog_preferred_field(const std::string& name, const Params& params) {
    if (name != "typeE") return std::nullopt;
    auto it = params.find("p");
    return "fp:" + (it == params.end() ? std::string("19") : it->second);
}

} // namespace kf
