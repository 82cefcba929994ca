#pragma once

// Job runner behind the command line tool. Resolves an input (catalog
// reference or file), picks the field, runs the requested checks, and
// assembles one report in JSON and text form. The JSON is deterministic
// for a fixed job; timings sit in their own top-level object so report
// comparisons can drop them wholesale.

#include "catalog.hpp"
#include "hecke.hpp"
#include "hochschild.hpp"
#include "io.hpp"
#include "regularity.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace kf {

struct JobSpec {
    std::string input_path;  // file input; exactly one of these two is set
    std::string catalog_ref; // "name" or "name:k=v,k=v"
    std::optional<std::string> field_name;
    std::optional<uint32_t> hyp_N;
    std::optional<uint32_t> hyp_D;
    std::optional<uint32_t> max_degree;
    std::vector<std::string> checks; // empty: everything applicable
    uint64_t budget_mb = 512;
    bool report_only = false;
};

struct RunResult {
    Json report;
    std::string text;
    int exit_code = 0; // 0 pass, 1 failed check, 2 usage or parse, 3 budget
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{
        "3regular", "dim2",  "frobenius",  "gorenstein", "infinitesimal",
        "koszul",   "orbit", "preregular", "validate",   "volume-cycle"};
    return names;
}

inline int exit_code_for(const Error& e) {
    std::string k = e.kind;
    return (k == "BudgetExceeded" || k == "DegreeOverflow") ? 3 : 2;
}

[[noreturn]] inline void usage_fail(const std::string& msg) { fail("UsageError", msg); }

// Coarse floor on what a degree-t pass allocates. The guard exists to
// stop runaway degrees before the echelons start, not to model the
// allocator.
inline void budget_guard(uint32_t g, uint32_t t_max, uint64_t budget_mb) {
    uint64_t bytes = 0;
    for (uint32_t n = 0; n <= t_max; ++n) {
        uint64_t rows = word_pow(g, n);
        uint64_t row_bytes = 24u * (uint64_t(n) + 1);
        if (rows > (uint64_t(1) << 44) / row_bytes) {
            bytes = UINT64_MAX;
            break;
        }
        bytes += rows * row_bytes;
    }
    if (bytes > (budget_mb << 20))
        fail("BudgetExceeded", "degree " + std::to_string(t_max) + " on " + std::to_string(g) +
                                   " generators needs more than " + std::to_string(budget_mb) +
                                   " MiB");
}

// ---------------------------------------------------------------------------
// report building blocks

template <class F>
Json json_matrix(const F& field, const Mat<typename F::Elem>& M) {
    Json rows = Json::array();
    for (const auto& r : M) {
        Json row = Json::array();
        for (const auto& c : r) row.push_back(field.str(c));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
std::string text_matrix(const F& field, const Mat<typename F::Elem>& M) {
    std::string s = "[";
    for (size_t i = 0; i < M.size(); ++i) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < M[i].size(); ++j) {
            if (j) s += ", ";
            s += field.str(M[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

// terms of a vector in E^(x)n as [i_1..i_n, "c"] quadruples
template <class F>
Json json_terms(const F& field, const SVec<typename F::Elem>& v, uint32_t g, uint32_t n) {
    Json terms = Json::array();
    for (const auto& [idx, c] : v) {
        Json t = Json::array();
        for (uint32_t d : word_decode(idx, g, n)) t.push_back(d);
        t.push_back(field.str(c));
        terms.push_back(std::move(t));
    }
    return terms;
}

template <class F>
std::string text_terms(const F& field, const SVec<typename F::Elem>& v, uint32_t g, uint32_t n,
                       size_t limit = 6) {
    std::string s;
    size_t shown = 0;
    for (const auto& [idx, c] : v) {
        if (shown == limit) {
            s += ", ...";
            break;
        }
        if (shown) s += ", ";
        s += "x(";
        auto digits = word_decode(idx, g, n);
        for (size_t i = 0; i < digits.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(digits[i]);
        }
        s += "): " + field.str(c);
        ++shown;
    }
    return s.empty() ? "0" : s;
}

inline std::string text_dims(const std::vector<uint32_t>& d) {
    std::string s = "[";
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(d[i]);
    }
    return s + "]";
}

// deterministic invertible change of generators for the orbit probe
template <class F>
Mat<typename F::Elem> pseudo_random_gl(const F& field, uint32_t g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Mat<typename F::Elem> L = mat_zero(field, g, g);
        for (uint32_t i = 0; i < g; ++i)
            for (uint32_t j = 0; j < g; ++j)
                L[i][j] = field.from_long(long(rng() % 7) - 3);
        if (mat_inverse(field, L)) return L;
    }
    fail("InternalError", "no invertible change of generators after 64 draws");
}

namespace engine_detail {

struct Block {
    std::string name;
    bool pass = false;
    Json detail = Json::object();
    std::vector<std::string> lines;
    double ms = 0;
};

template <class F>
struct Loaded {
    using K = typename F::Elem;
    std::optional<Form<K>> form;
    std::optional<Presentation<K>> hom; // homogeneous presentation when available
    std::optional<MultiPresentation<K>> multi;
    std::optional<CatalogExpected<K>> expected;
    std::optional<uint32_t> N0; // default relation degree
    std::optional<uint32_t> D0; // default duality length
    uint32_t g = 0;
    Json desc = Json::object();
    std::string title;
};

template <class F>
Loaded<F> load_input(const F& field, const JobSpec& job, const Json& filejson) {
    Loaded<F> in;
    if (!job.catalog_ref.empty()) {
        auto [name, params] = catalog_parse_ref(job.catalog_ref);
        auto built = catalog_build(field, name, params);
        in.g = built.presentation.g;
        in.N0 = built.N;
        if (built.expected.D) in.D0 = built.expected.D;
        Json p = Json::object();
        std::string ptxt;
        for (const auto& [k, v] : params) {
            p[k] = v;
            ptxt += (ptxt.empty() ? "" : ", ") + k + "=" + v;
        }
        in.desc["source"] = "catalog";
        in.desc["name"] = name;
        in.desc["params"] = std::move(p);
        in.desc["field"] = field.name();
        in.desc["g"] = in.g;
        if (built.form) in.desc["m"] = built.form->m;
        in.desc["N"] = built.N;
        const auto& E = built.expected;
        Json exp = Json::object();
        if (!E.dims.empty()) exp["dims"] = E.dims;
        if (E.koszul) exp["koszul"] = *E.koszul;
        if (E.gorenstein) exp["gorenstein"] = *E.gorenstein;
        if (E.D) exp["D"] = *E.D;
        if (E.growth) exp["growth"] = *E.growth;
        if (E.plane_label) exp["plane"] = *E.plane_label;
        if (!E.notes.empty()) exp["notes"] = E.notes;
        if (!exp.empty()) in.desc["expected"] = std::move(exp);
        in.title = "catalog " + name + (ptxt.empty() ? "" : " (" + ptxt + ")");
        in.form = std::move(built.form);
        in.hom = std::move(built.presentation);
        in.expected = std::move(built.expected);
    } else {
        auto kind = json_payload_kind(filejson);
        in.desc["source"] = "file";
        in.desc["path"] = job.input_path;
        in.desc["kind"] = kind;
        in.desc["field"] = field.name();
        in.title = "file " + job.input_path + " (" + kind + ")";
        if (kind == "form") {
            in.form = form_from_json(field, filejson);
            in.g = in.form->g;
            in.desc["g"] = in.g;
            in.desc["m"] = in.form->m;
        } else {
            in.multi = presentation_from_json(field, filejson);
            in.g = in.multi->g;
            in.desc["g"] = in.g;
            Json degs = Json::array();
            for (const auto& [N, R] : in.multi->groups) degs.push_back(N);
            in.desc["degrees"] = std::move(degs);
            if (in.multi->homogeneous()) {
                in.hom = to_homogeneous(field, *in.multi);
                in.N0 = in.hom->N;
            }
        }
    }
    return in;
}

inline bool kg_shape_fits(uint32_t N, uint32_t D, uint32_t m) {
    if (N < 2) return false;
    if (N == 2) return m == D;
    if (m < N + 1 || (m - 1) % N != 0) return false;
    return D == 2 * ((m - 1) / N) + 1;
}

} // namespace engine_detail

// ---------------------------------------------------------------------------
// the analyze pipeline over a fixed field

template <class F>
RunResult analyze_with_field(const F& field, const JobSpec& job, const Json& filejson) {
    using K = typename F::Elem;
    using engine_detail::Block;
    using Clock = std::chrono::steady_clock;

    auto in = engine_detail::load_input(field, job, filejson);

    std::optional<uint32_t> N = job.hyp_N ? job.hyp_N : in.N0;
    std::optional<uint32_t> D = job.hyp_D ? job.hyp_D : in.D0;
    uint32_t t_max = job.max_degree ? *job.max_degree : (in.g <= 3 ? 8 : 6);
    budget_guard(in.g, t_max, job.budget_mb);

    // applicability: every check declares what it needs and refuses the
    // rest as a usage error before any work starts
    auto require_form = [&](const char* name) {
        if (!in.form) usage_fail(std::string(name) + " needs a multilinear form input");
    };
    auto require_N = [&](const char* name) -> uint32_t {
        if (!N) usage_fail(std::string(name) + " needs a relation degree (--hypothesis N=<n>)");
        return *N;
    };
    auto require_D = [&](const char* name) -> uint32_t {
        if (!D) usage_fail(std::string(name) + " needs a duality length (--hypothesis D=<d>)");
        return *D;
    };

    std::vector<std::string> selected = job.checks;
    if (selected.empty()) {
        if (in.form) {
            selected.push_back("preregular");
            if (in.form->m == 2) selected.push_back("dim2");
            if (N) {
                if (in.form->m == *N + 1) selected.push_back("3regular");
                selected.push_back("koszul");
                selected.push_back("frobenius");
                if (D) selected.push_back("gorenstein");
                if (*N == 2) selected.push_back("volume-cycle");
            }
        } else {
            selected.push_back("validate");
            if (in.hom) {
                selected.push_back("koszul");
                if (D && in.hom->N == 2) selected.push_back("gorenstein");
            }
        }
    }
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    for (const auto& c : selected) {
        const auto& ok = known_checks();
        if (std::find(ok.begin(), ok.end(), c) == ok.end()) {
            std::string all;
            for (const auto& k : ok) all += (all.empty() ? "" : ", ") + k;
            usage_fail("unknown check '" + c + "' (known: " + all + ")");
        }
    }

    // one body per check; each returns pass + detail + text lines
    auto run_preregular = [&](Block& b) {
        require_form("preregular");
        auto rep = preregular_check(field, *in.form);
        b.pass = rep.preregular();
        b.detail["slot1_nondegenerate"] = rep.slot1_nondegenerate;
        b.detail["has_twist"] = rep.has_twist;
        b.detail["twist_invertible"] = rep.twist_invertible;
        b.detail["twisted_cyclic"] = rep.cyclic;
        b.detail["invariance"] = rep.invariant;
        if (rep.has_twist) b.detail["twist"] = json_matrix(field, rep.twist);
        if (!rep.slot1_nondegenerate)
            b.detail["slot_witness"] = json_terms(field, rep.witness, in.form->g, 1);
        if (b.pass) {
            b.lines.push_back("slot-1 nondegenerate, twisted cyclic for an invertible twist");
            b.lines.push_back("Q = " + text_matrix(field, rep.twist));
        } else if (!rep.slot1_nondegenerate) {
            b.lines.push_back("degenerate in the first slot, kernel witness " +
                              text_terms(field, rep.witness, in.form->g, 1));
        } else if (!rep.has_twist) {
            b.lines.push_back("no twist solves the cyclicity equations");
        } else if (!rep.twist_invertible) {
            b.lines.push_back("the solved twist is singular");
        } else {
            b.lines.push_back("the solved twist does not make w twisted cyclic");
        }
    };

    auto run_3regular = [&](Block& b) {
        require_form("3regular");
        uint32_t n = require_N("3regular");
        if (in.form->m != n + 1)
            usage_fail("3regular needs an (N+1)-linear form (m = " + std::to_string(in.form->m) +
                       ", N = " + std::to_string(n) + ")");
        auto rep = is_3_regular(field, *in.form, n);
        bool iiip = satisfies_iii_prime(field, *in.form, n);
        auto agree = three_regular_equivalence(field, *in.form, n);
        b.pass = rep.regular && agree.agree;
        b.detail["regular"] = rep.regular;
        b.detail["solution_dim"] = rep.solution_dim;
        b.detail["iii_prime"] = iiip;
        b.detail["dual_route_agrees"] = agree.agree;
        if (rep.counterexample) {
            b.detail["counterexample"] =
                Json{{"L0", json_matrix(field, rep.counterexample->first)},
                     {"L1", json_matrix(field, rep.counterexample->second)}};
        }
        if (rep.regular)
            b.lines.push_back("intertwiner solutions are the scalar pairs only");
        else
            b.lines.push_back("non-scalar intertwiner pair exists (solution space dim " +
                              std::to_string(rep.solution_dim) + ")");
        b.lines.push_back(std::string("one-site span condition (iii'): ") +
                          (iiip ? "holds" : "fails"));
        if (!agree.agree) b.lines.push_back("direct and dual-component routes disagree");
    };

    auto run_koszul = [&](Block& b) {
        if (!in.hom && !in.form)
            usage_fail("koszul needs a homogeneous presentation or a multilinear form");
        Presentation<K> P = in.hom ? *in.hom
                                   : presentation_from_form(field, *in.form, require_N("koszul"));
        GradedBasis<F> A(field, P);
        auto V = dual_components(field, P, t_max);
        auto rep = koszulity_check(A, V, P.N, t_max);
        b.pass = rep.koszul;
        auto dims = A.dims(t_max);
        std::vector<uint32_t> ddims;
        ddims.reserve(V.size());
        for (const auto& s : V) ddims.push_back(s.dim());
        bool pskn = series_product_is_one(dims, ddims, P.N, t_max);
        b.detail["t_max"] = t_max;
        b.detail["dims"] = dims;
        b.detail["dual_dims"] = ddims;
        b.detail["series_product_is_one"] = pskn;
        if (rep.failure) {
            b.detail["failure"] = Json{{"strand", rep.failure->t},
                                       {"position", rep.failure->violation.position},
                                       {"homology", rep.failure->violation.homology}};
        }
        b.lines.push_back("dims " + text_dims(dims) + " to degree " + std::to_string(t_max));
        b.lines.push_back("dual dims " + text_dims(ddims));
        if (rep.koszul)
            b.lines.push_back("all strands exact away from the scalar");
        else
            b.lines.push_back("strand t=" + std::to_string(rep.failure->t) +
                              " has homology at position " +
                              std::to_string(rep.failure->violation.position) + " (dimension " +
                              std::to_string(rep.failure->violation.homology) + ")");
        b.lines.push_back(std::string("series product with signed dual series is 1: ") +
                          (pskn ? "yes" : "no"));
        if (!pskn) b.pass = false;
    };

    auto run_gorenstein = [&](Block& b) {
        uint32_t d = require_D("gorenstein");
        uint32_t n = require_N("gorenstein");
        if (in.form && engine_detail::kg_shape_fits(n, d, in.form->m)) {
            uint32_t t_eff = std::max(t_max, in.form->m);
            budget_guard(in.g, t_eff, job.budget_mb);
            auto rep = check_koszul_gorenstein(field, *in.form, n, d, t_eff);
            b.pass = rep.certified();
            b.detail["route"] = "volume-form";
            b.detail["D"] = d;
            b.detail["t_max"] = t_eff;
            b.detail["preregular"] = rep.preregular;
            b.detail["dual_match"] = rep.dual_match;
            if (rep.dual_mismatch_degree) b.detail["dual_mismatch_degree"] = *rep.dual_mismatch_degree;
            b.detail["acyclic"] = rep.acyclic;
            if (rep.failure) {
                b.detail["failure"] = Json{{"strand", rep.failure->t},
                                           {"position", rep.failure->violation.position},
                                           {"homology", rep.failure->violation.homology}};
            }
            b.detail["poincare_dual"] = rep.poincare_dual;
            b.detail["alternating_frobenius"] = rep.alternating_frobenius_ok;
            b.detail["alternating_dims"] = rep.alternating_dims;
            b.detail["dims"] = rep.dims;
            if (!rep.preregular) {
                b.lines.push_back("form is not preregular");
                return;
            }
            b.lines.push_back("dims " + text_dims(rep.dims));
            b.lines.push_back("contraction chain matches the dual components: " +
                              std::string(rep.dual_match ? "yes" : "no"));
            if (rep.acyclic)
                b.lines.push_back("volume subcomplex exact away from the scalar to degree " +
                                  std::to_string(t_eff));
            else
                b.lines.push_back(
                    "not exact at homological position " +
                    std::to_string(rep.failure->violation.position) + " (strand t=" +
                    std::to_string(rep.failure->t) + ", homology dimension " +
                    std::to_string(rep.failure->violation.homology) + ")");
            b.lines.push_back("alternating slot dims " + text_dims(rep.alternating_dims) +
                              std::string(rep.alternating_frobenius_ok
                                              ? ", pairings nondegenerate"
                                              : ", pairing degenerate"));
        } else {
            if (n != 2)
                usage_fail("gorenstein without the m = Np+1 shape is only certified for N = 2");
            if (!in.hom && !in.form)
                usage_fail("gorenstein needs a homogeneous presentation or a multilinear form");
            Presentation<K> P = in.hom ? *in.hom : presentation_from_form(field, *in.form, 2);
            GradedBasis<F> A(field, P);
            auto V = dual_components(field, P, t_max);
            auto krep = koszulity_check(A, V, 2, t_max);
            auto frep = dual_frobenius(field, P, d);
            b.pass = krep.koszul && frep.frobenius();
            b.detail["route"] = "dual-frobenius";
            b.detail["D"] = d;
            b.detail["t_max"] = t_max;
            b.detail["koszul_truncated"] = krep.koszul;
            b.detail["dual_dims"] = frep.dual_dims;
            b.detail["top_is_line"] = frep.top_is_line;
            b.detail["vanishes_above"] = frep.vanishes_above;
            b.detail["dims_symmetric"] = frep.dims_symmetric;
            b.detail["pairings_nondegenerate"] = frep.pairings_nondegenerate;
            if (frep.failure_degree) b.detail["failure_degree"] = *frep.failure_degree;
            b.lines.push_back("dual dims " + text_dims(frep.dual_dims) + " (want a line in degree " +
                              std::to_string(d) + ", zero above)");
            if (!krep.koszul)
                b.lines.push_back("truncated Koszulity fails, certificate void");
            if (frep.frobenius())
                b.lines.push_back("dual algebra is Frobenius: multiplication pairs complementary "
                                  "degrees perfectly");
            else if (!frep.top_is_line)
                b.lines.push_back("top dual component is not a line");
            else if (!frep.vanishes_above)
                b.lines.push_back("dual algebra does not vanish above degree " +
                                  std::to_string(d));
            else if (!frep.dims_symmetric && frep.failure_degree)
                b.lines.push_back("dual dims asymmetric at degree " +
                                  std::to_string(*frep.failure_degree));
            else if (frep.failure_degree)
                b.lines.push_back("dual pairing degenerate at degree " +
                                  std::to_string(*frep.failure_degree));
        }
    };

    auto run_frobenius = [&](Block& b) {
        require_form("frobenius");
        uint32_t n = require_N("frobenius");
        auto rep = frobenius_quotient(field, *in.form, n);
        b.pass = rep.pairings_nondegenerate && rep.twist_identity &&
                 rep.twist_preserves_dual_relations && rep.transpose_twist_preserves_relations;
        std::vector<uint32_t> rad;
        rad.reserve(rep.radical.size());
        for (const auto& r : rep.radical) rad.push_back(uint32_t(r.size()));
        b.detail["dual_dims"] = rep.dual_dims;
        b.detail["radical_dims"] = rad;
        b.detail["quotient_dims"] = rep.quotient_dims;
        b.detail["radical_trivial"] = rep.radical_trivial;
        b.detail["pairings_nondegenerate"] = rep.pairings_nondegenerate;
        b.detail["twist_identity"] = rep.twist_identity;
        b.detail["twist_preserves_dual_relations"] = rep.twist_preserves_dual_relations;
        b.detail["transpose_twist_preserves_relations"] = rep.transpose_twist_preserves_relations;
        b.lines.push_back("quotient dims " + text_dims(rep.quotient_dims) +
                          (rep.radical_trivial ? " (radical already zero)" : ""));
        b.lines.push_back(std::string("pairings nondegenerate: ") +
                          (rep.pairings_nondegenerate ? "yes" : "no") + ", twisted cyclicity: " +
                          (rep.twist_identity ? "holds" : "fails"));
        b.lines.push_back(std::string("twist respects the dual relations: ") +
                          (rep.twist_preserves_dual_relations ? "yes" : "no") +
                          ", transpose respects the relations: " +
                          (rep.transpose_twist_preserves_relations ? "yes" : "no"));
    };

    auto run_dim2 = [&](Block& b) {
        require_form("dim2");
        if (in.form->m != 2) usage_fail("dim2 needs a bilinear form");
        auto rep = dim2_analyze(field, *in.form, t_max);
        b.pass = rep.regular && rep.series_matches;
        b.detail["regular"] = rep.regular;
        b.detail["sym_rank"] = rep.sym_rank;
        if (!rep.label.empty()) b.detail["class"] = rep.label;
        if (rep.has_twist_invariants) {
            b.detail["twist_trace"] = field.str(rep.twist_trace);
            b.detail["twist_det"] = field.str(rep.twist_det);
        }
        if (rep.dual_unbounded) b.detail["dual_unbounded"] = *rep.dual_unbounded;
        b.detail["dims"] = rep.dims;
        b.detail["series_matches"] = rep.series_matches;
        if (rep.regular) {
            b.lines.push_back("nondegenerate bilinear form" +
                              (rep.label.empty() ? std::string()
                                                 : ", isomorphism class: " + rep.label));
            b.lines.push_back("dims " + text_dims(rep.dims) +
                              (rep.series_matches ? " match the two-term recurrence"
                                                  : " break the two-term recurrence"));
        } else {
            b.lines.push_back("degenerate bilinear form (symmetrized rank " +
                              std::to_string(rep.sym_rank) + ")");
            if (rep.dual_unbounded)
                b.lines.push_back(std::string("dual algebra dimensions bounded: ") +
                                  (*rep.dual_unbounded ? "no" : "yes"));
        }
    };

    auto run_orbit = [&](Block& b) {
        require_form("orbit");
        uint32_t n = require_N("orbit");
        auto L = pseudo_random_gl(field, in.g, 0x6b666f726dULL);
        auto rep = orbit_consistency(field, *in.form, n, L, t_max);
        b.pass = rep.consistent();
        b.detail["L"] = json_matrix(field, L);
        b.detail["dims_match"] = rep.dims_match;
        b.detail["twists_compared"] = rep.twists_compared;
        b.detail["twist_covariant"] = rep.twist_covariant;
        b.detail["dims"] = rep.dims;
        b.detail["dims_moved"] = rep.dims_moved;
        b.lines.push_back("change of generators L = " + text_matrix(field, L) + " (fixed draw)");
        b.lines.push_back(std::string("dims invariant: ") + (rep.dims_match ? "yes" : "no") +
                          (rep.twists_compared
                               ? std::string(", twist covariant: ") +
                                     (rep.twist_covariant ? "yes" : "no")
                               : std::string(", twists not compared")));
    };

    auto run_infinitesimal = [&](Block& b) {
        require_form("infinitesimal");
        if (in.form->m != in.form->g)
            usage_fail("infinitesimal needs a g-linear form on g generators");
        auto sol = infinitesimal_twist(field, *in.form);
        b.pass = sol.has_value();
        if (sol) {
            b.detail["Qdot"] = json_matrix(field, sol->Qdot);
            b.detail["traceless"] = sol->traceless;
            b.lines.push_back("first-order twist Qdot = " + text_matrix(field, sol->Qdot));
            b.lines.push_back(std::string("traceless: ") + (sol->traceless ? "yes" : "no"));
        } else {
            b.lines.push_back("no first-order twist solves the deformation equations");
        }
    };

    auto run_volume_cycle = [&](Block& b) {
        require_form("volume-cycle");
        uint32_t n = N.value_or(2);
        if (n != 2) usage_fail("volume-cycle is only asserted for quadratic relations (N = 2)");
        auto rep = is_volume_cycle(field, *in.form, 2);
        b.pass = rep.ok();
        b.detail["cycle"] = rep.cycle;
        b.detail["nontrivial"] = rep.nontrivial;
        b.lines.push_back(std::string("boundary of 1 (x) w vanishes: ") +
                          (rep.cycle ? "yes" : "no"));
        b.lines.push_back(std::string("class nonzero at its own degree: ") +
                          (rep.nontrivial ? "yes" : "no"));
    };

    auto run_validate = [&](Block& b) {
        MultiPresentation<K> mp =
            in.multi ? *in.multi
                     : (in.hom ? to_multi(field, *in.hom)
                               : to_multi(field, presentation_from_form(field, *in.form,
                                                                        require_N("validate"))));
        auto viol = independence_violation(field, mp);
        b.pass = !viol;
        Json degs = Json::array();
        for (const auto& [dn, R] : mp.groups)
            degs.push_back(Json{{"degree", dn}, {"dim", R.dim()}});
        b.detail["groups"] = std::move(degs);
        if (viol) {
            b.detail["violation"] = Json{{"degree", viol->first},
                                         {"relation", json_terms(field, viol->second, mp.g,
                                                                 viol->first)}};
            b.lines.push_back("degree-" + std::to_string(viol->first) +
                              " relation already lies in the lower ideal: " +
                              text_terms(field, viol->second, mp.g, viol->first));
        } else {
            auto dims = multi_dims(field, mp, t_max);
            b.detail["dims"] = dims;
            std::string s = "[";
            for (size_t i = 0; i < dims.size(); ++i)
                s += (i ? ", " : "") + std::to_string(dims[i]);
            b.lines.push_back("relation groups independent degree by degree");
            b.lines.push_back("dims " + s + "]");
        }
    };

    // run them in name order, timing each
    std::vector<Block> blocks;
    for (const auto& name : selected) {
        Block b;
        b.name = name;
        auto t0 = Clock::now();
        try {
            if (name == "preregular") run_preregular(b);
            else if (name == "3regular") run_3regular(b);
            else if (name == "koszul") run_koszul(b);
            else if (name == "gorenstein") run_gorenstein(b);
            else if (name == "frobenius") run_frobenius(b);
            else if (name == "dim2") run_dim2(b);
            else if (name == "orbit") run_orbit(b);
            else if (name == "infinitesimal") run_infinitesimal(b);
            else if (name == "volume-cycle") run_volume_cycle(b);
            else run_validate(b);
        } catch (const Error& e) {
            std::string k = e.kind;
            if (k == "BudgetExceeded" || k == "DegreeOverflow" || k == "UsageError") throw;
            b.pass = false;
            b.detail["error"] = Json{{"kind", k}, {"message", e.what()}};
            b.lines.push_back("error [" + k + "] " + e.what());
        }
        b.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        blocks.push_back(std::move(b));
    }

    bool all_pass = true;
    for (const auto& b : blocks) all_pass = all_pass && b.pass;

    RunResult out;
    out.exit_code = (all_pass || job.report_only) ? 0 : 1;

    Json jchecks = Json::array();
    Json timings = Json::object();
    double total = 0;
    for (const auto& b : blocks) {
        Json jb;
        jb["check"] = b.name;
        jb["pass"] = b.pass;
        for (const auto& [k, v] : b.detail.items()) jb[k] = v;
        jchecks.push_back(std::move(jb));
        timings[b.name] = b.ms;
        total += b.ms;
    }
    timings["total"] = total;

    Json hyp = Json::object();
    hyp["field"] = field.name();
    if (N) hyp["N"] = *N;
    if (D) hyp["D"] = *D;
    hyp["max_degree"] = t_max;

    out.report["schema"] = kSchemaTag;
    out.report["tool"] = "analyze";
    out.report["input"] = in.desc;
    out.report["hypotheses"] = std::move(hyp);
    out.report["checks"] = std::move(jchecks);
    out.report["pass"] = all_pass;
    out.report["timings_ms"] = std::move(timings);

    std::string t;
    t += "kform analyze\n";
    t += "input: " + in.title + " over " + field.name() + "\n";
    t += "  g=" + std::to_string(in.g);
    if (in.form) t += " m=" + std::to_string(in.form->m);
    if (N) t += " N=" + std::to_string(*N);
    if (D) t += " D=" + std::to_string(*D);
    t += " max-degree=" + std::to_string(t_max) + "\n";
    t += "checks:\n";
    for (const auto& b : blocks) {
        t += "  " + b.name + ": " + (b.pass ? "PASS" : "FAIL") + "\n";
        for (const auto& line : b.lines) t += "    " + line + "\n";
    }
    t += std::string("verdict: ") + (all_pass ? "PASS" : "FAIL") + " (" +
         std::to_string(std::count_if(blocks.begin(), blocks.end(),
                                      [](const Block& b) { return b.pass; })) +
         "/" + std::to_string(blocks.size()) + " checks)" +
         (job.report_only && !all_pass ? " [report-only]" : "") + "\n";
    out.text = std::move(t);
    return out;
}

inline RunResult error_result(const Error& e) {
    RunResult out;
    out.exit_code = exit_code_for(e);
    out.report["schema"] = kSchemaTag;
    out.report["error"] = Json{{"kind", e.kind}, {"message", e.what()}};
    out.text = std::string("error [") + e.kind + "] " + e.what() + "\n";
    return out;
}

inline RunResult run_job(const JobSpec& job) {
    try {
        if (job.input_path.empty() == job.catalog_ref.empty())
            usage_fail("exactly one of --input and --catalog is required");
        Json filejson;
        std::string fname;
        if (!job.input_path.empty()) {
            filejson = json_parse(read_text_file(job.input_path));
            fname = job.field_name ? *job.field_name : json_field_tag(filejson);
        } else {
            auto [name, params] = catalog_parse_ref(job.catalog_ref);
            fname = job.field_name ? *job.field_name
                                   : catalog_preferred_field(name, params).value_or("q");
        }
        auto spec = FieldSpec::parse(fname);
        if (spec.kind == FieldSpec::RATIONALS)
            return analyze_with_field(RatField{}, job, filejson);
        return analyze_with_field(FpField{spec.p}, job, filejson);
    } catch (const Error& e) {
        return error_result(e);
    }
}

// ---------------------------------------------------------------------------
// hecke subcommand

struct HeckeJob {
    std::string b_path;
    std::string k_path;                    // triplet file for K, or
    std::optional<std::string> standard_q; // scalar literal for the standard K
    std::optional<std::string> field_name; // default rationals
    bool report_only = false;
};

template <class F>
RunResult hecke_with_field(const F& field, const HeckeJob& job) {
    using Elem = typename F::Elem;
    RunResult out;
    auto B = matrix_from_triplets(field, read_text_file(job.b_path));
    if (B.empty() || B.size() != B[0].size()) usage_fail("--B must be a square matrix");
    uint32_t g = uint32_t(B.size());
    if (g > 8) usage_fail("braid checks are cubic in g^2; keep g <= 8");

    Json input = Json::object();
    input["B"] = json_matrix(field, B);
    input["field"] = field.name();

    std::vector<std::pair<std::string, bool>> verdicts;
    Json detail = Json::object();
    std::string klabel;
    Mat<Elem> Kmat;
    bool have_k = true;
    if (!job.k_path.empty()) {
        Kmat = matrix_from_triplets(field, read_text_file(job.k_path));
        if (Kmat.size() != g || (g && Kmat[0].size() != g))
            usage_fail("--K must match the shape of --B");
        klabel = "file " + job.k_path;
    } else if (job.standard_q) {
        Kmat = standard_hecke(field, B, field.parse(*job.standard_q));
        klabel = "standard K at q = " + *job.standard_q;
    } else {
        auto roots = hecke_roots(field, B);
        detail["trace"] = field.str(roots.trace);
        detail["discriminant"] = field.str(roots.discriminant);
        if (!roots.exists) {
            have_k = false;
            verdicts.emplace_back("standard-root", false);
        } else {
            detail["q"] = field.str(roots.q1);
            detail["q_other"] = field.str(roots.q2);
            Kmat = standard_hecke(field, B, roots.q1);
            klabel = "standard K at the solved root q = " + field.str(roots.q1);
        }
    }

    if (have_k) {
        input["K"] = json_matrix(field, Kmat);
        auto rep = hecke_verify(field, B, Kmat);
        detail["eigenvalue"] = field.str(rep.eigenvalue);
        verdicts.emplace_back("structure-identities", rep.structure_identities);
        verdicts.emplace_back("yang-baxter", rep.yang_baxter);
        verdicts.emplace_back("hecke", rep.hecke);
        verdicts.emplace_back("relation-match", rep.relation_match);
    }

    bool all_pass = true;
    Json jchecks = Json::array();
    for (const auto& [name, pass] : verdicts) {
        all_pass = all_pass && pass;
        jchecks.push_back(Json{{"check", name}, {"pass", pass}});
    }

    out.report["schema"] = kSchemaTag;
    out.report["tool"] = "hecke";
    out.report["input"] = std::move(input);
    out.report["detail"] = std::move(detail);
    out.report["checks"] = std::move(jchecks);
    out.report["pass"] = all_pass;
    out.exit_code = (all_pass || job.report_only) ? 0 : 1;

    std::string t = "kform hecke\n";
    t += "B = " + text_matrix(field, B) + " over " + field.name() + "\n";
    if (have_k)
        t += "K from " + klabel + "\n";
    else
        t += "no in-field root of the quadratic relation (discriminant " +
             out.report["detail"]["discriminant"].template get<std::string>() + ")\n";
    for (const auto& [name, pass] : verdicts)
        t += "  " + name + ": " + (pass ? "PASS" : "FAIL") + "\n";
    t += std::string("verdict: ") + (all_pass ? "PASS" : "FAIL") + "\n";
    out.text = std::move(t);
    return out;
}

inline RunResult run_hecke(const HeckeJob& job) {
    try {
        auto spec = FieldSpec::parse(job.field_name.value_or("q"));
        if (spec.kind == FieldSpec::RATIONALS) return hecke_with_field(RatField{}, job);
        return hecke_with_field(FpField{spec.p}, job);
    } catch (const Error& e) {
        return error_result(e);
    }
}

// ---------------------------------------------------------------------------
// catalog listing

inline Json catalog_list_json() {
    Json arr = Json::array();
    for (const auto& e : catalog_entries())
        arr.push_back(Json{{"name", e.name}, {"params", e.params}, {"constraints", e.constraints}});
    Json out;
    out["schema"] = kSchemaTag;
    out["tool"] = "catalog";
    out["entries"] = std::move(arr);
    return out;
}

inline std::string catalog_list_text() {
    size_t w = 0;
    for (const auto& e : catalog_entries()) w = std::max(w, e.name.size());
    std::string t = "catalog entries:\n";
    for (const auto& e : catalog_entries()) {
        t += "  " + e.name + std::string(w - e.name.size() + 2, ' ');
        t += e.params.empty() ? "(no parameters)" : e.params;
        t += "\n";
        if (!e.constraints.empty()) t += "  " + std::string(w + 2, ' ') + e.constraints + "\n";
    }
    return t;
}

} // namespace kf
