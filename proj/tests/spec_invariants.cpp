#include <kform/engine.hpp>

#include <catch_amalgamated.hpp>

#include <fstream>

using namespace kf;

namespace {

// permutation matrix sending generator i to generator perm[i]
template <class F>
Mat<typename F::Elem> perm_matrix(const F& field, const std::vector<uint32_t>& perm) {
    auto M = mat_zero(field, perm.size(), perm.size());
    for (size_t i = 0; i < perm.size(); ++i) M[perm[i]][i] = field.one();
    return M;
}

template <class F>
std::vector<uint32_t> dims_of(const F& field, const Presentation<typename F::Elem>& P,
                              uint32_t upto) {
    GradedBasis<F> A(field, P);
    return A.dims(upto);
}

Json strip_timings(Json report) {
    report.erase("timings_ms");
    return report;
}

} // namespace

TEST_CASE("graded dimensions are invariant under generator relabeling") {
    RatField Q;
    for (const char* ref : {"sklyanin3:p=1/2,q=2", "counterexample_d"}) {
        auto built = catalog_build(Q, catalog_parse_ref(ref).first, catalog_parse_ref(ref).second);
        REQUIRE(built.form);
        auto base = dims_of(Q, built.presentation, 6);
        // cycle x -> y -> z -> x
        auto L = perm_matrix(Q, {1, 2, 0});
        auto moved = compose_gl(Q, *built.form, L);
        auto Pm = presentation_from_form(Q, moved, built.N);
        CHECK(dims_of(Q, Pm, 6) == base);
    }
}

TEST_CASE("relation row order does not affect the algebra") {
    RatField Q;
    auto built = catalog_build(Q, "sklyanin3", Params{});
    auto rows = built.presentation.R.basis;
    std::vector<SVec<Rat>> shuffled(rows.rbegin(), rows.rend());
    std::swap(shuffled.front(), shuffled[shuffled.size() / 2]);
    auto P2 = make_presentation(Q, built.presentation.g, built.presentation.N, shuffled);
    CHECK(dims_of(Q, P2, 6) == dims_of(Q, built.presentation, 6));
    CHECK(P2.R.dim() == built.presentation.R.dim());
}

TEST_CASE("Koszulity verdicts are stable across coefficient fields") {
    RatField Q;
    FpField F(1000003);
    {
        auto bq = catalog_build(Q, "sklyanin3", Params{});
        auto bp = catalog_build(F, "sklyanin3", Params{});
        GradedBasis<RatField> Aq(Q, bq.presentation);
        GradedBasis<FpField> Ap(F, bp.presentation);
        auto Vq = dual_components(Q, bq.presentation, 6);
        auto Vp = dual_components(F, bp.presentation, 6);
        CHECK(koszulity_check(Aq, Vq, 2, 6).koszul);
        CHECK(koszulity_check(Ap, Vp, 2, 6).koszul);
    }
    {
        auto bq = catalog_build(Q, "counterexample_d", Params{});
        auto bp = catalog_build(F, "counterexample_d", Params{});
        GradedBasis<RatField> Aq(Q, bq.presentation);
        GradedBasis<FpField> Ap(F, bp.presentation);
        auto rq = koszulity_check(Aq, dual_components(Q, bq.presentation, 5), 2, 5);
        auto rp = koszulity_check(Ap, dual_components(F, bp.presentation, 5), 2, 5);
        REQUIRE_FALSE(rq.koszul);
        REQUIRE_FALSE(rp.koszul);
        REQUIRE(rq.failure);
        REQUIRE(rp.failure);
        CHECK(rq.failure->t == rp.failure->t);
        CHECK(rq.failure->violation.position == rp.failure->violation.position);
        CHECK(rq.failure->violation.homology == rp.failure->violation.homology);
    }
}

TEST_CASE("numerical series identities hold exactly where certified") {
    RatField Q;
    {
        auto built = catalog_build(Q, "sklyanin3", Params{});
        auto dims32 = dims_of(Q, built.presentation, 8);
        auto dual = dual_components(Q, built.presentation, 8);
        std::vector<uint32_t> dual_dims;
        for (const auto& v : dual) dual_dims.push_back(v.dim());
        CHECK(series_product_is_one(dims32, dual_dims, 2, 8));
    }
    {
        // the counterexample's dimensions do not pair with its finite dual
        auto built = catalog_build(Q, "counterexample_d", Params{});
        auto dims32 = dims_of(Q, built.presentation, 8);
        auto dual = dual_components(Q, built.presentation, 8);
        std::vector<uint32_t> dual_dims;
        for (const auto& v : dual) dual_dims.push_back(v.dim());
        CHECK_FALSE(series_product_is_one(dims32, dual_dims, 2, 8));
    }
}

TEST_CASE("direct and dual 3-regularity routes agree on the catalog") {
    RatField Q;
    FpField F19(19);
    auto battery_q = {"sklyanin3", "qdef3", "counterexample_d", "epsilon_algebra"};
    for (const char* name : battery_q) {
        auto built = catalog_build(Q, name, Params{});
        REQUIRE(built.form);
        auto agree = three_regular_equivalence(Q, *built.form, built.N);
        INFO(name);
        CHECK(agree.agree);
        CHECK(agree.direct);
    }
    auto typeE = catalog_build(F19, "typeE", Params{});
    REQUIRE(typeE.form);
    auto agree = three_regular_equivalence(F19, *typeE.form, typeE.N);
    CHECK(agree.agree);
    CHECK(agree.direct);
}

TEST_CASE("engine certifies a catalog entry end to end") {
    JobSpec job;
    job.catalog_ref = "sklyanin3:p=1/2,q=2";
    auto r = run_job(job);
    INFO(r.text);
    CHECK(r.exit_code == 0);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["schema"] == "kf/1");
    CHECK(r.report["hypotheses"]["field"] == "q");
    REQUIRE(r.report["checks"].is_array());
    CHECK(r.report["checks"].size() >= 4);
    for (const auto& b : r.report["checks"]) CHECK(b["pass"] == true);
    CHECK(r.text.find("verdict: PASS") != std::string::npos);

    auto r2 = run_job(job);
    CHECK(strip_timings(r.report) == strip_timings(r2.report));
}

TEST_CASE("engine reports check failures with exit code 1") {
    JobSpec job;
    job.catalog_ref = "counterexample_d";
    job.hyp_D = 3;
    job.checks = {"gorenstein"};
    auto r = run_job(job);
    CHECK(r.exit_code == 1);
    CHECK(r.report["pass"] == false);
    REQUIRE(r.report["checks"].size() == 1);
    const auto& b = r.report["checks"][0];
    CHECK(b["check"] == "gorenstein");
    CHECK(b["pass"] == false);
    CHECK(r.text.find("gorenstein: FAIL") != std::string::npos);

    job.report_only = true;
    auto ro = run_job(job);
    CHECK(ro.exit_code == 0);
    CHECK(ro.report["pass"] == false);
    CHECK(ro.text.find("[report-only]") != std::string::npos);
}

TEST_CASE("engine rejects malformed requests with exit code 2") {
    {
        JobSpec job; // neither input nor catalog
        auto r = run_job(job);
        CHECK(r.exit_code == 2);
        CHECK(r.report["error"]["kind"] == "UsageError");
    }
    {
        JobSpec job;
        job.catalog_ref = "sklyanin3";
        job.checks = {"kozsul"};
        auto r = run_job(job);
        CHECK(r.exit_code == 2);
        CHECK(r.text.find("unknown check") != std::string::npos);
    }
    {
        JobSpec job;
        job.catalog_ref = "sklyanin3";
        job.checks = {"dim2"}; // trilinear input
        auto r = run_job(job);
        CHECK(r.exit_code == 2);
    }
    {
        JobSpec job;
        job.input_path = "no_such_input.json";
        auto r = run_job(job);
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("engine enforces the memory budget with exit code 3") {
    JobSpec job;
    job.catalog_ref = "yang_mills";
    job.max_degree = 12;
    job.budget_mb = 16;
    auto r = run_job(job);
    CHECK(r.exit_code == 3);
    CHECK(r.report["error"]["kind"] == "BudgetExceeded");
}

TEST_CASE("engine picks the catalog's preferred field when none is given") {
    JobSpec job;
    job.catalog_ref = "typeE";
    job.checks = {"preregular"};
    auto r = run_job(job);
    CHECK(r.exit_code == 0);
    CHECK(r.report["hypotheses"]["field"] == "fp:19");

    job.field_name = "fp:37"; // an explicit field overrides, and 9 | 36
    auto r2 = run_job(job);
    CHECK(r2.report["hypotheses"]["field"] == "fp:37");
}

TEST_CASE("a form written to disk analyzes exactly like its catalog source") {
    RatField Q;
    auto built = catalog_build(Q, "sklyanin3", Params{});
    REQUIRE(built.form);
    const std::string path = "spec_roundtrip_form.json";
    write_text_file(path, form_to_json(Q, *built.form).dump(2));

    std::vector<std::string> checks = {"preregular", "3regular", "koszul", "frobenius"};
    JobSpec via_catalog;
    via_catalog.catalog_ref = "sklyanin3";
    via_catalog.checks = checks;
    JobSpec via_file;
    via_file.input_path = path;
    via_file.hyp_N = 2;
    via_file.checks = checks;

    auto a = run_job(via_catalog);
    auto b = run_job(via_file);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.report["checks"] == b.report["checks"]);
    CHECK(a.report["pass"] == b.report["pass"]);
}

TEST_CASE("presentation files get validation and Koszulity by default") {
    RatField Q;
    auto built = catalog_build(Q, "yang_mills", Params{{"g", "3"}});
    const std::string path = "spec_roundtrip_presentation.json";
    write_text_file(path, presentation_to_json(Q, built.presentation).dump(2));

    JobSpec job;
    job.input_path = path;
    job.max_degree = 6;
    auto r = run_job(job);
    INFO(r.text);
    CHECK(r.exit_code == 0);
    REQUIRE(r.report["checks"].size() == 2);
    CHECK(r.report["checks"][0]["check"] == "koszul");
    CHECK(r.report["checks"][1]["check"] == "validate");
}

TEST_CASE("the hecke runner verifies both supplied and solved parameters") {
    {
        std::ofstream out("spec_hecke_b.txt");
        out << "2 2\n1 2 1\n2 1 -1\n"; // antisymmetric, so q = 1 solves the root equation
    }
    HeckeJob job;
    job.b_path = "spec_hecke_b.txt";
    job.standard_q = "1";
    auto r = run_hecke(job);
    INFO(r.text);
    CHECK(r.exit_code == 0);
    CHECK(r.report["pass"] == true);

    {
        std::ofstream out("spec_hecke_id.txt");
        out << "2 2\n1 1 1\n2 2 1\n";
    }
    HeckeJob solved;
    solved.b_path = "spec_hecke_id.txt"; // trace 2, double root q = -1
    auto r2 = run_hecke(solved);
    INFO(r2.text);
    CHECK(r2.exit_code == 0);
    CHECK(r2.report["pass"] == true);

    HeckeJob bad;
    bad.b_path = "spec_hecke_b.txt";
    bad.standard_q = "3"; // (q - 1)^2 does not vanish at q = 3
    auto r3 = run_hecke(bad);
    CHECK(r3.exit_code != 0);
}

TEST_CASE("the catalog listing covers every registered entry") {
    auto j = catalog_list_json();
    REQUIRE(j["entries"].is_array());
    CHECK(j["entries"].size() == catalog_entries().size());
    CHECK(j["entries"].size() == 14);
    auto text = catalog_list_text();
    for (const auto& e : catalog_entries()) CHECK(text.find(e.name) != std::string::npos);
}
