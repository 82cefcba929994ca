#include <kform/regularity.hpp>
#include <kform/hecke.hpp>
#include <kform/hochschild.hpp>
#include <kform/catalog.hpp>

#include <catch_amalgamated.hpp>

using namespace kf;

TEST_CASE("shape validation for duality certificates") {
    CHECK(kgd_shape_validate(2, 3, 3).D == 3);
    CHECK(kgd_shape_validate(3, 3, 4).p == 1);
    CHECK(kgd_shape_validate(3, 5, 7).p == 2);
    CHECK_THROWS_AS(kgd_shape_validate(1, 3, 3), Error);
    CHECK_THROWS_AS(kgd_shape_validate(2, 4, 3), Error); // quadratic needs D = m
    CHECK_THROWS_AS(kgd_shape_validate(3, 4, 4), Error); // cubic needs D = 2p+1
    CHECK_THROWS_AS(kgd_shape_validate(3, 3, 5), Error); // arity not Np+1
}

TEST_CASE("koszulity holds for the quantum plane and fails for the bad cubic dims") {
    RatField Q;
    {
        auto built = catalog_build(Q, "manin_plane", Params{});
        GradedBasis<RatField> A(Q, built.presentation);
        auto V = dual_components(Q, built.presentation, 6);
        auto rep = koszulity_check(A, V, 2, 6);
        CHECK(rep.koszul);
        CHECK_FALSE(rep.failure.has_value());
    }
    {
        auto built = catalog_build(Q, "counterexample_d", Params{});
        GradedBasis<RatField> A(Q, built.presentation);
        auto V = dual_components(Q, built.presentation, 6);
        auto rep = koszulity_check(A, V, 2, 6);
        CHECK_FALSE(rep.koszul);
        REQUIRE(rep.failure.has_value());
        CHECK(rep.failure->t == 4);
        CHECK(rep.failure->violation.position == 2);
        CHECK(rep.failure->violation.homology == 2);
        // the reported witness is a genuine cycle-not-boundary
        auto slice = strand_complex(A, V, alternating_positions(2, 4), 4);
        CHECK(vector_is_homology_witness(slice, 2, rep.failure->violation.witness));
    }
}

TEST_CASE("the full certificate passes sklyanin3 and pins the counterexample") {
    RatField Q;
    {
        auto built = catalog_build(Q, "sklyanin3", Params{{"p", "1/2"}, {"q", "2"}});
        auto rep = check_koszul_gorenstein(Q, *built.form, 2, 3, 6);
        CHECK(rep.certified());
        CHECK(rep.dims == std::vector<uint32_t>{1, 3, 6, 10, 15, 21, 28});
        CHECK(rep.alternating_dims == std::vector<uint32_t>{1, 3, 3, 1});
        CHECK(rep.dual_match);
        CHECK(rep.poincare_dual);
    }
    {
        auto built = catalog_build(Q, "counterexample_d", Params{});
        auto rep = check_koszul_gorenstein(Q, *built.form, 2, 3, 6);
        CHECK_FALSE(rep.certified());
        CHECK(rep.preregular);
        CHECK(rep.dual_match);
        CHECK_FALSE(rep.acyclic);
        REQUIRE(rep.failure.has_value());
        CHECK(rep.failure->violation.position == 2);
    }
}

TEST_CASE("the dual Frobenius certificate is quadratic only and exact") {
    RatField Q;
    {
        auto built = catalog_build(Q, "sklyanin3", Params{});
        auto rep = dual_frobenius(Q, built.presentation, 3);
        CHECK(rep.frobenius());
        CHECK(rep.dual_dims == std::vector<uint32_t>{1, 3, 3, 1, 0});
    }
    {
        auto built = catalog_build(Q, "self_duality", Params{});
        auto rep = dual_frobenius(Q, built.presentation, 2);
        CHECK_FALSE(rep.frobenius());
        CHECK(rep.dual_dims == std::vector<uint32_t>{1, 4, 3, 0});
        CHECK_FALSE(rep.top_is_line);
    }
    {
        auto built = catalog_build(Q, "yang_mills", Params{{"g", "3"}});
        CHECK_THROWS_AS(dual_frobenius(Q, built.presentation, 5), Error);
    }
}

TEST_CASE("frobenius quotients of the dual preregular algebra") {
    RatField Q;
    {
        auto eps = epsilon_form(Q, 3);
        auto rep = frobenius_quotient(Q, eps, 2);
        CHECK(rep.quotient_dims == std::vector<uint32_t>{1, 3, 3, 1});
        CHECK(rep.radical_trivial);
        CHECK(rep.pairings_nondegenerate);
        CHECK(rep.twist_identity);
        CHECK(rep.twist_preserves_dual_relations);
        CHECK(rep.transpose_twist_preserves_relations);
    }
    {
        auto built = catalog_build(Q, "yang_mills", Params{{"g", "3"}});
        auto rep = frobenius_quotient(Q, *built.form, 3);
        CHECK(rep.dual_dims == std::vector<uint32_t>{1, 3, 9, 3, 1});
        CHECK(rep.radical_trivial); // the ideal to divide by is already zero
        CHECK(rep.pairings_nondegenerate);
    }
}

TEST_CASE("two-generator classification recognizes the planes") {
    RatField Q;
    auto probe = [&](const char* name, const char* label, const char* trace) {
        auto built = catalog_build(Q, name, Params{});
        auto rep = dim2_analyze(Q, *built.form, 6);
        CHECK(rep.regular);
        CHECK(rep.label == label);
        CHECK(rep.series_matches);
        CHECK(rep.has_twist_invariants);
        CHECK(rep.twist_trace == Q.parse(trace));
        CHECK(rep.twist_det == Q.one());
        CHECK(rep.dims == std::vector<uint32_t>{1, 2, 3, 4, 5, 6, 7});
    };
    probe("manin_plane", "manin", "-5/2"); // default q = 2: trace -(q + 1/q)
    probe("jordan_plane", "jordanian", "-2");
    probe("polynomial_plane", "polynomial", "-2");
}

TEST_CASE("degenerate bilinear forms grow like Fibonacci and are flagged") {
    RatField Q;
    auto f = make_form(Q, 2, 2, {{{1, 1}, Q.one()}});
    auto rep = dim2_analyze(Q, f, 6);
    CHECK_FALSE(rep.regular);
    CHECK(rep.sym_rank == 1);
    REQUIRE(rep.dual_unbounded.has_value());
    CHECK(*rep.dual_unbounded);
    CHECK(rep.dims == std::vector<uint32_t>{1, 2, 3, 5, 8, 13, 21});
}

TEST_CASE("orbit consistency under an explicit change of generators") {
    RatField Q;
    auto built = catalog_build(Q, "sklyanin3", Params{});
    Mat<Rat> L{{Q.one(), Q.one(), Q.zero()},
               {Q.zero(), Q.one(), Q.one()},
               {Q.one(), Q.zero(), Q.one()}};
    auto rep = orbit_consistency(Q, *built.form, 2, L, 5);
    CHECK(rep.consistent());
    CHECK(rep.dims_match);
    CHECK(rep.twists_compared);
    CHECK(rep.twist_covariant);
    CHECK(rep.dims == rep.dims_moved);
}

TEST_CASE("three-regularity agreement between the direct and dual routes") {
    RatField Q;
    for (const char* name : {"sklyanin3", "counterexample_d"}) {
        auto built = catalog_build(Q, name, Params{});
        auto agree = three_regular_equivalence(Q, *built.form, 2);
        CHECK(agree.agree);
        CHECK(agree.direct);
        CHECK(agree.via_dual);
    }
}

TEST_CASE("hecke roots, the standard solution, and the braid identities") {
    FpField F(10007);
    Mat<Fp> B = mat_zero(F, 2, 2);
    B[0][1] = F.one();
    B[1][0] = F.from_long(-2);
    auto roots = hecke_roots(F, B);
    REQUIRE(roots.exists);
    CHECK(roots.q1 * roots.q2 == F.one()); // the two roots are inverse
    CHECK(roots.q1 == F.from_long(2));

    auto K = standard_hecke(F, B, roots.q1);
    auto rep = hecke_verify(F, B, K);
    CHECK(rep.structure_identities);
    CHECK(rep.yang_baxter);
    CHECK(rep.hecke);
    CHECK(rep.relation_match);

    CHECK_THROWS_AS(standard_hecke(F, B, F.from_long(3)), Error); // not a root
    Mat<Fp> S = mat_zero(F, 2, 2);
    CHECK_THROWS_AS(hecke_roots(F, S), Error); // singular B
}

TEST_CASE("the antisymmetric pairing admits the flip at q equal one") {
    RatField Q;
    Mat<Rat> B{{Q.zero(), Q.one()}, {Q.from_long(-1), Q.zero()}};
    auto roots = hecke_roots(Q, B);
    REQUIRE(roots.exists);
    CHECK(roots.double_root);
    CHECK(roots.q1 == Q.one());
    auto K = standard_hecke(Q, B, Q.one());
    auto rep = hecke_verify(Q, B, K);
    CHECK(rep.structure_identities);
    CHECK(rep.yang_baxter);
    CHECK(rep.hecke);
    CHECK(rep.relation_match);
}

TEST_CASE("volume classes are closed nontrivial cycles for the planes") {
    RatField Q;
    for (const char* name : {"polynomial_plane", "manin_plane", "jordan_plane",
                             "extended_sklyanin"}) {
        auto built = catalog_build(Q, name, Params{});
        auto rep = is_volume_cycle(Q, *built.form, 2);
        CHECK(rep.ok());
    }
    auto ym = catalog_build(Q, "yang_mills", Params{{"g", "3"}});
    CHECK_THROWS_AS(is_volume_cycle(Q, *ym.form, 3), Error); // quadratic only
}

TEST_CASE("signed dual series cancel the growth series exactly") {
    std::vector<uint32_t> dims{1, 2, 3, 4, 5, 6, 7};
    std::vector<uint32_t> dual{1, 2, 1, 0, 0, 0, 0};
    CHECK(series_product_is_one(dims, dual, 2, 6));
    std::vector<uint32_t> wrong{1, 2, 2, 0, 0, 0, 0};
    CHECK_FALSE(series_product_is_one(dims, wrong, 2, 6));

    // cubic positions enter with period N: dual dims [1,2,2,1] sit at the
    // alternating positions 0,1,3,4 and the product telescopes against
    // a_n = 2a_{n-1} - 2a_{n-3} + a_{n-4}
    std::vector<uint32_t> cdims{1, 2, 4, 6, 9, 12, 16};
    std::vector<uint32_t> cdual{1, 2, 0, 2, 1, 0, 0};
    CHECK(series_product_is_one(cdims, cdual, 3, 6));
}

TEST_CASE("growth labels for principal shapes") {
    CHECK(*expected_growth(3, 2, 3) == "polynomial");
    CHECK(*expected_growth(2, 3, 3) == "polynomial");
    CHECK(*expected_growth(4, 3, 3) == "exponential");
    CHECK(*expected_growth(2, 2, 2) == "polynomial");
    CHECK(*expected_growth(4, 2, 2) == "exponential");
    CHECK_FALSE(expected_growth(4, 3, 5).has_value());
}
