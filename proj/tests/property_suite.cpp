#include "property_impl.hpp"

#include <catch_amalgamated.hpp>

using kft::SuiteResult;

namespace {
void report(const SuiteResult& r) {
    INFO(r.failures << " of " << r.cases << " cases violated the invariant");
    CHECK(r.cases >= 100);
    CHECK(r.failures == 0);
}
} // namespace

TEST_CASE("orbit covariance: dims and twist survive a change of generators") {
    report(kft::suite_orbit_covariance(100));
}

TEST_CASE("the GL action on forms is functorial and dimension preserving") {
    report(kft::suite_gl_functoriality(120));
}

TEST_CASE("strand differentials compose to zero") {
    report(kft::suite_composites_vanish(100));
}

TEST_CASE("the twisted Hochschild boundary squares to zero") {
    report(kft::suite_boundary_square_zero(100));
}

TEST_CASE("the quadratic dual is an involution") {
    report(kft::suite_dual_involution(120));
}

TEST_CASE("commutative relations give symmetric and Grassmann binomial dims") {
    report(kft::suite_grassmann_dims(100));
}
