#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "property_suites.hpp"

using namespace qhpc_suites;

namespace {
void report(const SuiteResult& r) {
    CHECK(r.cases >= 200);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.failures.empty());
}
} // namespace

TEST_CASE("ext from standards into costandards vanishes") { report(suite_ext_delta_nabla()); }

TEST_CASE("hom from projectives counts multiplicities") { report(suite_hom_projective()); }

TEST_CASE("filtration certificates, tallies and the vanishing criterion") {
    report(suite_filtration_multiplicities());
}

TEST_CASE("ext vanishing around tilting modules") { report(suite_tilting_ext()); }

TEST_CASE("hom and ext dimensions transport across the duality functor") {
    report(suite_ext_preservation());
}
