#include <doctest.h>

#include "property_suite.hpp"

TEST_CASE("randomized exact-identity suite over six bases") {
    auto result = betatile_props::run_property_suite(20240817);
    CHECK(result.cases >= 200);
    for (const auto& f : result.failures) FAIL_CHECK(f);
    CHECK(result.failures.empty());
}
