#include <doctest.h>

#include "scenucb/validation.hpp"

using namespace scenucb;

TEST_CASE("robustness holds for a single decision") {
    // One grid point leaves a single constraint; the re-draw count bound is then tight.
    ValidationSettings s;
    s.grid_points = {0.5};
    s.robustness_inner = 400;
    const auto r = validate_robustness(s);
    INFO(r.to_text());
    CHECK(r.passed);
    CHECK(r.repetitions == 500);
}

TEST_CASE("suite reports carry their population") {
    ValidationSettings s;
    s.horizon = 60;
    s.repetitions = 100;
    const auto c = validate_concentration(s);
    CHECK(c.suite == "concentration");
    CHECK(c.repetitions == 100);
    CHECK(c.comparison == "<=");
    CHECK(c.threshold == 0.1);
    CHECK(c.observed >= 0.0);
    CHECK(c.observed <= 1.0);

    const auto b = validate_bound(s);
    CHECK(b.suite == "bound");
    CHECK(b.observed <= b.threshold + 3.0 * b.standard_error);

    s.repetitions = 400;
    s.violation_inner = 1000;
    const auto v = validate_violation(s);
    CHECK(v.threshold == 0.05);
    CHECK(v.passed);
}
