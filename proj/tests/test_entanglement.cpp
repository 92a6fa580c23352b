#include <cmath>

#include "doctest.h"
#include "herald/entanglement.hpp"

using namespace herald;

TEST_CASE("log-negativity of simple spectra") {
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(log_negativity_pure({{h, h}, 0.0}) - 1.0) <= 1e-12);
    CHECK(log_negativity_pure({{1.0}, 0.0}) == 0.0);
    CHECK(std::abs(log_negativity_pure({{0.5, 0.5, 0.5, 0.5}, 0.0}) - 2.0) <= 1e-12);
}

TEST_CASE("log-negativity drops truncation noise") {
    // The 1e-15 value sits below the default drop threshold, so the sum is
    // exactly 1 and the measure exactly 0.
    CHECK(log_negativity_pure({{1.0, 1e-15}, 0.0}) == 0.0);
    CHECK(log_negativity_pure({{1.0, 1e-15}, 0.0}, 0.0) > 0.0);
}

TEST_CASE("log-negativity requires a normalized spectrum") {
    CHECK_THROWS_AS(log_negativity_pure({{0.5, 0.5}, 0.0}), DomainError);
}

TEST_CASE("squeezed baseline") {
    CHECK(std::abs(baseline_tmsvs(0.5) - 1.4426950408889634) <= 1e-12);
    CHECK(baseline_tmsvs(0.0) == 0.0);
    CHECK_THROWS_AS(baseline_tmsvs(-0.2), std::invalid_argument);
}

TEST_CASE("report wiring") {
    const double h = 1.0 / std::sqrt(2.0);
    const EntanglementReport rep = entanglement_report({{h, h}, 0.0}, 0.25);
    CHECK(rep.delta == rep.e_n - rep.baseline);
    CHECK(std::abs(rep.e_n - 1.0) <= 1e-12);
    CHECK(std::abs(rep.baseline - 0.5 * 1.4426950408889634) <= 1e-12);
}
