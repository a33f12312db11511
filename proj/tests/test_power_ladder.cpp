#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "smddc/power_ladder.hpp"

using smddc::PowerLadder;

namespace {

std::vector<double> levels_of(const PowerLadder& ladder) {
    return {ladder.levels().begin(), ladder.levels().end()};
}

}  // namespace

TEST_CASE("ladder examples") {
    CHECK(levels_of(PowerLadder::build(4.0, 1.0, 3)) == std::vector<double>{4.0, 20.0, 100.0});
    CHECK(levels_of(PowerLadder::build(1.0, 1.0, 3)) == std::vector<double>{1.0, 2.0, 4.0});
    // By hand: 2*1, 2*(2+1), 2*(6+2+1), 2*(18+6+2+1).
    CHECK(levels_of(PowerLadder::build(2.0, 1.0, 4)) == std::vector<double>{2.0, 6.0, 18.0, 54.0});
}

TEST_CASE("sinr at level") {
    const auto l4 = PowerLadder::build(4.0, 1.0, 3);
    CHECK(l4.sinr_at_level(1) == 4.0);
    CHECK(l4.sinr_at_level(3) == 4.0);
    const auto l2 = PowerLadder::build(2.0, 1.0, 4);
    CHECK(l2.sinr_at_level(4) == 2.0);  // 54 / (18 + 6 + 2 + 1)

    CHECK_THROWS_AS(l4.sinr_at_level(0), std::out_of_range);
    CHECK_THROWS_AS(l4.sinr_at_level(4), std::out_of_range);
    CHECK_THROWS_AS(l4.rho(-1), std::out_of_range);
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(PowerLadder::build(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(PowerLadder::build(-1.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(PowerLadder::build(4.0, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(PowerLadder::build(4.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(PowerLadder::build(4.0, 1.0, 2, 0.0), std::invalid_argument);
}

TEST_CASE("margin scales the target") {
    const auto ladder = PowerLadder::build(4.0, 1.0, 2, 1.5);
    CHECK(ladder.gamma() == doctest::Approx(6.0));
    CHECK(ladder.rho(1) == doctest::Approx(6.0));
    CHECK(ladder.sinr_at_level(2) == doctest::Approx(6.0));
}

TEST_CASE("recursion, closed form and monotonicity on a grid") {
    for (double gamma : {0.25, 0.5, 1.0, 2.0, 3.7, 10.0, 31.6}) {
        for (double n0 : {1e-3, 1.0, 2.5, 100.0}) {
            for (int depth : {1, 2, 5, 8}) {
                const auto ladder = PowerLadder::build(gamma, n0, depth);
                REQUIRE(ladder.depth() == depth);
                for (int l = 1; l <= depth; ++l) {
                    CHECK(ladder.rho(l) > 0.0);
                    CHECK(std::abs(ladder.sinr_at_level(l) / gamma - 1.0) <= 1e-12);
                    const double closed = smddc::closed_form_rho(gamma, n0, l);
                    CHECK(std::abs(ladder.rho(l) / closed - 1.0) <= 1e-12);
                    if (gamma >= 1.0 && l > 1) CHECK(ladder.rho(l) > ladder.rho(l - 1));
                }
            }
        }
    }
}
