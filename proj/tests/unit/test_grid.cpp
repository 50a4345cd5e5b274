// SPDX-License-Identifier: Apache-2.0
#include "dualband/channel/grid.hpp"
#include "dualband/errors.hpp"

#include "doctest.h"

#include <cmath>

using namespace dualband;

TEST_SUITE("grid") {

TEST_CASE("straight corridor produces collinear positions") {
    GridConfig corridor{0, 1, 100.0};
    const double speed = 11.11;
    const Trajectory t = generate_trajectory(corridor, speed, 100, 1e-3, 42);
    REQUIRE(t.n_slots() == 100);
    // All on the single road y = 0.
    for (double y : t.y_m)
        CHECK(y == doctest::Approx(0.0).epsilon(1e-12));
    // Straight-segment step length is speed * dt (no turns possible
    // except the dead-end u-turn; none occurs in 0.1 s over 100 m).
    for (std::size_t i = 1; i < t.n_slots(); ++i) {
        const double step = std::hypot(t.x_m[i] - t.x_m[i - 1], t.y_m[i] - t.y_m[i - 1]);
        CHECK(step == doctest::Approx(speed * 1e-3).epsilon(1e-9));
    }
}

TEST_CASE("same seed gives bitwise-identical trajectories") {
    GridConfig grid{5, 5, 80.0};
    const Trajectory a = generate_trajectory(grid, 13.9, 500, 1e-3, 7);
    const Trajectory b = generate_trajectory(grid, 13.9, 500, 1e-3, 7);
    REQUIRE(a.n_slots() == b.n_slots());
    for (std::size_t i = 0; i < a.n_slots(); ++i) {
        CHECK(a.x_m[i] == b.x_m[i]);
        CHECK(a.y_m[i] == b.y_m[i]);
    }
    CHECK(a.turn_events.size() == b.turn_events.size());
}

TEST_CASE("all positions lie on grid roads") {
    GridConfig grid{4, 3, 50.0};
    const Trajectory t = generate_trajectory(grid, 20.0, 2000, 5e-3, 99);
    for (std::size_t i = 0; i < t.n_slots(); ++i) {
        const double rx = std::remainder(t.x_m[i], grid.block_m);
        const double ry = std::remainder(t.y_m[i], grid.block_m);
        const bool on_vertical = std::abs(rx) < 1e-6 && t.x_m[i] / grid.block_m < 4.5;
        const bool on_horizontal = std::abs(ry) < 1e-6;
        CHECK((on_vertical || on_horizontal));
    }
}

TEST_CASE("unconstrained intersection decisions are 0.5/0.25/0.25") {
    // Oracle: Monte-Carlo frequency of the stated categorical law over
    // full intersections (all three options available).
    GridConfig grid{30, 30, 10.0};
    long straight = 0, total = 0;
    for (std::uint64_t seed = 0; total < 10000; ++seed) {
        const Trajectory t = generate_trajectory(grid, 10.0, 4000, 1e-2, seed);
        for (const TurnEvent& ev : t.turn_events) {
            if (ev.constrained)
                continue;
            ++total;
            straight += ev.kind == TurnEvent::Kind::straight;
        }
    }
    const double frac = static_cast<double>(straight) / total;
    CHECK(frac == doctest::Approx(0.5).epsilon(0.04)); // 0.5 +- 0.02
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(generate_trajectory(GridConfig{0, 0, 100.0}, 10, 10, 1e-3, 1), ConfigError);
    CHECK_THROWS_AS(generate_trajectory(GridConfig{2, 2, -5.0}, 10, 10, 1e-3, 1), ConfigError);
    CHECK_THROWS_AS(generate_trajectory(GridConfig{2, 2, 100.0}, 0.0, 10, 1e-3, 1), ConfigError);
}

} // TEST_SUITE
