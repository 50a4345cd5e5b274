// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace dualband {

/// Manhattan street grid: n_streets_x vertical roads and n_streets_y
/// horizontal roads, spaced block_m apart. Roads intersect at every
/// (i * block_m, j * block_m). A single road with no crossing roads is a
/// valid degenerate grid (straight corridor).
struct GridConfig {
    int n_streets_x = 4; ///< vertical roads (constant x)
    int n_streets_y = 4; ///< horizontal roads (constant y)
    double block_m = 100.0;
};

struct TurnEvent {
    int slot = 0;
    /// uturn happens only at dead ends (always constrained).
    enum class Kind { straight, left, right, uturn } kind = Kind::straight;
    /// True when the draw was renormalized because some directions would
    /// have left the grid (boundary intersections).
    bool constrained = false;
};

/// Vehicle path on the grid, one position per time slot.
struct Trajectory {
    std::vector<double> x_m;
    std::vector<double> y_m;
    double speed_mps = 0.0;
    double slot_duration_s = 0.0;
    std::vector<TurnEvent> turn_events;

    std::size_t n_slots() const { return x_m.size(); }
};

/// Constant-speed random walk on the grid. At each intersection the
/// vehicle goes straight with probability 0.5, turns left with 0.25 and
/// right with 0.25; choices that would exit the grid are removed and the
/// remaining probabilities renormalized (recorded as constrained).
/// Deterministic for a given seed.
Trajectory generate_trajectory(const GridConfig& grid, double speed_mps, int duration_slots,
                               double slot_duration_s, std::uint64_t seed);

} // namespace dualband
