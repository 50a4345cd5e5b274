// SPDX-License-Identifier: Apache-2.0
#include "dualband/channel/grid.hpp"

#include "dualband/errors.hpp"
#include "dualband/rng.hpp"

#include <algorithm>
#include <cmath>

namespace dualband {

namespace {

enum class Heading { px, nx, py, ny };

Heading left_of(Heading h) {
    switch (h) {
    case Heading::px: return Heading::py;
    case Heading::py: return Heading::nx;
    case Heading::nx: return Heading::ny;
    case Heading::ny: return Heading::px;
    }
    return Heading::px;
}

Heading right_of(Heading h) {
    switch (h) {
    case Heading::px: return Heading::ny;
    case Heading::ny: return Heading::nx;
    case Heading::nx: return Heading::py;
    case Heading::py: return Heading::px;
    }
    return Heading::px;
}

Heading reverse_of(Heading h) {
    switch (h) {
    case Heading::px: return Heading::nx;
    case Heading::nx: return Heading::px;
    case Heading::py: return Heading::ny;
    case Heading::ny: return Heading::py;
    }
    return Heading::px;
}

bool is_horizontal(Heading h) { return h == Heading::px || h == Heading::nx; }

struct Walker {
    const GridConfig& grid;
    double width;  // extent along x
    double height; // extent along y
    double x = 0.0;
    double y = 0.0;
    Heading dir = Heading::px;

    static constexpr double kEps = 1e-9;

    double tol() const { return kEps * std::max(1.0, grid.block_m); }

    // Index of the crossing road through the current point, or -1.
    int crossing_road_index() const {
        const double coord = is_horizontal(dir) ? x : y;
        const int n_cross = is_horizontal(dir) ? grid.n_streets_x : grid.n_streets_y;
        const int i = static_cast<int>(std::llround(coord / grid.block_m));
        if (i < 0 || i >= n_cross || std::abs(coord - i * grid.block_m) > tol())
            return -1;
        return i;
    }

    bool can_move(Heading h) const {
        switch (h) {
        case Heading::px: return x < width - tol();
        case Heading::nx: return x > tol();
        case Heading::py: return y < height - tol();
        case Heading::ny: return y > tol();
        }
        return false;
    }

    // Distance along the current heading to the next decision point
    // (crossing road or road end).
    double distance_to_event() const {
        const double coord = is_horizontal(dir) ? x : y;
        const bool positive = dir == Heading::px || dir == Heading::py;
        const double limit = is_horizontal(dir) ? width : height;
        const int n_cross = is_horizontal(dir) ? grid.n_streets_x : grid.n_streets_y;

        double next = positive ? limit : 0.0;
        for (int i = 0; i < n_cross; ++i) {
            const double c = i * grid.block_m;
            if (positive && c > coord + tol() && c < next)
                next = c;
            if (!positive && c < coord - tol() && c > next)
                next = c;
        }
        return std::abs(next - coord);
    }

    void move(double dist) {
        switch (dir) {
        case Heading::px: x += dist; break;
        case Heading::nx: x -= dist; break;
        case Heading::py: y += dist; break;
        case Heading::ny: y -= dist; break;
        }
        snap(x, width);
        snap(y, height);
    }

    // Snap onto lattice coordinates so long runs do not accumulate drift.
    void snap(double& c, double limit) const {
        const double i = static_cast<double>(std::llround(c / grid.block_m));
        if (std::abs(c - i * grid.block_m) <= tol())
            c = i * grid.block_m;
        c = std::clamp(c, 0.0, limit);
    }
};

} // namespace

Trajectory generate_trajectory(const GridConfig& grid, double speed_mps, int duration_slots,
                               double slot_duration_s, std::uint64_t seed) {
    if (grid.n_streets_x < 0 || grid.n_streets_y < 0 || grid.n_streets_x + grid.n_streets_y == 0)
        throw ConfigError("generate_trajectory: grid needs at least one road");
    if (grid.block_m <= 0.0)
        throw ConfigError("generate_trajectory: block_m must be positive");
    if (speed_mps <= 0.0)
        throw ConfigError("generate_trajectory: speed must be positive");
    if (duration_slots < 0)
        throw ConfigError("generate_trajectory: negative duration");
    if (slot_duration_s <= 0.0)
        throw ConfigError("generate_trajectory: slot duration must be positive");

    Rng rng(seed);
    Walker w{grid,
             (std::max(grid.n_streets_x, 2) - 1) * grid.block_m,
             (std::max(grid.n_streets_y, 2) - 1) * grid.block_m};

    // Spawn on a uniformly chosen road, uniform offset, random direction.
    const int road = static_cast<int>(rng.uniform_int(grid.n_streets_x + grid.n_streets_y));
    if (road < grid.n_streets_y) {
        w.y = road * grid.block_m;
        w.x = rng.uniform(0.0, w.width);
        w.dir = rng.bernoulli(0.5) ? Heading::px : Heading::nx;
    } else {
        w.x = (road - grid.n_streets_y) * grid.block_m;
        w.y = rng.uniform(0.0, w.height);
        w.dir = rng.bernoulli(0.5) ? Heading::py : Heading::ny;
    }

    Trajectory traj;
    traj.speed_mps = speed_mps;
    traj.slot_duration_s = slot_duration_s;
    traj.x_m.reserve(duration_slots);
    traj.y_m.reserve(duration_slots);

    const double step = speed_mps * slot_duration_s;
    for (int slot = 0; slot < duration_slots; ++slot) {
        double remaining = step;
        while (remaining > w.tol()) {
            const double to_event = w.distance_to_event();
            if (remaining < to_event - w.tol()) {
                w.move(remaining);
                remaining = 0.0;
                break;
            }
            w.move(to_event);
            remaining -= to_event;

            const bool has_crossing = w.crossing_road_index() >= 0;
            const Heading lh = left_of(w.dir);
            const Heading rh = right_of(w.dir);
            const bool straight_ok = w.can_move(w.dir);
            const bool left_ok = has_crossing && w.can_move(lh);
            const bool right_ok = has_crossing && w.can_move(rh);

            TurnEvent ev;
            ev.slot = slot;
            ev.constrained = !(straight_ok && left_ok && right_ok);

            const double total =
                (straight_ok ? 0.5 : 0.0) + (left_ok ? 0.25 : 0.0) + (right_ok ? 0.25 : 0.0);
            if (total <= 0.0) {
                w.dir = reverse_of(w.dir); // dead end
                ev.kind = TurnEvent::Kind::uturn;
            } else {
                const double u = rng.uniform() * total;
                const double straight_mass = straight_ok ? 0.5 : 0.0;
                if (straight_ok && u < straight_mass) {
                    ev.kind = TurnEvent::Kind::straight;
                } else if (left_ok && u < straight_mass + 0.25) {
                    w.dir = lh;
                    ev.kind = TurnEvent::Kind::left;
                } else {
                    w.dir = rh;
                    ev.kind = TurnEvent::Kind::right;
                }
            }
            traj.turn_events.push_back(ev);
        }
        traj.x_m.push_back(w.x);
        traj.y_m.push_back(w.y);
    }
    return traj;
}

} // namespace dualband
