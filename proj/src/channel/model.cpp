// SPDX-License-Identifier: Apache-2.0
#include "dualband/channel/model.hpp"

#include "dualband/errors.hpp"
#include "dualband/rng.hpp"

#include <algorithm>
#include <cmath>

namespace dualband {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

} // namespace

bool operator==(const ChannelTrace& a, const ChannelTrace& b) {
    if (a.band != b.band || a.n_tx != b.n_tx || a.n_rx != b.n_rx ||
        a.n_subcarriers != b.n_subcarriers || a.n_slots != b.n_slots ||
        a.bandwidth_hz != b.bandwidth_hz || a.carrier_hz != b.carrier_hz ||
        a.slot_duration_s != b.slot_duration_s || a.los_flag != b.los_flag)
        return false;
    if (a.large_scale_gain.n_elem != b.large_scale_gain.n_elem)
        return false;
    for (arma::uword i = 0; i < a.large_scale_gain.n_elem; ++i)
        if (a.large_scale_gain[i] != b.large_scale_gain[i])
            return false;
    if (a.frames.size() != b.frames.size())
        return false;
    for (std::size_t m = 0; m < a.frames.size(); ++m) {
        if (a.frames[m].n_elem != b.frames[m].n_elem)
            return false;
        const auto* pa = a.frames[m].memptr();
        const auto* pb = b.frames[m].memptr();
        for (arma::uword i = 0; i < a.frames[m].n_elem; ++i)
            if (pa[i] != pb[i])
                return false;
    }
    return true;
}

arma::cx_vec ula_response(int n_antennas, double angle_rad) {
    arma::cx_vec a(n_antennas);
    const double omega = M_PI * std::sin(angle_rad);
    for (int n = 0; n < n_antennas; ++n)
        a[n] = std::polar(1.0, omega * n);
    return a;
}

double large_scale_gain(double distance_m, bool los, double carrier_hz) {
    return large_scale_gain(distance_m, los, carrier_hz, 2.0, 3.2);
}

double large_scale_gain(double distance_m, bool los, double carrier_hz, double exp_los,
                        double exp_nlos) {
    if (distance_m <= 0.0)
        throw DomainError("large_scale_gain: distance must be positive");
    if (carrier_hz <= 0.0)
        throw DomainError("large_scale_gain: carrier must be positive");
    const double intercept = std::pow(kSpeedOfLight / (4.0 * M_PI * carrier_hz), 2.0);
    return intercept * std::pow(distance_m, -(los ? exp_los : exp_nlos));
}

ChannelTrace generate_channel(const Trajectory& trajectory, const ChannelConfig& cfg,
                              double blocker_density_per_km, std::uint64_t seed) {
    if (cfg.n_tx <= 0 || cfg.n_rx <= 0 || cfg.n_subcarriers <= 0)
        throw ConfigError("generate_channel: antenna/subcarrier counts must be positive");
    if (cfg.cluster_count < 1)
        throw ConfigError("generate_channel: need at least one cluster");
    if (cfg.bandwidth_hz <= 0.0 || cfg.carrier_hz <= 0.0)
        throw ConfigError("generate_channel: bandwidth and carrier must be positive");
    if (trajectory.n_slots() == 0)
        throw ConfigError("generate_channel: empty trajectory");
    if (blocker_density_per_km < 0.0)
        throw ConfigError("generate_channel: negative blocker density");

    const int n_slots = static_cast<int>(trajectory.n_slots());
    const int n_k = cfg.n_subcarriers;

    // Separate substreams: geometry differs per band, blockage does not.
    Rng geo(seed ^ (0x6A09E667F3BCC909ULL + static_cast<std::uint64_t>(cfg.band)));
    Rng blk(seed ^ 0xBB67AE8584CAA73BULL);

    ChannelTrace trace;
    trace.band = cfg.band;
    trace.n_tx = cfg.n_tx;
    trace.n_rx = cfg.n_rx;
    trace.n_subcarriers = n_k;
    trace.n_slots = n_slots;
    trace.bandwidth_hz = cfg.bandwidth_hz;
    trace.carrier_hz = cfg.carrier_hz;
    trace.slot_duration_s = trajectory.slot_duration_s;

    // LOS geometry at the trajectory midpoint.
    const int mid = n_slots / 2;
    const double dx = cfg.bs_x_m - trajectory.x_m[mid];
    const double dy = cfg.bs_y_m - trajectory.y_m[mid];
    const double mid_dist = std::max(1.0, std::hypot(dx, dy));
    const double ux = dx / mid_dist;
    const double uy = dy / mid_dist;

    // Velocity direction at the midpoint.
    double vx = 0.0, vy = 0.0;
    if (n_slots >= 2) {
        const int a = std::min(mid, n_slots - 2);
        const double ex = trajectory.x_m[a + 1] - trajectory.x_m[a];
        const double ey = trajectory.y_m[a + 1] - trajectory.y_m[a];
        const double en = std::hypot(ex, ey);
        if (en > 0.0) {
            vx = trajectory.speed_mps * ex / en;
            vy = trajectory.speed_mps * ey / en;
        }
    }
    const double doppler_max = trajectory.speed_mps * cfg.carrier_hz / kSpeedOfLight;

    // Cluster set: LOS plus NLOS clusters with exponentially decaying
    // power over excess delay. Total power is 1 when LOS is present.
    const double k_lin = std::pow(10.0, cfg.k_factor_db / 10.0);
    const int n_nlos = cfg.cluster_count - 1;
    const double p_los = n_nlos > 0 ? k_lin / (k_lin + 1.0) : 1.0;
    const double p_nlos_total = n_nlos > 0 ? 1.0 / (k_lin + 1.0) : 0.0;

    PathCluster los;
    los.is_los = true;
    // ULAs at both ends lie along the x axis; angles are off broadside.
    los.aod_rad = std::asin(clamp_unit(ux));
    los.aoa_rad = std::asin(clamp_unit(-ux));
    los.delay_s = mid_dist / kSpeedOfLight;
    los.doppler_hz = (vx * ux + vy * uy) * cfg.carrier_hz / kSpeedOfLight;
    los.complex_gain = std::polar(std::sqrt(p_los), geo.uniform(0.0, 2.0 * M_PI));
    trace.clusters.push_back(los);

    if (n_nlos > 0) {
        std::vector<double> extra(n_nlos), weight(n_nlos);
        double wsum = 0.0;
        for (int p = 0; p < n_nlos; ++p) {
            extra[p] = -cfg.delay_spread_s * std::log(std::max(geo.uniform(), 1e-300));
            weight[p] = std::exp(-extra[p] / cfg.delay_spread_s);
            wsum += weight[p];
        }
        for (int p = 0; p < n_nlos; ++p) {
            PathCluster c;
            c.is_los = false;
            c.aod_rad = geo.uniform(-M_PI / 2.0, M_PI / 2.0);
            c.aoa_rad = geo.uniform(-M_PI / 2.0, M_PI / 2.0);
            c.delay_s = los.delay_s + extra[p];
            c.doppler_hz = doppler_max * geo.uniform(-1.0, 1.0);
            const double power = p_nlos_total * weight[p] / wsum;
            c.complex_gain = std::polar(std::sqrt(power), geo.uniform(0.0, 2.0 * M_PI));
            trace.clusters.push_back(c);
        }
    }

    // Per-slot LOS availability: Bernoulli blockage onsets, geometric
    // durations. Exactly one uniform draw per slot keeps the stream
    // aligned across bands.
    const double p_enter = std::min(
        1.0, blocker_density_per_km * cfg.blockage_rate_per_density * cfg.blockage_sensitivity);
    const double p_exit = 1.0 / std::max(1.0, cfg.mean_blockage_slots);
    trace.los_flag.resize(n_slots);
    bool blocked = false;
    for (int m = 0; m < n_slots; ++m) {
        if (!blocked)
            blocked = blk.bernoulli(p_enter);
        else
            blocked = !blk.bernoulli(p_exit);
        trace.los_flag[m] = blocked ? 0 : 1;
    }

    // Large-scale gain from per-slot distance and LOS state.
    trace.large_scale_gain.set_size(n_slots);
    for (int m = 0; m < n_slots; ++m) {
        const double d = std::max(
            1.0, std::hypot(cfg.bs_x_m - trajectory.x_m[m], cfg.bs_y_m - trajectory.y_m[m]));
        trace.large_scale_gain[m] = large_scale_gain(d, trace.los_flag[m] != 0, cfg.carrier_hz,
                                                     cfg.pathloss_exp_los, cfg.pathloss_exp_nlos);
    }

    // Small-scale tensor: H[k,m] = sum_p alpha_p(m) a_rx a_tx^* e^{-j2pi tau_p f_k}
    // with f_k the baseband subcarrier offset and alpha_p(m) the Doppler-
    // rotated cluster gain.
    const std::size_t n_paths = trace.clusters.size();
    std::vector<arma::cx_mat> outer(n_paths);
    arma::cx_mat delay_phase(n_k, n_paths);
    const double df = cfg.bandwidth_hz / n_k;
    for (std::size_t p = 0; p < n_paths; ++p) {
        const PathCluster& c = trace.clusters[p];
        outer[p] = ula_response(cfg.n_rx, c.aoa_rad) * ula_response(cfg.n_tx, c.aod_rad).t();
        for (int k = 0; k < n_k; ++k) {
            const double fk = (k - (n_k - 1) / 2.0) * df;
            delay_phase(k, p) = std::polar(1.0, -2.0 * M_PI * c.delay_s * fk);
        }
    }

    trace.frames.resize(n_slots);
    const double dt = trajectory.slot_duration_s;
    for (int m = 0; m < n_slots; ++m) {
        arma::cx_cube& frame = trace.frames[m];
        frame.zeros(cfg.n_rx, cfg.n_tx, n_k);
        for (std::size_t p = 0; p < n_paths; ++p) {
            const PathCluster& c = trace.clusters[p];
            if (c.is_los && trace.los_flag[m] == 0)
                continue;
            const std::complex<double> rot =
                c.complex_gain * std::polar(1.0, 2.0 * M_PI * c.doppler_hz * m * dt);
            for (int k = 0; k < n_k; ++k)
                frame.slice(k) += (rot * delay_phase(k, p)) * outer[p];
        }
    }
    return trace;
}

} // namespace dualband
