// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/band.hpp"
#include "dualband/channel/grid.hpp"

#include <armadillo>
#include <cstdint>
#include <vector>

namespace dualband {

/// Per-band channel generation parameters.
struct ChannelConfig {
    Band band = Band::mmwave;
    double carrier_hz = 28e9;
    double bandwidth_hz = 850e6;
    int n_subcarriers = 16;
    int n_tx = 8; ///< base station antennas
    int n_rx = 4; ///< user antennas
    int cluster_count = 5; ///< 1 LOS + (cluster_count - 1) NLOS
    double k_factor_db = 9.0;        ///< LOS power over total NLOS power
    double delay_spread_s = 100e-9;  ///< NLOS excess-delay decay constant
    double pathloss_exp_los = 2.0;
    double pathloss_exp_nlos = 3.2;
    /// Blockage events arrive per slot as Bernoulli with probability
    /// blocker_density * blockage_rate_per_density * blockage_sensitivity;
    /// each event lasts a geometric number of slots with this mean.
    double blockage_rate_per_density = 5e-4;
    double mean_blockage_slots = 200.0;
    /// Vehicle-scale obstacles block the LOS ray at mmWave but diffract
    /// at sub-6 wavelengths; 0 disables blockage for the band.
    double blockage_sensitivity = 1.0;
    double bs_x_m = 0.0;
    double bs_y_m = 0.0;
};

/// One propagation cluster. Angles are ULA angles off broadside; the
/// phase of complex_gain absorbs the carrier term of the path delay.
struct PathCluster {
    std::complex<double> complex_gain;
    double aod_rad = 0.0;
    double aoa_rad = 0.0;
    double delay_s = 0.0;
    double doppler_hz = 0.0;
    bool is_los = false;
};

/// Time-evolving wideband MIMO channel for one band. h holds one
/// n_rx x n_tx matrix per (subcarrier, slot); large_scale_gain is the
/// linear power gain G[m] applied outside the small-scale matrices.
struct ChannelTrace {
    Band band = Band::mmwave;
    int n_tx = 0;
    int n_rx = 0;
    int n_subcarriers = 0;
    int n_slots = 0;
    double bandwidth_hz = 0.0;
    double carrier_hz = 0.0;
    double slot_duration_s = 0.0;
    /// One cube per slot, subcarriers along the third index.
    std::vector<arma::cx_cube> frames;
    arma::vec large_scale_gain; ///< per slot, linear power
    std::vector<std::uint8_t> los_flag; ///< per slot
    /// Generation metadata, kept for diagnostics; not serialized.
    std::vector<PathCluster> clusters;

    const arma::cx_mat& at(int subcarrier, int slot) const {
        return frames[static_cast<std::size_t>(slot)].slice(subcarrier);
    }
};

/// Equality over the serialized content (header fields and tensors),
/// bit-exact. Cluster metadata is ignored.
bool operator==(const ChannelTrace& a, const ChannelTrace& b);

/// Unnormalized ULA steering vector: element n carries phase
/// pi * n * sin(angle) (half-wavelength spacing), magnitude 1.
arma::cx_vec ula_response(int n_antennas, double angle_rad);

/// Linear power gain of a log-distance path-loss law anchored at the
/// 1 m free-space intercept (c / (4 pi f_c))^2. Default exponents:
/// 2.0 LOS, 3.2 NLOS.
double large_scale_gain(double distance_m, bool los, double carrier_hz);
double large_scale_gain(double distance_m, bool los, double carrier_hz, double exp_los,
                        double exp_nlos);

/// Clustered geometric channel along a trajectory. Cluster geometry is
/// drawn once per trace (LOS from the midpoint geometry, NLOS random);
/// per-slot evolution is Doppler phase rotation plus an LOS on/off
/// blockage chain. The blockage stream depends only on (seed, slot), so
/// two bands generated with the same seed share one LOS timeline
/// (co-located arrays).
ChannelTrace generate_channel(const Trajectory& trajectory, const ChannelConfig& cfg,
                              double blocker_density_per_km, std::uint64_t seed);

} // namespace dualband
