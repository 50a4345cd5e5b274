// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/exp/experiment.hpp"
#include "dualband/rng.hpp"

#include <armadillo>
#include <memory>

namespace testsupport {

inline arma::cx_mat random_cx_mat(int rows, int cols, dualband::Rng& rng) {
    arma::cx_mat m(rows, cols);
    for (auto& e : m)
        e = rng.cnormal();
    return m;
}

/// Small scenario that keeps unit tests fast: 4x2 mmWave antennas with
/// 2 RF-chain pairs, 4 subcarriers per band.
inline dualband::ScenarioConfig mini_scenario() {
    dualband::ScenarioConfig cfg;
    cfg.mmwave.n_bs = 4;
    cfg.mmwave.n_ue = 2;
    cfg.mmwave.n_bs_rf = 2;
    cfg.mmwave.n_ue_rf = 2;
    cfg.mmwave.n_s = 2;
    cfg.mmwave.n_subcarriers = 4;
    cfg.mmwave.kappa_rvq = 2;
    cfg.mmwave.rvq_training = 64;
    cfg.sub6.n_bs = 4;
    cfg.sub6.n_ue = 4;
    cfg.sub6.n_s = 2;
    cfg.sub6.n_subcarriers = 4;
    cfg.sub6.nu_pmi = 8;
    cfg.env.m_dt = 4;
    cfg.env.episode_len_decisions = 40;
    cfg.experiment.n_episodes = 2;
    return cfg;
}

inline std::unique_ptr<dualband::LinkEnv> mini_env(std::uint64_t seed, double power_dbm = 30.0,
                                                   double blocker_density = 10.0) {
    dualband::ScenarioConfig cfg = mini_scenario();
    cfg.world.seed = seed;
    cfg.world.blocker_density = blocker_density;
    return dualband::make_env_factory(cfg, 0, power_dbm)(0);
}

} // namespace testsupport
