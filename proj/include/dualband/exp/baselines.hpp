// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/env/link_env.hpp"
#include "dualband/rl/ddpg.hpp"

namespace dualband {

/// A fully specified data-transmission configuration and its rate at
/// one slot.
struct OraclePick {
    Band band = Band::mmwave;
    double rate_bps = 0.0;
    // mmWave configuration
    SweepResult sweep;
    std::vector<arma::cx_mat> mm_f_bb, mm_w_bb;
    // sub-6 configuration
    std::vector<arma::cx_mat> s6_f_bb, s6_w_bb;
    std::vector<int> pmi_index;
};

/// Best mmWave data configuration at `slot`: noiseless greedy sweep,
/// then the better of (a) the analog-only identity digital stage and
/// (b) the pseudo-inverse digital stage computed from the perfect
/// effective channel. Zero overhead, perfect channel knowledge.
OraclePick best_mmwave_config(const LinkEnv& env, int slot);

/// Best sub-6 data configuration at `slot`: per subcarrier the
/// rate-maximizing PMI entry with its zero-forcing combiner from the
/// true channel (ties toward the lowest index).
OraclePick best_sub6_config(const LinkEnv& env, int slot);

/// Perfect-knowledge upper bound: the better band's configuration.
OraclePick genie_pick(const LinkEnv& env, int slot);

/// Genie restricted to mmWave.
OraclePick greedy_pick(const LinkEnv& env, int slot);

/// Runs an oracle policy for n_episodes (data transmission every
/// decision, beams recomputed per decision at zero cost).
LearningCurve run_oracle(const EnvFactory& make_env, int n_episodes, bool restrict_mmwave);

} // namespace dualband
