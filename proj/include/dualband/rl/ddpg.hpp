// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/env/link_env.hpp"
#include "dualband/nn/adam.hpp"
#include "dualband/nn/mlp.hpp"
#include "dualband/rl/replay.hpp"

#include <armadillo>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace dualband {

/// One lower-level experience. For goal-conditioned agents the goal is
/// appended to the state vector (state_in = [features; g]); flat agents
/// store the bare features.
struct Transition {
    arma::vec state_in;
    arma::vec action;
    double reward = 0.0;
    arma::vec next_state_in;
};

struct DdpgConfig {
    double gamma = 0.99;
    int minibatch = 64;
    int buffer_capacity = 100000;
    double eta = 0.005;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double noise_std_start = 0.2;
    double noise_std_end = 0.02;
    int hidden_units = 64;
    /// Action range is tau_headroom * (largest feedback seen so far),
    /// floored at tau_floor, refreshed each episode.
    double tau_headroom = 1.2;
    double tau_floor = 1.0;
    /// Scales the actor's output-layer init. Small values keep the
    /// squashed output responsive early instead of saturating.
    double actor_out_init_scale = 1.0;
    /// Actor output nonlinearity. sigmoid squashes into the box;
    /// identity stays linear (clipped when acting, box-penalized in the
    /// update) and cannot saturate.
    OutputActivation actor_activation = OutputActivation::sigmoid;
};

/// Online/target actor-critic quartet with their optimizers. The critic
/// consumes [state_in; action]; the actor emits actions in
/// [0, actor.out_scale] via a sigmoid output.
struct DdpgNets {
    Mlp actor, actor_target;
    Mlp critic, critic_target;
    AdamState actor_opt, critic_opt;

    static DdpgNets make(int input_dim, int action_dim, const DdpgConfig& cfg,
                         std::uint64_t seed);
    void set_action_scale(double tau_max);
};

/// Actor output plus iid Gaussian exploration noise per coordinate,
/// clipped to the action box [0, actor.out_scale].
arma::vec act(const Mlp& actor, const arma::vec& state_in, double noise_std, Rng& rng);

/// Minibatch view used by both hierarchy levels. boot_w scales the
/// bootstrap term of the Bellman target per sample (all-ones when no
/// off-policy correction applies).
struct BatchView {
    arma::mat s;       ///< input_dim x n
    arma::mat a;       ///< action_dim x n
    arma::rowvec r;    ///< 1 x n
    arma::mat s2;      ///< input_dim x n
    arma::rowvec boot_w;
};

/// r + gamma * boot_w .* Q_target(s2, actor_target(s2)). Target networks
/// only; the online networks never enter the target.
arma::rowvec bellman_targets(const DdpgNets& nets, const BatchView& batch, double gamma);

/// One optimizer step on the mean squared Bellman error; returns the
/// pre-step loss.
double critic_update_batch(DdpgNets& nets, const BatchView& batch, double gamma);

/// Deterministic policy-gradient ascent step through the critic's action
/// input; returns the actor gradient norm.
double actor_update_batch(DdpgNets& nets, const arma::mat& states);

void soft_update_all(DdpgNets& nets, double eta);

/// Buffer-level wrappers: sample a minibatch of xi uniformly; a buffer
/// smaller than xi is a skip (nullopt), not an error.
std::optional<double> critic_update(ReplayBuffer<Transition>& buffer, DdpgNets& nets,
                                    double gamma, int xi, Rng& rng);
std::optional<double> actor_update(ReplayBuffer<Transition>& buffer, DdpgNets& nets, int xi,
                                   Rng& rng);

/// Per-episode aggregates of one training run.
struct EpisodeLog {
    double mean_reward_bps = 0.0;  ///< episode return / episode_len_decisions
    double mean_rate_bps = 0.0;    ///< mean rate over data decisions
    double training_fraction = 0.0;
    double band_occupancy_mmwave = 0.0;
};

struct LearningCurve {
    std::vector<EpisodeLog> episodes;
    /// Per-decision rewards of the final episode (for last-N-decision
    /// convergence summaries).
    std::vector<double> last_episode_decision_rewards;
};

/// Fresh environment per episode (independent channel instances).
using EnvFactory = std::function<std::unique_ptr<LinkEnv>(int episode)>;

/// Flat DRL baseline: three continuous thresholds, action masking at
/// sub-6, one critic/actor update per decision.
LearningCurve train_three_threshold(const EnvFactory& make_env, const DdpgConfig& cfg,
                                    int n_episodes, std::uint64_t seed);

/// Linear exploration schedule over episodes.
double noise_std_for_episode(const DdpgConfig& cfg, int episode, int n_episodes);

} // namespace dualband
