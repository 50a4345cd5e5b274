// SPDX-License-Identifier: Apache-2.0
#include "dualband/rl/ddpg.hpp"

#include "dualband/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dualband {

DdpgNets DdpgNets::make(int input_dim, int action_dim, const DdpgConfig& cfg,
                        std::uint64_t seed) {
    DdpgNets nets;
    const std::vector<int> actor_dims{input_dim, cfg.hidden_units, cfg.hidden_units, action_dim};
    const std::vector<int> critic_dims{input_dim + action_dim, cfg.hidden_units,
                                       cfg.hidden_units, 1};
    nets.actor = Mlp::make(actor_dims, cfg.actor_activation, 1.0, seed);
    nets.actor.weights.back() *= cfg.actor_out_init_scale;
    if (cfg.actor_activation == OutputActivation::identity)
        for (auto& b : nets.actor.biases.back())
            b = 0.5; // start mid-box
    nets.critic = Mlp::make(critic_dims, OutputActivation::identity, 1.0, seed + 1);
    nets.actor_target = nets.actor;
    nets.critic_target = nets.critic;
    nets.actor_opt = AdamState::make(nets.actor, cfg.actor_lr);
    nets.critic_opt = AdamState::make(nets.critic, cfg.critic_lr);
    return nets;
}

void DdpgNets::set_action_scale(double tau_max) {
    actor.out_scale = tau_max;
    actor_target.out_scale = tau_max;
}

arma::vec act(const Mlp& actor, const arma::vec& state_in, double noise_std, Rng& rng) {
    if (noise_std < 0.0)
        throw DomainError("act: noise_std must be non-negative");
    arma::vec a = mlp_forward(actor, state_in);
    for (auto& v : a)
        v = std::clamp(v + noise_std * rng.normal(), 0.0, actor.out_scale);
    return a;
}

arma::rowvec bellman_targets(const DdpgNets& nets, const BatchView& batch, double gamma) {
    const arma::mat a2 = mlp_forward(nets.actor_target, batch.s2);
    const arma::mat q2 = mlp_forward(nets.critic_target, arma::mat(arma::join_cols(batch.s2, a2)));
    return batch.r + gamma * (batch.boot_w % arma::rowvec(q2.row(0)));
}

double critic_update_batch(DdpgNets& nets, const BatchView& batch, double gamma) {
    const arma::rowvec y = bellman_targets(nets, batch, gamma);
    MlpCache cache;
    const arma::mat q = mlp_forward(nets.critic, arma::mat(arma::join_cols(batch.s, batch.a)), &cache);
    const arma::rowvec err = arma::rowvec(q.row(0)) - y;
    const double n = static_cast<double>(batch.s.n_cols);
    const double loss = arma::dot(err, err) / n;

    const arma::mat upstream = 2.0 / n * arma::mat(err);
    MlpGrads grads = mlp_backward(nets.critic, cache, upstream);
    opt_step(nets.critic_opt, nets.critic, grads);
    return loss;
}

double actor_update_batch(DdpgNets& nets, const arma::mat& states) {
    const double n = static_cast<double>(states.n_cols);
    MlpCache actor_cache;
    const arma::mat a = mlp_forward(nets.actor, states, &actor_cache);
    arma::mat a_boxed = arma::clamp(a, 0.0, nets.actor.out_scale);

    MlpCache critic_cache;
    mlp_forward(nets.critic, arma::mat(arma::join_cols(states, a_boxed)), &critic_cache);
    // Ascend (1/n) sum Q: descend its negation through the critic's
    // action input rows.
    const arma::mat upstream_q(1, states.n_cols, arma::fill::value(-1.0 / n));
    const MlpGrads critic_grads = mlp_backward(nets.critic, critic_cache, upstream_q);
    arma::mat d_action = critic_grads.d_input.rows(states.n_rows,
                                                   states.n_rows + a.n_rows - 1);
    // Unbounded (identity) actors additionally descend a penalty that
    // pulls stray outputs back into the action box.
    if (nets.actor.out_act == OutputActivation::identity)
        d_action += 2.0 / n * (a - a_boxed);

    MlpGrads actor_grads = mlp_backward(nets.actor, actor_cache, d_action);
    double sq = 0.0;
    for (std::size_t l = 0; l < actor_grads.d_weights.size(); ++l) {
        sq += arma::dot(actor_grads.d_weights[l], actor_grads.d_weights[l]);
        sq += arma::dot(actor_grads.d_biases[l], actor_grads.d_biases[l]);
    }
    opt_step(nets.actor_opt, nets.actor, actor_grads);
    return std::sqrt(sq);
}

void soft_update_all(DdpgNets& nets, double eta) {
    soft_update(nets.actor_target, nets.actor, eta);
    soft_update(nets.critic_target, nets.critic, eta);
}

namespace {

BatchView gather(const ReplayBuffer<Transition>& buffer, const std::vector<std::size_t>& idx) {
    BatchView b;
    const std::size_t n = idx.size();
    const Transition& first = buffer[idx.front()];
    b.s.set_size(first.state_in.n_elem, n);
    b.a.set_size(first.action.n_elem, n);
    b.s2.set_size(first.next_state_in.n_elem, n);
    b.r.set_size(n);
    b.boot_w = arma::rowvec(n, arma::fill::ones);
    for (std::size_t j = 0; j < n; ++j) {
        const Transition& t = buffer[idx[j]];
        b.s.col(j) = t.state_in;
        b.a.col(j) = t.action;
        b.s2.col(j) = t.next_state_in;
        b.r[j] = t.reward;
    }
    return b;
}

} // namespace

std::optional<double> critic_update(ReplayBuffer<Transition>& buffer, DdpgNets& nets,
                                    double gamma, int xi, Rng& rng) {
    if (buffer.size() < static_cast<std::size_t>(xi))
        return std::nullopt;
    const auto idx = buffer.sample_indices(xi, rng);
    return critic_update_batch(nets, gather(buffer, idx), gamma);
}

std::optional<double> actor_update(ReplayBuffer<Transition>& buffer, DdpgNets& nets, int xi,
                                   Rng& rng) {
    if (buffer.size() < static_cast<std::size_t>(xi))
        return std::nullopt;
    const auto idx = buffer.sample_indices(xi, rng);
    return actor_update_batch(nets, gather(buffer, idx).s);
}

double noise_std_for_episode(const DdpgConfig& cfg, int episode, int n_episodes) {
    if (n_episodes <= 1)
        return cfg.noise_std_end;
    const double frac = static_cast<double>(episode) / (n_episodes - 1);
    return cfg.noise_std_start + frac * (cfg.noise_std_end - cfg.noise_std_start);
}

LearningCurve train_three_threshold(const EnvFactory& make_env, const DdpgConfig& cfg,
                                    int n_episodes, std::uint64_t seed) {
    Rng rng(seed);
    std::unique_ptr<LinkEnv> probe = make_env(0);
    const int feat_dim = static_cast<int>(probe->features().n_elem);
    const int episode_len = probe->env_config().episode_len_decisions;

    DdpgNets nets = DdpgNets::make(feat_dim, 3, cfg, rng.engine()());
    ReplayBuffer<Transition> buffer(cfg.buffer_capacity);
    double max_feedback = 0.0;

    LearningCurve curve;
    for (int ep = 0; ep < n_episodes; ++ep) {
        std::unique_ptr<LinkEnv> env = ep == 0 ? std::move(probe) : make_env(ep);
        const double sigma = noise_std_for_episode(cfg, ep, n_episodes);
        // The agent acts in the normalized box [0,1]^3; tau_max converts
        // to bps/Hz only when the ladder is evaluated.
        const double tau_max = std::max(cfg.tau_floor, cfg.tau_headroom * max_feedback);

        arma::vec s = env->features();
        EpisodeLog log;
        std::vector<double> decision_rewards;
        int n_data = 0, n_train = 0, n_mm = 0;
        for (int decision = 0; decision < episode_len; ++decision) {
            const arma::vec a = act(nets.actor, s, sigma, rng);
            const Band band = env->state().band;
            const double fb = band == Band::mmwave ? env->state().feedback_mmwave
                                                   : env->state().feedback_sub6;
            const arma::vec thresholds = tau_max * a;
            const EnvAction env_action = thresholds_to_action(
                band, fb, std::span<const double>(thresholds.memptr(), thresholds.n_elem),
                ThresholdScheme::three_threshold);

            n_mm += band == Band::mmwave;
            const StepOutcome out = env->step(env_action);
            if (env_action.kind == ActionKind::analog_training ||
                env_action.kind == ActionKind::digital_training)
                ++n_train;
            if (out.c_flag) {
                ++n_data;
                log.mean_rate_bps += out.rate_bps;
            }
            log.mean_reward_bps += out.reward_bps;
            decision_rewards.push_back(out.reward_bps);

            buffer.push(Transition{s, a, out.reward_bps * 1e-9, out.features});
            critic_update(buffer, nets, cfg.gamma, cfg.minibatch, rng);
            actor_update(buffer, nets, cfg.minibatch, rng);
            soft_update_all(nets, cfg.eta);

            s = out.features;
            max_feedback = std::max(max_feedback, env->running_max_feedback());
            if (out.done)
                break;
        }
        log.mean_reward_bps /= episode_len;
        log.mean_rate_bps = n_data > 0 ? log.mean_rate_bps / n_data : 0.0;
        log.training_fraction = static_cast<double>(n_train) / episode_len;
        log.band_occupancy_mmwave = static_cast<double>(n_mm) / episode_len;
        curve.episodes.push_back(log);
        if (ep == n_episodes - 1)
            curve.last_episode_decision_rewards = std::move(decision_rewards);
    }
    return curve;
}

} // namespace dualband
