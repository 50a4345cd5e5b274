// SPDX-License-Identifier: Apache-2.0
#include "dualband/rl/hrl.hpp"

#include "dualband/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dualband {

arma::vec aggregate_input(std::span<const LowerStep> steps, int agg_len) {
    if (steps.empty())
        throw ShapeError("aggregate_input: empty window");
    const int feat_dim = static_cast<int>(steps.front().state.n_elem);
    arma::vec out(static_cast<arma::uword>(agg_len) * feat_dim);
    for (int t = 0; t < agg_len; ++t) {
        const LowerStep& s = steps[std::min<std::size_t>(t, steps.size() - 1)];
        out.subvec(static_cast<arma::uword>(t) * feat_dim,
                   static_cast<arma::uword>(t + 1) * feat_dim - 1) = s.state;
    }
    return out;
}

UpperTransition aggregate_upper(std::span<const LowerStep> window, int m_upper, int m_rf,
                                const arma::vec& terminal_state) {
    if (window.empty())
        throw ShapeError("aggregate_upper: empty window");
    if (m_upper < 1 || m_rf < 1)
        throw DomainError("aggregate_upper: m_upper and m_rf must be positive");

    UpperTransition tr;
    // Period-mean reward over the full window (fixed 1/M_upper scale).
    for (const LowerStep& s : window)
        tr.reward += s.reward;
    tr.reward /= static_cast<double>(m_upper);

    // Stored sequences keep the most recent min(M_upper, M_RF) steps.
    const std::size_t keep = static_cast<std::size_t>(std::min(m_upper, m_rf));
    const std::size_t start = window.size() > keep ? window.size() - keep : 0;
    tr.steps.assign(window.begin() + start, window.end());
    tr.terminal_state = terminal_state;
    tr.stored_goal = tr.steps.front().goal;
    tr.agg_input = aggregate_input(tr.steps, static_cast<int>(keep));
    return tr;
}

namespace {

double log_density_diff(const arma::vec& action, const arma::vec& mu_now,
                        const arma::vec& mu_base, double noise_std) {
    const double var2 = 2.0 * noise_std * noise_std;
    const arma::vec d_now = action - mu_now;
    const arma::vec d_base = action - mu_base;
    return (arma::dot(d_base, d_base) - arma::dot(d_now, d_now)) / var2;
}

double weight_for_goal(const UpperTransition& tr, const PolicyFn& mu_now,
                       const PolicyFn& mu_base, double noise_std, double clip_low,
                       double clip_high, std::optional<double> forced_goal) {
    double log_w = 0.0;
    for (const LowerStep& s : tr.steps) {
        const double g = forced_goal.value_or(s.goal);
        log_w += log_density_diff(s.action, mu_now(s.state, g), mu_base(s.state, g), noise_std);
    }
    return std::clamp(std::exp(log_w), clip_low, clip_high);
}

} // namespace

double importance_weight(const UpperTransition& tr, const PolicyFn& mu_now,
                         const PolicyFn& mu_base, double noise_std, double clip_low,
                         double clip_high) {
    if (noise_std <= 0.0)
        throw DomainError("importance_weight: needs a positive exploration noise std");
    return weight_for_goal(tr, mu_now, mu_base, noise_std, clip_low, clip_high, std::nullopt);
}

double relabel_goal(const UpperTransition& tr, const PolicyFn& mu_now, const PolicyFn& mu_base,
                    double noise_std, double clip_low, double clip_high) {
    if (noise_std <= 0.0)
        throw DomainError("relabel_goal: needs a positive exploration noise std");
    // Exhaustive over the two candidates; ties keep the logged goal.
    const double logged = std::round(tr.stored_goal);
    double best_goal = logged;
    double best_obj = std::numeric_limits<double>::infinity();
    for (const double g : {logged, 1.0 - logged}) {
        const double w = weight_for_goal(tr, mu_now, mu_base, noise_std, clip_low, clip_high, g);
        const double obj = (1.0 - w) * (1.0 - w);
        if (obj < best_obj) {
            best_obj = obj;
            best_goal = g;
        }
    }
    return best_goal;
}

double non_skip_probability(double q, int m_rf) {
    if (q <= 0.0 || q > 1.0)
        throw DomainError("non_skip_probability: q must be in (0, 1]");
    if (m_rf < 1)
        throw DomainError("non_skip_probability: m_rf must be positive");
    const double ratio = static_cast<double>(m_rf) / (2.0 * m_rf - 1.0);
    return std::min(1.0, ratio / q);
}

bool round_skip(double q, int m_rf, Rng& rng) {
    return !(rng.uniform() < non_skip_probability(q, m_rf));
}

HrlAgent::HrlAgent(int feat_dim, int m_rf, const HrlConfig& cfg, std::uint64_t seed)
    : lower_nets(DdpgNets::make(feat_dim + 1, 2, cfg.lower, seed ^ 0x1111)),
      upper_nets(DdpgNets::make(std::min(cfg.m_upper, m_rf) * feat_dim, 1, cfg.upper,
                                seed ^ 0x2222)),
      lower_buffer(cfg.lower.buffer_capacity),
      upper_buffer(cfg.upper.buffer_capacity),
      cfg_(cfg),
      feat_dim_(feat_dim),
      m_rf_(m_rf),
      agg_len_(std::min(cfg.m_upper, m_rf)),
      rng_(seed) {
    if (cfg.m_upper < 1)
        throw ConfigError("HrlAgent: m_upper must be positive");
    // The goal logit lives in [0, 1]; keep the upper action box fixed.
    upper_nets.set_action_scale(1.0);
}

PolicyFn HrlAgent::mu_now_fn() const {
    return [this](const arma::vec& s, double g) {
        return mlp_forward(lower_nets.actor, arma::vec(arma::join_cols(s, arma::vec{g})));
    };
}

PolicyFn HrlAgent::mu_base_fn(const UpperTransition& tr) {
    // Logged base-policy outputs, matched to the step by state identity.
    return [&tr](const arma::vec& s, double g) -> arma::vec {
        for (const LowerStep& step : tr.steps)
            if (step.state.n_elem == s.n_elem &&
                arma::approx_equal(step.state, s, "absdiff", 0.0))
                return g < 0.5 ? step.mu_base_g0 : step.mu_base_g1;
        throw DomainError("UpperTransition: state not found in logged window");
    };
}

void HrlAgent::upper_updates_once() {
    const int xi = cfg_.upper.minibatch;
    if (upper_buffer.size() < static_cast<std::size_t>(xi))
        return;
    const auto idx = upper_buffer.sample_indices(xi, rng_);
    BatchView batch;
    batch.s.set_size(upper_nets.actor.input_dim(), xi);
    batch.a.set_size(1, xi);
    batch.s2.set_size(upper_nets.actor.input_dim(), xi);
    batch.r.set_size(xi);
    batch.boot_w = arma::rowvec(xi, arma::fill::ones);

    const double sigma = std::max(current_lower_sigma_abs(), 1e-8);
    for (int j = 0; j < xi; ++j) {
        const UpperTransition& tr = upper_buffer[idx[j]];
        batch.s.col(j) = tr.agg_input;
        batch.a(0, j) = tr.stored_goal;
        batch.s2.col(j) = tr.next_agg_input;
        batch.r[j] = tr.reward;
        if (cfg_.correction == Correction::direct_is)
            batch.boot_w[j] = importance_weight(tr, mu_now_fn(), mu_base_fn(tr), sigma,
                                                cfg_.w_clip_low, cfg_.w_clip_high);
    }
    critic_update_batch(upper_nets, batch, cfg_.upper.gamma);
    actor_update_batch(upper_nets, batch.s);
    soft_update_all(upper_nets, cfg_.upper.eta);
}

void HrlAgent::upper_store_and_update(UpperTransition tr) {
    if (cfg_.correction == Correction::relabel) {
        const double sigma = std::max(current_lower_sigma_abs(), 1e-8);
        const double relabeled = relabel_goal(tr, mu_now_fn(), mu_base_fn(tr), sigma,
                                              cfg_.w_clip_low, cfg_.w_clip_high);
        tr.stored_goal = relabeled;
        for (LowerStep& s : tr.steps)
            s.goal = relabeled;
    }
    upper_buffer.push(std::move(tr));
    upper_updates_once();
}

EpisodeLog HrlAgent::run_episode(LinkEnv& env, int episode, int n_episodes,
                                 HrlDiagnostics* diag, std::vector<double>* decision_rewards) {
    const int episode_len = env.env_config().episode_len_decisions;
    sigma_frac_ = noise_std_for_episode(cfg_.lower, episode, n_episodes);
    const double goal_eps =
        n_episodes <= 1 ? cfg_.goal_epsilon_end
                        : cfg_.goal_epsilon_start +
                              static_cast<double>(episode) / (n_episodes - 1) *
                                  (cfg_.goal_epsilon_end - cfg_.goal_epsilon_start);
    // The lower agent acts in the normalized box [0,1]^2; tau_max
    // converts to bps/Hz when the ladder is evaluated.
    const double tau_max =
        std::max(cfg_.lower.tau_floor, cfg_.lower.tau_headroom * max_feedback);

    double goal = cfg_.pin_goal
                      ? static_cast<double>(*cfg_.pin_goal)
                      : (env.state().band == Band::mmwave ? 1.0 : 0.0);
    // Align the band with the initial goal before the first decision.
    if ((goal > 0.5) != (env.state().band == Band::mmwave))
        env.step(EnvAction{ActionKind::switch_band});
    std::vector<LowerStep> window;
    std::optional<Transition> pending_lower;
    // Aggregate of the previous window: the upper decision context.
    arma::vec context;
    bool have_context = false;

    EpisodeLog log;
    int n_data = 0, n_train = 0, n_mm = 0;
    for (int decision = 0; decision < episode_len; ++decision) {
        if (decision > 0 && decision % cfg_.m_upper == 0 && !window.empty() &&
            cfg_.upper_updates) {
            const bool skip =
                cfg_.round_skip_enabled && round_skip(availability.q(), m_rf_, rng_);
            if (!skip) {
                UpperTransition closed = aggregate_upper(window, cfg_.m_upper, m_rf_,
                                                         env.features());
                window.clear();
                if (have_context) {
                    UpperTransition tr;
                    tr.steps = closed.steps;
                    tr.terminal_state = closed.terminal_state;
                    tr.reward = closed.reward;
                    tr.stored_goal = goal;
                    tr.agg_input = context;
                    tr.next_agg_input = closed.agg_input;
                    tr.has_next = true;
                    upper_store_and_update(std::move(tr));
                }
                context = closed.agg_input;
                have_context = true;

                // Emit the next goal from the fresh context.
                double next_goal = goal;
                if (cfg_.pin_goal) {
                    next_goal = static_cast<double>(*cfg_.pin_goal);
                } else {
                    double logit = mlp_forward(upper_nets.actor, context)[0];
                    logit += sigma_frac_ * rng_.normal();
                    next_goal = logit > 0.5 ? 1.0 : 0.0;
                    if (rng_.bernoulli(goal_eps))
                        next_goal = 1.0 - next_goal;
                }
                const bool want_mm = next_goal > 0.5;
                if (want_mm != (env.state().band == Band::mmwave))
                    env.step(EnvAction{ActionKind::switch_band});
                goal = next_goal;
            }
        }

        const arma::vec s = env.features();
        const arma::vec input = arma::join_cols(s, arma::vec{goal});
        if (pending_lower) {
            pending_lower->next_state_in = input;
            lower_buffer.push(std::move(*pending_lower));
            pending_lower.reset();
        }

        const arma::vec a = act(lower_nets.actor, input, current_lower_sigma_abs(), rng_);
        const Band band = env.state().band;
        const double fb = band == Band::mmwave ? env.state().feedback_mmwave
                                               : env.state().feedback_sub6;
        const arma::vec thresholds = tau_max * a;
        const EnvAction env_action = thresholds_to_action(
            band, fb, std::span<const double>(thresholds.memptr(), thresholds.n_elem),
            ThresholdScheme::hrl_lower);

        n_mm += band == Band::mmwave;
        const StepOutcome out = env.step(env_action);
        availability.observe_decision(out.slots_consumed);
        if (env_action.kind == ActionKind::analog_training ||
            env_action.kind == ActionKind::digital_training)
            ++n_train;
        if (out.c_flag) {
            ++n_data;
            log.mean_rate_bps += out.rate_bps;
        }
        log.mean_reward_bps += out.reward_bps;
        if (decision_rewards)
            decision_rewards->push_back(out.reward_bps);
        // Intrinsic lower reward is the environment step reward (both are
        // c * R); scale to Gbps for the networks.
        const double r = out.reward_bps * 1e-9;

        if (diag) {
            ThresholdSample ts;
            ts.episode = episode;
            ts.decision = decision;
            ts.band = static_cast<int>(band);
            ts.feedback = fb;
            ts.tau_low = std::min(thresholds[0], thresholds[1]);
            ts.tau_high = std::max(thresholds[0], thresholds[1]);
            ts.action_kind = static_cast<int>(env_action.kind);
            ts.reward_bps = out.reward_bps;
            diag->thresholds.push_back(ts);
        }

        LowerStep step;
        step.state = s;
        step.goal = goal;
        step.action = a;
        step.mu_base_g0 = mlp_forward(lower_nets.actor, arma::vec(arma::join_cols(s, arma::vec{0.0})));
        step.mu_base_g1 = mlp_forward(lower_nets.actor, arma::vec(arma::join_cols(s, arma::vec{1.0})));
        step.reward = r;
        window.push_back(std::move(step));

        pending_lower = Transition{input, a, r, arma::vec{}};

        critic_update(lower_buffer, lower_nets, cfg_.lower.gamma, cfg_.lower.minibatch, rng_);
        actor_update(lower_buffer, lower_nets, cfg_.lower.minibatch, rng_);
        soft_update_all(lower_nets, cfg_.lower.eta);

        max_feedback = std::max(max_feedback, env.running_max_feedback());
        if (out.done)
            break;
    }

    if (pending_lower) {
        pending_lower->next_state_in = arma::join_cols(env.features(), arma::vec{goal});
        lower_buffer.push(std::move(*pending_lower));
    }
    if (!window.empty() && cfg_.upper_updates && have_context) {
        // Trailing partial window at the episode boundary.
        UpperTransition closed = aggregate_upper(window, cfg_.m_upper, m_rf_, env.features());
        UpperTransition tr;
        tr.steps = closed.steps;
        tr.terminal_state = closed.terminal_state;
        tr.reward = closed.reward;
        tr.stored_goal = goal;
        tr.agg_input = context;
        tr.next_agg_input = closed.agg_input;
        tr.has_next = true;
        upper_store_and_update(std::move(tr));
    }

    log.mean_reward_bps /= episode_len;
    log.mean_rate_bps = n_data > 0 ? log.mean_rate_bps / n_data : 0.0;
    log.training_fraction = static_cast<double>(n_train) / episode_len;
    log.band_occupancy_mmwave = static_cast<double>(n_mm) / episode_len;
    return log;
}

LearningCurve train_hrl(const EnvFactory& make_env, const HrlConfig& cfg, int n_episodes,
                        std::uint64_t seed, HrlDiagnostics* diag) {
    std::unique_ptr<LinkEnv> probe = make_env(0);
    const int feat_dim = static_cast<int>(probe->features().n_elem);
    HrlAgent agent(feat_dim, probe->m_rf(), cfg, seed);

    LearningCurve curve;
    for (int ep = 0; ep < n_episodes; ++ep) {
        std::unique_ptr<LinkEnv> env = ep == 0 ? std::move(probe) : make_env(ep);
        std::vector<double> rewards;
        const bool last = ep == n_episodes - 1;
        curve.episodes.push_back(
            agent.run_episode(*env, ep, n_episodes, diag, last ? &rewards : nullptr));
        if (last)
            curve.last_episode_decision_rewards = std::move(rewards);
    }
    return curve;
}

} // namespace dualband
