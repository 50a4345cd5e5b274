// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/rl/ddpg.hpp"

#include <functional>
#include <optional>
#include <span>

namespace dualband {

/// One lower-level decision inside an upper window. mu_base_g0/g1 are
/// the deterministic lower-policy outputs at collection time for both
/// candidate goals, which later importance computations evaluate.
struct LowerStep {
    arma::vec state; ///< bare features (no goal)
    double goal = 0.0;
    arma::vec action;
    arma::vec mu_base_g0;
    arma::vec mu_base_g1;
    double reward = 0.0; ///< scaled environment reward
};

/// Aggregated upper-level replay record. steps (the window the goal
/// governed) is truncated to min(M_upper, M_RF) entries; reward
/// averages the full window over M_upper per the period-mean
/// definition. The network input (agg_input) is the aggregate of the
/// *preceding* window — the information available when the goal was
/// chosen. Conditioning on the governed window itself would let the
/// critic read the goal off the band-flag features and zero the policy
/// gradient through the goal input.
struct UpperTransition {
    std::vector<LowerStep> steps;
    arma::vec terminal_state;
    double reward = 0.0;
    double stored_goal = 0.0; ///< the upper action (relabeled when enabled)
    arma::vec agg_input;      ///< aggregate of the preceding window
    arma::vec next_agg_input; ///< aggregate of the governed window
    bool has_next = false;
};

/// Fixed-length upper input: the last agg_len states concatenated;
/// shorter windows repeat their final state.
arma::vec aggregate_input(std::span<const LowerStep> steps, int agg_len);

UpperTransition aggregate_upper(std::span<const LowerStep> window, int m_upper, int m_rf,
                                const arma::vec& terminal_state);

using PolicyFn = std::function<arma::vec(const arma::vec& state, double goal)>;

/// Direct importance weight (product of per-step Gaussian density
/// ratios around the deterministic policy outputs), clipped.
double importance_weight(const UpperTransition& tr, const PolicyFn& mu_now,
                         const PolicyFn& mu_base, double noise_std, double clip_low = 1e-3,
                         double clip_high = 1e3);

/// Goal relabeling: argmin over g in {0,1} of (1 - w(g))^2 where w(g)
/// re-evaluates the importance weight with every goal in the window
/// replaced by g. Ties keep the logged goal.
double relabel_goal(const UpperTransition& tr, const PolicyFn& mu_now, const PolicyFn& mu_base,
                    double noise_std, double clip_low = 1e-3, double clip_high = 1e3);

/// Laplace-smoothed estimate of "a fresh decision is possible this
/// slot": one available slot per decision, slots_consumed observed.
struct AvailabilityEstimator {
    long long available = 0;
    long long observed = 0;
    void observe_decision(int slots_consumed) {
        available += 1;
        observed += std::max(1, slots_consumed);
    }
    double q() const { return (available + 1.0) / (observed + 2.0); }
};

/// True = skip this upper round. Non-skip probability is
/// min(1, (m_rf / (2 m_rf - 1)) / q).
bool round_skip(double q, int m_rf, Rng& rng);
double non_skip_probability(double q, int m_rf);

enum class Correction { none, direct_is, relabel };

struct HrlConfig {
    HrlConfig() { upper.actor_activation = OutputActivation::identity; }
    DdpgConfig lower;
    DdpgConfig upper;
    int m_upper = 8;
    Correction correction = Correction::relabel;
    bool round_skip_enabled = true;
    double w_clip_low = 1e-3;
    double w_clip_high = 1e3;
    /// Goal exploration: flip the emitted band goal with this
    /// probability (linear decay across episodes). Additive logit noise
    /// alone dies once the upper actor saturates.
    double goal_epsilon_start = 0.25;
    double goal_epsilon_end = 0.05;
    bool upper_updates = true;        ///< ablation hook
    std::optional<int> pin_goal;      ///< ablation hook
};

/// One (threshold, feedback, chosen action) observation per lower
/// decision, for the beam-training behavior scatter.
struct ThresholdSample {
    int episode = 0;
    int decision = 0;
    int band = 0;
    double feedback = 0.0;
    double tau_low = 0.0;
    double tau_high = 0.0;
    int action_kind = 0;
    double reward_bps = 0.0;
};

struct HrlDiagnostics {
    std::vector<ThresholdSample> thresholds;
};

/// Two-level learner: the upper DDPG emits the band goal over an
/// adaptive period (round skipping), the lower DDPG emits the two
/// beam-training thresholds each decision. The upper level reuses the
/// flat DDPG update path with the goal as its (one-dimensional) action.
class HrlAgent {
public:
    HrlAgent(int feat_dim, int m_rf, const HrlConfig& cfg, std::uint64_t seed);

    EpisodeLog run_episode(LinkEnv& env, int episode, int n_episodes,
                           HrlDiagnostics* diag = nullptr,
                           std::vector<double>* decision_rewards = nullptr);

    int agg_len() const { return agg_len_; }
    const HrlConfig& config() const { return cfg_; }

    // Internals are reachable for tests and ablations.
    DdpgNets lower_nets;
    DdpgNets upper_nets;
    ReplayBuffer<Transition> lower_buffer;
    ReplayBuffer<UpperTransition> upper_buffer;
    AvailabilityEstimator availability;
    double max_feedback = 0.0;

private:
    void upper_store_and_update(UpperTransition tr);
    void upper_updates_once();
    double current_lower_sigma_abs() const { return sigma_frac_ * lower_nets.actor.out_scale; }
    PolicyFn mu_now_fn() const;
    static PolicyFn mu_base_fn(const UpperTransition& tr);

    HrlConfig cfg_;
    int feat_dim_;
    int m_rf_;
    int agg_len_;
    Rng rng_;
    double sigma_frac_ = 0.0;
};

LearningCurve train_hrl(const EnvFactory& make_env, const HrlConfig& cfg, int n_episodes,
                        std::uint64_t seed, HrlDiagnostics* diag = nullptr);

} // namespace dualband
