// SPDX-License-Identifier: Apache-2.0
#include "dualband/exp/baselines.hpp"

#include "dualband/errors.hpp"

#include <algorithm>

namespace dualband {

OraclePick best_mmwave_config(const LinkEnv& env, int slot) {
    const MmWaveLinkConfig& cfg = env.mmwave_config();
    const auto frame = env.frame_at(Band::mmwave, slot);
    const double snr = env.snr_at(Band::mmwave, slot);
    const double g = env.trace(Band::mmwave).large_scale_gain[slot];
    const int n_s = cfg.n_s;
    const int n_k = cfg.n_subcarriers;

    OraclePick pick;
    pick.band = Band::mmwave;
    // Perfect estimation: snr_eff -> snr in the sweep metric.
    pick.sweep = analog_sweep(frame, env.tx_codebook(), env.rx_codebook(), cfg.n_bs_rf,
                              cfg.n_ue_rf, snr);
    const arma::cx_mat f_sel = pick.sweep.f_rf.cols(0, n_s - 1);
    const arma::cx_mat w_sel = pick.sweep.w_rf.cols(0, n_s - 1);

    // Candidate (a): analog-only, identity digital stage.
    const std::vector<arma::cx_mat> ident(n_k, arma::cx_mat(arma::eye<arma::cx_mat>(n_s, n_s)));
    const auto se_ident = spectral_efficiency_mmwave(frame, f_sel, ident, w_sel, ident,
                                                     env.tx_power_watt(), g,
                                                     env.noise_variance(Band::mmwave));
    const double rate_ident = data_rate_bps(cfg.bandwidth_hz, se_ident);

    // Candidate (b): pseudo-inverse digital stage from the perfect
    // effective channel (no estimation noise, no quantization).
    double rate_digital = -1.0;
    std::vector<arma::cx_mat> f_bb, w_bb;
    try {
        f_bb.reserve(n_k);
        w_bb.reserve(n_k);
        for (int k = 0; k < n_k; ++k) {
            const arma::cx_mat heff = w_sel.t() * frame[k] * f_sel;
            w_bb.push_back(ls_combiner(heff));
            f_bb.push_back(mmse_precoder(heff, f_sel, n_s));
        }
        const auto se = spectral_efficiency_mmwave(frame, f_sel, f_bb, w_sel, w_bb,
                                                   env.tx_power_watt(), g,
                                                   env.noise_variance(Band::mmwave));
        rate_digital = data_rate_bps(cfg.bandwidth_hz, se);
    } catch (const SingularityError&) {
        rate_digital = -1.0;
    }

    if (rate_digital > rate_ident) {
        pick.rate_bps = rate_digital;
        pick.mm_f_bb = std::move(f_bb);
        pick.mm_w_bb = std::move(w_bb);
    } else {
        pick.rate_bps = rate_ident;
        pick.mm_f_bb = ident;
        pick.mm_w_bb = ident;
    }
    return pick;
}

OraclePick best_sub6_config(const LinkEnv& env, int slot) {
    const Sub6LinkConfig& cfg = env.sub6_config();
    const auto frame = env.frame_at(Band::sub6, slot);
    const double g = env.trace(Band::sub6).large_scale_gain[slot];
    const PmiCodebook& cb = env.pmi();
    const int n_k = cfg.n_subcarriers;

    OraclePick pick;
    pick.band = Band::sub6;
    pick.s6_f_bb.resize(n_k);
    pick.s6_w_bb.resize(n_k);
    pick.pmi_index.assign(n_k, 0);

    std::vector<double> best_se(n_k, -1.0);
    for (int k = 0; k < n_k; ++k) {
        for (int i = 0; i < cb.size(); ++i) {
            arma::cx_mat w;
            try {
                w = zf_combiner(frame[k] * cb.precoders[i]);
            } catch (const SingularityError&) {
                continue;
            }
            const std::vector<arma::cx_mat> f1{cb.precoders[i]};
            const std::vector<arma::cx_mat> w1{w};
            const std::vector<arma::cx_mat> h1{frame[k]};
            const double se = spectral_efficiency_sub6(h1, f1, w1, env.tx_power_watt(), g,
                                                       env.noise_variance(Band::sub6))[0];
            if (se > best_se[k]) {
                best_se[k] = se;
                pick.pmi_index[k] = i;
                pick.s6_f_bb[k] = cb.precoders[i];
                pick.s6_w_bb[k] = w;
            }
        }
        if (best_se[k] < 0.0) {
            best_se[k] = 0.0;
            pick.s6_f_bb[k] = cb.precoders.front();
            pick.s6_w_bb[k] = arma::eye<arma::cx_mat>(cfg.n_ue, cfg.n_s);
        }
    }
    pick.rate_bps = data_rate_bps(cfg.bandwidth_hz, best_se);
    return pick;
}

OraclePick genie_pick(const LinkEnv& env, int slot) {
    OraclePick mm = best_mmwave_config(env, slot);
    OraclePick s6 = best_sub6_config(env, slot);
    return mm.rate_bps >= s6.rate_bps ? std::move(mm) : std::move(s6);
}

OraclePick greedy_pick(const LinkEnv& env, int slot) { return best_mmwave_config(env, slot); }

LearningCurve run_oracle(const EnvFactory& make_env, int n_episodes, bool restrict_mmwave) {
    LearningCurve curve;
    for (int ep = 0; ep < n_episodes; ++ep) {
        std::unique_ptr<LinkEnv> env = make_env(ep);
        const int episode_len = env->env_config().episode_len_decisions;
        const int n_slots = env->trace(Band::mmwave).n_slots;
        EpisodeLog log;
        std::vector<double> decision_rewards;
        int n_data = 0, n_mm = 0;
        for (int decision = 0; decision < episode_len && !env->done(); ++decision) {
            // The data span's rate is evaluated at its last slot; the
            // oracle optimizes the same slot.
            const int slot = std::min(env->cursor() + env->env_config().m_dt - 1, n_slots - 1);
            OraclePick pick = restrict_mmwave ? greedy_pick(*env, slot) : genie_pick(*env, slot);
            env->oracle_set_band(pick.band);
            if (pick.band == Band::mmwave)
                env->oracle_inject_mmwave(pick.sweep, std::move(pick.mm_f_bb),
                                          std::move(pick.mm_w_bb));
            else
                env->oracle_inject_sub6(std::move(pick.s6_f_bb), std::move(pick.s6_w_bb),
                                        std::move(pick.pmi_index));
            const StepOutcome out = env->step(EnvAction{ActionKind::data_transmission});
            n_mm += pick.band == Band::mmwave;
            if (out.c_flag) {
                ++n_data;
                log.mean_rate_bps += out.rate_bps;
            }
            log.mean_reward_bps += out.reward_bps;
            decision_rewards.push_back(out.reward_bps);
        }
        log.mean_reward_bps /= episode_len;
        log.mean_rate_bps = n_data > 0 ? log.mean_rate_bps / n_data : 0.0;
        log.band_occupancy_mmwave = static_cast<double>(n_mm) / episode_len;
        curve.episodes.push_back(log);
        if (ep == n_episodes - 1)
            curve.last_episode_decision_rewards = std::move(decision_rewards);
    }
    return curve;
}

} // namespace dualband
