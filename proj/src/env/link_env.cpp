// SPDX-License-Identifier: Apache-2.0
#include "dualband/env/link_env.hpp"

#include "dualband/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dualband {

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr double kNoiseTempK = 290.0;

double thermal_noise_watt(double bandwidth_hz, double noise_figure_db) {
    return kBoltzmann * kNoiseTempK * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
}

} // namespace

EnvAction thresholds_to_action(Band band, double feedback, std::span<const double> thresholds,
                               ThresholdScheme scheme) {
    std::vector<double> t(thresholds.begin(), thresholds.end());
    for (double v : t)
        if (!std::isfinite(v))
            throw DomainError("thresholds_to_action: thresholds must be finite");
    std::sort(t.begin(), t.end());

    if (scheme == ThresholdScheme::three_threshold) {
        if (t.size() != 3)
            throw ShapeError("thresholds_to_action: three_threshold needs 3 thresholds");
        if (feedback < t[0])
            return {ActionKind::switch_band};
        if (band == Band::mmwave) {
            if (feedback < t[1])
                return {ActionKind::analog_training};
            if (feedback < t[2])
                return {ActionKind::digital_training};
            return {ActionKind::data_transmission};
        }
        // tau_RF is masked at sub-6.
        if (feedback < t[2])
            return {ActionKind::digital_training};
        return {ActionKind::data_transmission};
    }

    if (t.size() != 2)
        throw ShapeError("thresholds_to_action: hrl_lower needs 2 thresholds");
    if (band == Band::mmwave) {
        if (feedback < t[0])
            return {ActionKind::analog_training};
        if (feedback < t[1])
            return {ActionKind::digital_training};
        return {ActionKind::data_transmission};
    }
    // tau_A is masked at sub-6.
    if (feedback < t[1])
        return {ActionKind::digital_training};
    return {ActionKind::data_transmission};
}

double episode_return(std::span<const StepOutcome> outcomes) {
    double sum = 0.0;
    for (const StepOutcome& o : outcomes)
        sum += o.c_flag * o.rate_bps;
    return sum;
}

double data_rate_bps(double bandwidth_hz, std::span<const double> se) {
    if (se.empty())
        return 0.0;
    const double mean = std::accumulate(se.begin(), se.end(), 0.0) / se.size();
    return bandwidth_hz * mean;
}

arma::vec featurize(const BeamState& state, const FeatureContext& ctx) {
    const int n_pairs = ctx.n_pairs;
    arma::vec f(8 + 2 * n_pairs, arma::fill::zeros);
    int i = 0;
    f[i++] = state.band == Band::mmwave ? 1.0 : 0.0;
    const double denom = std::max(ctx.running_max_feedback, 1e-12);
    f[i++] = std::clamp(state.feedback_mmwave / denom, 0.0, 1.0);
    f[i++] = std::clamp(state.feedback_sub6 / denom, 0.0, 1.0);
    for (int p = 0; p < n_pairs; ++p)
        f[i++] = p < static_cast<int>(state.beam_tx.size())
                     ? static_cast<double>(state.beam_tx[p]) / ctx.nu_bs
                     : 0.0;
    for (int p = 0; p < n_pairs; ++p)
        f[i++] = p < static_cast<int>(state.beam_rx.size())
                     ? static_cast<double>(state.beam_rx[p]) / ctx.nu_ue
                     : 0.0;
    double rvq_mean = 0.0;
    if (!state.rvq_index.empty())
        rvq_mean = std::accumulate(state.rvq_index.begin(), state.rvq_index.end(), 0.0) /
                   state.rvq_index.size();
    f[i++] = rvq_mean / ctx.rvq_entries;
    double pmi_mean = 0.0;
    if (!state.pmi_index.empty())
        pmi_mean = std::accumulate(state.pmi_index.begin(), state.pmi_index.end(), 0.0) /
                   state.pmi_index.size();
    f[i++] = pmi_mean / ctx.nu_pmi;
    f[i++] = std::clamp(static_cast<double>(ctx.slots_since_train_mmwave) / ctx.m_rf, 0.0, 1.0);
    f[i++] = std::clamp(static_cast<double>(ctx.slots_since_train_sub6) / ctx.m_rf, 0.0, 1.0);
    f[i++] = state.mode == 1 ? 1.0 : 0.0;
    return f;
}

LinkEnv::LinkEnv(ChannelTrace mmwave_trace, ChannelTrace sub6_trace, MmWaveLinkConfig mm_cfg,
                 Sub6LinkConfig s6_cfg, EnvConfig env_cfg, double tx_power_watt,
                 std::uint64_t seed)
    : mm_trace_(std::move(mmwave_trace)),
      s6_trace_(std::move(sub6_trace)),
      mm_cfg_(mm_cfg),
      s6_cfg_(s6_cfg),
      env_cfg_(env_cfg),
      tx_power_watt_(tx_power_watt),
      rng_(seed) {
    if (mm_trace_.n_slots != s6_trace_.n_slots)
        throw ConfigError("LinkEnv: band traces disagree on slot count");
    if (mm_trace_.band != Band::mmwave || s6_trace_.band != Band::sub6)
        throw ConfigError("LinkEnv: traces passed in the wrong band order");
    if (mm_trace_.n_tx != mm_cfg_.n_bs || mm_trace_.n_rx != mm_cfg_.n_ue ||
        mm_trace_.n_subcarriers != mm_cfg_.n_subcarriers)
        throw ConfigError("LinkEnv: mmWave trace dims disagree with config");
    if (s6_trace_.n_tx != s6_cfg_.n_bs || s6_trace_.n_rx != s6_cfg_.n_ue ||
        s6_trace_.n_subcarriers != s6_cfg_.n_subcarriers)
        throw ConfigError("LinkEnv: sub-6 trace dims disagree with config");
    if (mm_cfg_.n_s < 1 || mm_cfg_.n_s > mm_cfg_.n_pairs())
        throw ConfigError("LinkEnv: mmWave streams must be in [1, RF-chain pairs]");
    if (mm_cfg_.codebook_bs() < mm_cfg_.n_bs_rf || mm_cfg_.codebook_ue() < mm_cfg_.n_ue_rf)
        throw ConfigError("LinkEnv: analog codebook smaller than RF chain count");
    if (tx_power_watt_ <= 0.0)
        throw ConfigError("LinkEnv: transmit power must be positive");

    noise_mm_ = thermal_noise_watt(mm_cfg_.bandwidth_hz, mm_cfg_.noise_figure_db);
    noise_s6_ = thermal_noise_watt(s6_cfg_.bandwidth_hz, s6_cfg_.noise_figure_db);
    f_cb_ = dft_codebook(mm_cfg_.n_bs, mm_cfg_.codebook_bs());
    w_cb_ = dft_codebook(mm_cfg_.n_ue, mm_cfg_.codebook_ue());
    pmi_cb_ = pmi_codebook(s6_cfg_.n_bs, s6_cfg_.n_s, s6_cfg_.nu_pmi, s6_cfg_.pmi_oversampling);
    rvq_cb_ = cached_rvq_codebook(mm_cfg_.kappa_rvq, mm_cfg_.n_s, mm_cfg_.n_s,
                                  mm_cfg_.rvq_training, mm_cfg_.rvq_seed);
    m_rf_ = analog_overhead(mm_cfg_.m_ss, mm_cfg_.n_ss, mm_cfg_.codebook_bs(),
                            mm_cfg_.codebook_ue());
    m_bb_ = digital_overhead(mm_cfg_.kappa_rvq, mm_cfg_.kappa_channel);
    m_bb_sub6_ = std::max(1, pmi_overhead(s6_cfg_.nu_pmi, s6_cfg_.kappa_channel));
    if (env_cfg_.stale_horizon_slots < 0)
        env_cfg_.stale_horizon_slots = 2 * m_rf_;
    reset();
}

arma::vec LinkEnv::reset() {
    cursor_ = 0;
    state_ = BeamState{};
    state_.band = env_cfg_.initial_band;
    state_.rvq_index.assign(mm_cfg_.n_subcarriers, 0);
    state_.pmi_index.assign(s6_cfg_.n_subcarriers, 0);
    mm_beams_ = MmBeams{};
    s6_beams_ = Sub6Beams{};
    last_sweep_ = SweepResult{};
    last_train_mm_ = last_train_s6_ = -(1 << 28);
    running_max_feedback_ = 0.0;
    // Cold-start beams: first codebook entries, identity digital stages.
    last_sweep_.f_rf = f_cb_.vectors.cols(0, mm_cfg_.n_pairs() - 1);
    last_sweep_.w_rf = w_cb_.vectors.cols(0, mm_cfg_.n_pairs() - 1);
    for (int p = 0; p < mm_cfg_.n_pairs(); ++p) {
        last_sweep_.tx_index.push_back(p);
        last_sweep_.rx_index.push_back(p);
        last_sweep_.feedback.push_back(0.0);
    }
    state_.beam_tx = last_sweep_.tx_index;
    state_.beam_rx = last_sweep_.rx_index;
    reset_mm_digital_defaults();
    s6_beams_.f_bb.assign(s6_cfg_.n_subcarriers, pmi_cb_.precoders.front());
    s6_beams_.w_bb.assign(s6_cfg_.n_subcarriers,
                          arma::cx_mat(arma::eye<arma::cx_mat>(s6_cfg_.n_ue, s6_cfg_.n_s)));
    return features();
}

void LinkEnv::reset_mm_digital_defaults() {
    const int n_s = mm_cfg_.n_s;
    mm_beams_.f_rf_sel = last_sweep_.f_rf.cols(0, n_s - 1);
    mm_beams_.w_rf_sel = last_sweep_.w_rf.cols(0, n_s - 1);
    mm_beams_.f_bb.assign(mm_cfg_.n_subcarriers,
                          arma::cx_mat(arma::eye<arma::cx_mat>(n_s, n_s)));
    mm_beams_.w_bb.assign(mm_cfg_.n_subcarriers,
                          arma::cx_mat(arma::eye<arma::cx_mat>(n_s, n_s)));
}

double LinkEnv::snr_at(Band b, int slot) const {
    const ChannelTrace& tr = trace(b);
    return tx_power_watt_ * tr.large_scale_gain[slot] / noise_variance(b);
}

std::vector<arma::cx_mat> LinkEnv::frame_at(Band b, int slot) const {
    const ChannelTrace& tr = trace(b);
    std::vector<arma::cx_mat> frame;
    frame.reserve(tr.n_subcarriers);
    for (int k = 0; k < tr.n_subcarriers; ++k)
        frame.push_back(tr.at(k, slot));
    return frame;
}

int LinkEnv::overhead_slots(ActionKind kind) const {
    switch (kind) {
    case ActionKind::switch_band: return 1;
    case ActionKind::analog_training: return m_rf_;
    case ActionKind::digital_training:
        return state_.band == Band::mmwave ? m_bb_ : m_bb_sub6_;
    case ActionKind::data_transmission: return env_cfg_.m_dt;
    }
    return 1;
}

void LinkEnv::note_feedback(double fb) {
    running_max_feedback_ = std::max(running_max_feedback_, fb);
}

double LinkEnv::refresh_feedback_mmwave(int slot) {
    const auto frame = frame_at(Band::mmwave, slot);
    const auto q = mmse_estimation(mm_cfg_.beta_rf, mm_cfg_.zeta_rf, snr_at(Band::mmwave, slot));
    const double fb = se_feedback(frame, w_cb_.beam(state_.beam_rx.front()),
                                  f_cb_.beam(state_.beam_tx.front()), q.snr_eff);
    state_.feedback_mmwave = fb;
    note_feedback(fb);
    return fb;
}

double LinkEnv::refresh_feedback_sub6_true(int slot) {
    const auto frame = frame_at(Band::sub6, slot);
    const double fb = se_feedback_sub6(frame, s6_beams_.f_bb, s6_beams_.w_bb,
                                       snr_at(Band::sub6, slot));
    state_.feedback_sub6 = fb;
    note_feedback(fb);
    return fb;
}

void LinkEnv::do_switch_band(int end_slot) {
    state_.band = state_.band == Band::mmwave ? Band::sub6 : Band::mmwave;
    const int last_train = state_.band == Band::mmwave ? last_train_mm_ : last_train_s6_;
    if (end_slot - last_train > env_cfg_.stale_horizon_slots) {
        // Pessimism on long-unused beams: flag and decay the remembered
        // feedback; the next action in the band refreshes it.
        if (state_.band == Band::mmwave) {
            state_.stale_mmwave = true;
            state_.feedback_mmwave *= env_cfg_.stale_feedback_decay;
        } else {
            state_.stale_sub6 = true;
            state_.feedback_sub6 *= env_cfg_.stale_feedback_decay;
        }
    }
}

void LinkEnv::do_analog_training(int end_slot) {
    const auto frame = frame_at(Band::mmwave, end_slot);
    const double snr = snr_at(Band::mmwave, end_slot);
    const auto q = mmse_estimation(mm_cfg_.beta_rf, mm_cfg_.zeta_rf, snr);
    last_sweep_ = analog_sweep(frame, f_cb_, w_cb_, mm_cfg_.n_bs_rf, mm_cfg_.n_ue_rf, q.snr_eff);
    state_.beam_tx = last_sweep_.tx_index;
    state_.beam_rx = last_sweep_.rx_index;
    // New analog beams invalidate the old digital stage; pairs come out
    // sorted by feedback, so the strongest n_s lead.
    reset_mm_digital_defaults();
    state_.feedback_mmwave = last_sweep_.best_feedback;
    note_feedback(last_sweep_.best_feedback);
    state_.stale_mmwave = false;
    last_train_mm_ = end_slot;
}

void LinkEnv::do_digital_training_mmwave(int end_slot) {
    const auto frame = frame_at(Band::mmwave, end_slot);
    const double snr = snr_at(Band::mmwave, end_slot);
    const auto hbar = estimate_effective_channel(frame, mm_beams_.f_rf_sel, mm_beams_.w_rf_sel,
                                                 mm_cfg_.beta_bb, mm_cfg_.zeta_bb, mm_cfg_.n_bs,
                                                 snr, rng_);
    for (int k = 0; k < mm_cfg_.n_subcarriers; ++k) {
        try {
            mm_beams_.w_bb[k] = ls_combiner(hbar[k]);
            const auto quant = quantize_effective_channel(hbar[k], *rvq_cb_);
            state_.rvq_index[k] = quant.index;
            mm_beams_.f_bb[k] = mmse_precoder(quant.entry, mm_beams_.f_rf_sel, mm_cfg_.n_s);
        } catch (const SingularityError&) {
            // Keep the previous stage on a degenerate estimate.
        }
    }
    refresh_feedback_mmwave(end_slot);
    state_.stale_mmwave = false;
    last_train_mm_ = end_slot;
}

void LinkEnv::do_training_sub6(int end_slot) {
    const auto frame = frame_at(Band::sub6, end_slot);
    const double snr = snr_at(Band::sub6, end_slot);
    const auto csi = csi_with_error(frame, s6_cfg_.beta, s6_cfg_.zeta, s6_cfg_.n_bs, snr, rng_);
    auto sel = pmi_select(csi, pmi_cb_);
    for (int k = 0; k < s6_cfg_.n_subcarriers; ++k) {
        try {
            s6_beams_.w_bb[k] = zf_combiner(csi[k] * sel.f_bb[k]);
            s6_beams_.f_bb[k] = std::move(sel.f_bb[k]);
            state_.pmi_index[k] = sel.index[k];
        } catch (const SingularityError&) {
        }
    }
    const double fb = se_feedback_sub6(csi, s6_beams_.f_bb, s6_beams_.w_bb, snr);
    state_.feedback_sub6 = fb;
    note_feedback(fb);
    state_.stale_sub6 = false;
    last_train_s6_ = end_slot;
}

double LinkEnv::do_data(int end_slot) {
    double rate = 0.0;
    if (state_.band == Band::mmwave) {
        const auto frame = frame_at(Band::mmwave, end_slot);
        const auto se = spectral_efficiency_mmwave(
            frame, mm_beams_.f_rf_sel, mm_beams_.f_bb, mm_beams_.w_rf_sel, mm_beams_.w_bb,
            tx_power_watt_, mm_trace_.large_scale_gain[end_slot], noise_mm_);
        rate = data_rate_bps(mm_cfg_.bandwidth_hz, se);
        refresh_feedback_mmwave(end_slot);
    } else {
        const auto frame = frame_at(Band::sub6, end_slot);
        const auto se = spectral_efficiency_sub6(frame, s6_beams_.f_bb, s6_beams_.w_bb,
                                                 tx_power_watt_,
                                                 s6_trace_.large_scale_gain[end_slot], noise_s6_);
        rate = data_rate_bps(s6_cfg_.bandwidth_hz, se);
        refresh_feedback_sub6_true(end_slot);
    }
    return rate;
}

StepOutcome LinkEnv::step(EnvAction action) {
    StepOutcome out;
    const int n_slots = mm_trace_.n_slots;
    if (cursor_ >= n_slots) {
        out.done = true;
        out.features = features();
        return out;
    }
    if (action.kind == ActionKind::analog_training && state_.band != Band::mmwave)
        throw DomainError("LinkEnv::step: analog_training is invalid at sub-6");

    const int span = overhead_slots(action.kind);
    const int consumed = std::min(span, n_slots - cursor_);
    const int end_slot = cursor_ + consumed - 1;

    switch (action.kind) {
    case ActionKind::switch_band:
        do_switch_band(end_slot);
        state_.mode = 0;
        break;
    case ActionKind::analog_training:
        do_analog_training(end_slot);
        state_.mode = 0;
        break;
    case ActionKind::digital_training:
        if (state_.band == Band::mmwave)
            do_digital_training_mmwave(end_slot);
        else
            do_training_sub6(end_slot);
        state_.mode = 0;
        break;
    case ActionKind::data_transmission:
        out.rate_bps = do_data(end_slot);
        out.c_flag = 1;
        state_.mode = 1;
        break;
    }

    cursor_ += consumed;
    state_.slots_remaining_in_mode = 0;
    out.reward_bps = out.c_flag * out.rate_bps;
    out.slots_consumed = consumed;
    out.done = cursor_ >= n_slots;
    out.features = features();
    return out;
}

arma::vec LinkEnv::features() const {
    FeatureContext ctx;
    ctx.nu_bs = f_cb_.size();
    ctx.nu_ue = w_cb_.size();
    ctx.n_pairs = mm_cfg_.n_pairs();
    ctx.rvq_entries = 1 << mm_cfg_.kappa_rvq;
    ctx.nu_pmi = s6_cfg_.nu_pmi;
    ctx.m_rf = m_rf_;
    ctx.slots_since_train_mmwave = std::max(0, cursor_ - std::max(last_train_mm_, -1));
    ctx.slots_since_train_sub6 = std::max(0, cursor_ - std::max(last_train_s6_, -1));
    ctx.running_max_feedback = running_max_feedback_;
    return featurize(state_, ctx);
}

void LinkEnv::oracle_inject_mmwave(const SweepResult& sweep, std::vector<arma::cx_mat> f_bb,
                                   std::vector<arma::cx_mat> w_bb) {
    last_sweep_ = sweep;
    state_.beam_tx = sweep.tx_index;
    state_.beam_rx = sweep.rx_index;
    mm_beams_.f_rf_sel = sweep.f_rf.cols(0, mm_cfg_.n_s - 1);
    mm_beams_.w_rf_sel = sweep.w_rf.cols(0, mm_cfg_.n_s - 1);
    mm_beams_.f_bb = std::move(f_bb);
    mm_beams_.w_bb = std::move(w_bb);
    mm_beams_.has_analog = true;
}

void LinkEnv::oracle_inject_sub6(std::vector<arma::cx_mat> f_bb, std::vector<arma::cx_mat> w_bb,
                                 std::vector<int> pmi_index) {
    s6_beams_.f_bb = std::move(f_bb);
    s6_beams_.w_bb = std::move(w_bb);
    state_.pmi_index = std::move(pmi_index);
    s6_beams_.has_training = true;
}

} // namespace dualband
