// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/band.hpp"
#include "dualband/channel/model.hpp"
#include "dualband/mmwave/bm.hpp"
#include "dualband/mmwave/rvq.hpp"
#include "dualband/sub6/bm.hpp"

#include <armadillo>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace dualband {

enum class ActionKind : int {
    switch_band = 0,
    analog_training = 1,  ///< mmWave only
    digital_training = 2, ///< effective-channel feedback (mmWave) or PMI (sub-6)
    data_transmission = 3,
};

struct EnvAction {
    ActionKind kind = ActionKind::data_transmission;
};

/// Threshold-ladder schemes; thresholds are sorted ascending before
/// bucketing so crossed actor outputs stay well defined.
enum class ThresholdScheme { three_threshold, hrl_lower };

/// Maps the operating band's latest spectral-efficiency feedback and the
/// learned thresholds onto a discrete environment action. analog_training
/// is masked (never produced) at sub-6.
EnvAction thresholds_to_action(Band band, double feedback_bps_hz,
                               std::span<const double> thresholds, ThresholdScheme scheme);

struct BeamState {
    Band band = Band::sub6;
    int mode = 0; ///< 0 training, 1 data (class of the latest action)
    std::vector<int> beam_tx; ///< mmWave codebook index per RF-chain pair
    std::vector<int> beam_rx;
    double feedback_mmwave = 0.0; ///< S_UE, bps/Hz
    double feedback_sub6 = 0.0;   ///< underline S_UE, bps/Hz
    std::vector<int> rvq_index; ///< per mmWave subcarrier
    std::vector<int> pmi_index; ///< per sub-6 subcarrier
    int slots_remaining_in_mode = 0;
    bool stale_mmwave = false;
    bool stale_sub6 = false;
};

struct StepOutcome {
    double reward_bps = 0.0; ///< c_flag * rate exactly
    double rate_bps = 0.0;
    int c_flag = 0;
    int slots_consumed = 0;
    arma::vec features;
    bool done = false;
};

/// Sum over outcomes of c * R (the episode objective).
double episode_return(std::span<const StepOutcome> outcomes);

/// Rate carried by one band: bandwidth * mean per-subcarrier SE.
double data_rate_bps(double bandwidth_hz, std::span<const double> se_per_subcarrier);

struct MmWaveLinkConfig {
    int n_bs = 8;
    int n_ue = 4;
    int n_bs_rf = 2;
    int n_ue_rf = 2;
    int n_s = 2;
    int n_subcarriers = 16;
    double bandwidth_hz = 850e6;
    int m_ss = 1;
    int n_ss = 4;
    int kappa_rvq = 4;
    int kappa_channel = 1;
    double beta_rf = 0.1, zeta_rf = 10.0;
    double beta_bb = 0.1, zeta_bb = 10.0;
    int nu_bs = -1; ///< analog codebook size, -1 -> n_bs
    int nu_ue = -1;
    double noise_figure_db = 7.0;
    int rvq_training = 4096;
    std::uint64_t rvq_seed = 71;

    int codebook_bs() const { return nu_bs < 0 ? n_bs : nu_bs; }
    int codebook_ue() const { return nu_ue < 0 ? n_ue : nu_ue; }
    int n_pairs() const { return std::min(n_bs_rf, n_ue_rf); }
};

struct Sub6LinkConfig {
    int n_bs = 4;
    int n_ue = 4;
    int n_s = 2;
    int n_subcarriers = 8;
    double bandwidth_hz = 150e6;
    int nu_pmi = 16;
    int kappa_channel = 1;
    double beta = 0.1, zeta = 10.0;
    int pmi_oversampling = 4;
    double noise_figure_db = 7.0;
};

struct EnvConfig {
    int m_dt = 10;
    int episode_len_decisions = 200;
    int stale_horizon_slots = -1; ///< -1 -> 2 * M_RF
    Band initial_band = Band::sub6;
    double stale_feedback_decay = 0.5;
};

/// Inputs to the normative feature layout (exposed so tests can build
/// feature vectors for hand-constructed states).
struct FeatureContext {
    int nu_bs = 1;
    int nu_ue = 1;
    int n_pairs = 1;
    int rvq_entries = 2;
    int nu_pmi = 1;
    int m_rf = 1;
    int slots_since_train_mmwave = 0;
    int slots_since_train_sub6 = 0;
    double running_max_feedback = 0.0;
};

/// Feature layout (all entries in [0,1]; band/mode flags in {0,1}):
///   [0]                    band flag
///   [1]                    S_UE / running max
///   [2]                    sub-6 S_UE / running max
///   [3 .. 3+P)             tx beam index / nu_bs, per RF-chain pair
///   [3+P .. 3+2P)          rx beam index / nu_ue
///   [3+2P]                 mean rvq index / 2^kappa
///   [4+2P]                 mean pmi index / nu_pmi
///   [5+2P]                 min(1, slots since mmWave training / M_RF)
///   [6+2P]                 min(1, slots since sub-6 training / M_RF)
///   [7+2P]                 mode flag
arma::vec featurize(const BeamState& state, const FeatureContext& ctx);

/// Slot-stepped dual-band link. Owns the traces, codebooks and beam
/// state; each step consumes the action's overhead in slots and pays
/// reward c * R per the episode objective. Single-threaded by design
/// (mutable cursor); run one instance per thread.
class LinkEnv {
public:
    LinkEnv(ChannelTrace mmwave_trace, ChannelTrace sub6_trace, MmWaveLinkConfig mm_cfg,
            Sub6LinkConfig s6_cfg, EnvConfig env_cfg, double tx_power_watt, std::uint64_t seed);

    arma::vec reset();
    StepOutcome step(EnvAction action);

    const BeamState& state() const { return state_; }
    arma::vec features() const;
    bool done() const { return cursor_ >= trace(Band::mmwave).n_slots; }
    int cursor() const { return cursor_; }

    int overhead_slots(ActionKind kind) const;
    int m_rf() const { return m_rf_; }
    int m_bb_mmwave() const { return m_bb_; }
    int m_bb_sub6() const { return m_bb_sub6_; }

    const ChannelTrace& trace(Band b) const { return b == Band::mmwave ? mm_trace_ : s6_trace_; }
    const MmWaveLinkConfig& mmwave_config() const { return mm_cfg_; }
    const Sub6LinkConfig& sub6_config() const { return s6_cfg_; }
    const EnvConfig& env_config() const { return env_cfg_; }
    const AnalogCodebook& tx_codebook() const { return f_cb_; }
    const AnalogCodebook& rx_codebook() const { return w_cb_; }
    const PmiCodebook& pmi() const { return pmi_cb_; }
    const RvqCodebook& rvq() const { return *rvq_cb_; }
    double tx_power_watt() const { return tx_power_watt_; }
    double noise_variance(Band b) const { return b == Band::mmwave ? noise_mm_ : noise_s6_; }
    /// Pre-beamforming SNR P * G[slot] / sigma^2.
    double snr_at(Band b, int slot) const;
    double running_max_feedback() const { return running_max_feedback_; }

    /// Channel matrices of one slot, one matrix per subcarrier.
    std::vector<arma::cx_mat> frame_at(Band b, int slot) const;

    /// Oracle hooks (genie/greedy baselines): set the band and replace
    /// the current beamformers at zero slot cost.
    void oracle_set_band(Band b) { state_.band = b; }
    void oracle_inject_mmwave(const SweepResult& sweep, std::vector<arma::cx_mat> f_bb,
                              std::vector<arma::cx_mat> w_bb);
    void oracle_inject_sub6(std::vector<arma::cx_mat> f_bb, std::vector<arma::cx_mat> w_bb,
                            std::vector<int> pmi_index);

private:
    struct MmBeams {
        bool has_analog = false;
        arma::cx_mat f_rf_sel; ///< n_bs x n_s, strongest pairs
        arma::cx_mat w_rf_sel;
        std::vector<arma::cx_mat> f_bb; ///< per subcarrier, n_s x n_s
        std::vector<arma::cx_mat> w_bb;
    };
    struct Sub6Beams {
        bool has_training = false;
        std::vector<arma::cx_mat> f_bb; ///< per subcarrier, n_bs x n_s
        std::vector<arma::cx_mat> w_bb; ///< per subcarrier, n_ue x n_s
    };

    void do_switch_band(int end_slot);
    void do_analog_training(int end_slot);
    void do_digital_training_mmwave(int end_slot);
    void do_training_sub6(int end_slot);
    double do_data(int end_slot);
    double refresh_feedback_mmwave(int slot);
    double refresh_feedback_sub6_true(int slot);
    void reset_mm_digital_defaults();
    void note_feedback(double fb);

    ChannelTrace mm_trace_;
    ChannelTrace s6_trace_;
    MmWaveLinkConfig mm_cfg_;
    Sub6LinkConfig s6_cfg_;
    EnvConfig env_cfg_;
    double tx_power_watt_;
    double noise_mm_ = 0.0, noise_s6_ = 0.0;
    AnalogCodebook f_cb_, w_cb_;
    PmiCodebook pmi_cb_;
    std::shared_ptr<const RvqCodebook> rvq_cb_;
    int m_rf_ = 0, m_bb_ = 0, m_bb_sub6_ = 0;
    Rng rng_;

    int cursor_ = 0;
    BeamState state_;
    MmBeams mm_beams_;
    Sub6Beams s6_beams_;
    SweepResult last_sweep_;
    int last_train_mm_ = -1 << 28;
    int last_train_s6_ = -1 << 28;
    double running_max_feedback_ = 0.0;
};

} // namespace dualband
