// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/mmwave/codebook.hpp"
#include "dualband/rng.hpp"

#include <armadillo>
#include <span>
#include <vector>

namespace dualband {

/// Pilot-based estimation quality: mmse = 1/(1 + beta*zeta*snr) and the
/// effective SNR it induces on the feedback link.
struct EstimationQuality {
    double mmse = 1.0;
    double snr_eff = 0.0;
};
EstimationQuality mmse_estimation(double beta, double zeta, double snr);

/// Mean spectral efficiency over subcarriers for one beam pair:
/// (1/K) sum_k log2(1 + snr_eff |g* H[k] v|^2).
double se_feedback(std::span<const arma::cx_mat> h_frame, const arma::cx_vec& g,
                   const arma::cx_vec& v, double snr_eff);

/// Result of the exhaustive analog sweep with greedy per-RF-chain
/// assignment. Pairs come out in selection order, so feedback is
/// non-increasing and pair 0 is the global best.
struct SweepResult {
    arma::cx_mat f_rf; ///< n_bs x n_pairs, selected tx beams
    arma::cx_mat w_rf; ///< n_ue x n_pairs, selected rx beams
    std::vector<int> tx_index;
    std::vector<int> rx_index;
    std::vector<double> feedback; ///< per-pair spectral efficiency
    double best_feedback = 0.0;
};

/// Greedy sweep: n_pairs = min(n_bs_rf, n_ue_rf) rounds; each round
/// takes the feedback-maximizing (v, g) pair among beams not selected
/// in earlier rounds. Ties break toward the lowest tx then rx index.
SweepResult analog_sweep(std::span<const arma::cx_mat> h_frame, const AnalogCodebook& f_cb,
                         const AnalogCodebook& w_cb, int n_bs_rf, int n_ue_rf, double snr_eff);

/// M_RF = m_ss * ceil(nu_bs * nu_ue / n_ss) slots.
int analog_overhead(int m_ss, int n_ss, int nu_bs, int nu_ue);

/// M_BB = ceil(kappa_rvq / kappa_channel) slots.
int digital_overhead(int kappa_rvq, int kappa_channel);

/// Noisy effective channel per subcarrier:
/// W_rf* H[k] F_rf + sqrt(n_bs/(beta*zeta*snr)) * delta[k].
std::vector<arma::cx_mat> estimate_effective_channel(std::span<const arma::cx_mat> h_frame,
                                                     const arma::cx_mat& f_rf,
                                                     const arma::cx_mat& w_rf, double beta_bb,
                                                     double zeta_bb, int n_bs, double snr,
                                                     Rng& rng);

/// Least-squares combiner W = H (H*H)^-1; W* H = I when well conditioned.
arma::cx_mat ls_combiner(const arma::cx_mat& hbar_eff);

/// Right pseudo-inverse precoder F = H* (H H*)^-1, then rescaled so that
/// ||f_rf * F||_F^2 = n_s.
arma::cx_mat mmse_precoder(const arma::cx_mat& hhat, const arma::cx_mat& f_rf, int n_s);

/// Per-subcarrier log-det spectral efficiency (log base 2):
/// S[k] = log2 det(I + rho * A A*) with A = (w_rf w_bb[k])* H[k] (f_rf f_bb[k])
/// and rho = p * g / noise_var.
std::vector<double> spectral_efficiency_mmwave(std::span<const arma::cx_mat> h_frame,
                                               const arma::cx_mat& f_rf,
                                               std::span<const arma::cx_mat> f_bb,
                                               const arma::cx_mat& w_rf,
                                               std::span<const arma::cx_mat> w_bb, double p,
                                               double g, double noise_var);

} // namespace dualband
