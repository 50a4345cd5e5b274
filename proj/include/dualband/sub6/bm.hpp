// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/rng.hpp"

#include <armadillo>
#include <span>
#include <vector>

namespace dualband {

/// Simplified Type-1 PMI codebook: each entry stacks n_s distinct
/// columns of an oversampling-factor-O DFT grid over n_bs antennas
/// (beams within an entry are O apart, hence mutually orthogonal; the
/// entry index rotates the grid). ||entry||_F^2 = n_s.
struct PmiCodebook {
    std::vector<arma::cx_mat> precoders; ///< n_bs x n_s each
    int size() const { return static_cast<int>(precoders.size()); }
};

/// Deterministic enumeration: entry j uses grid columns
/// {(j + t*O) mod (O*n_bs) : t = 0..n_s-1}. size must not exceed the
/// O*n_bs enumerable entries. With the default O = 4, entry 0 of a
/// square (n_bs = n_s) codebook is the plain n_bs-point DFT.
PmiCodebook pmi_codebook(int n_bs, int n_s, int size, int oversampling = 4);

/// Noisy CSI per subcarrier: H[k] + sqrt(n_bs/(beta*zeta*snr)) delta[k].
std::vector<arma::cx_mat> csi_with_error(std::span<const arma::cx_mat> h_frame, double beta,
                                         double zeta, int n_bs, double snr, Rng& rng);

struct PmiSelection {
    std::vector<arma::cx_mat> f_bb; ///< per subcarrier
    std::vector<int> index;         ///< per subcarrier
};

/// Per-subcarrier argmax over the codebook of ||P[k] F||_F; ties break
/// toward the lowest index.
PmiSelection pmi_select(std::span<const arma::cx_mat> p_frame, const PmiCodebook& cb);

/// Zero-forcing combiner W = H (H*H)^-1 on the post-precoding effective
/// channel; W* H = I when well conditioned.
arma::cx_mat zf_combiner(const arma::cx_mat& h_eff);

/// Spectral-efficiency feedback (mean over subcarriers):
/// (1/K) sum_k log2(1 + snr * q_k), q_k the sum of squared magnitudes of
/// the diagonal of W[k]* P[k] F[k] (per-stream effective gains).
double se_feedback_sub6(std::span<const arma::cx_mat> p_frame,
                        std::span<const arma::cx_mat> f_bb, std::span<const arma::cx_mat> w_bb,
                        double snr);

/// M_BB = ceil(log2(nu_pmi) / kappa_channel) slots.
int pmi_overhead(int nu_pmi, int kappa_channel);

/// Per-subcarrier log-det spectral efficiency for the fully digital
/// link: log2 det(I + rho A A*), A = w_bb[k]* H[k] f_bb[k].
std::vector<double> spectral_efficiency_sub6(std::span<const arma::cx_mat> h_frame,
                                             std::span<const arma::cx_mat> f_bb,
                                             std::span<const arma::cx_mat> w_bb, double p,
                                             double g, double noise_var);

} // namespace dualband
