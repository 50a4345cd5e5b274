// SPDX-License-Identifier: Apache-2.0
#include "dualband/mmwave/bm.hpp"

#include "dualband/errors.hpp"
#include "dualband/linalg.hpp"

#include <cmath>
#include <limits>

namespace dualband {

EstimationQuality mmse_estimation(double beta, double zeta, double snr) {
    if (beta < 0.0 || zeta < 0.0 || snr < 0.0)
        throw DomainError("mmse_estimation: beta, zeta, snr must be non-negative");
    EstimationQuality q;
    q.mmse = 1.0 / (1.0 + beta * zeta * snr);
    q.snr_eff = snr * (1.0 - q.mmse) / (1.0 + snr * q.mmse);
    return q;
}

double se_feedback(std::span<const arma::cx_mat> h_frame, const arma::cx_vec& g,
                   const arma::cx_vec& v, double snr_eff) {
    if (snr_eff < 0.0)
        throw DomainError("se_feedback: snr_eff must be non-negative");
    if (h_frame.empty())
        return 0.0;
    double sum = 0.0;
    for (const arma::cx_mat& h : h_frame) {
        if (h.n_rows != g.n_elem || h.n_cols != v.n_elem)
            throw ShapeError("se_feedback: channel/beam dimensions disagree");
        const std::complex<double> gain = arma::cdot(g, h * v);
        sum += std::log2(1.0 + snr_eff * std::norm(gain));
    }
    return sum / static_cast<double>(h_frame.size());
}

SweepResult analog_sweep(std::span<const arma::cx_mat> h_frame, const AnalogCodebook& f_cb,
                         const AnalogCodebook& w_cb, int n_bs_rf, int n_ue_rf, double snr_eff) {
    const int n_pairs = std::min(n_bs_rf, n_ue_rf);
    if (n_pairs < 1)
        throw ConfigError("analog_sweep: need at least one RF chain per side");
    if (f_cb.size() < n_bs_rf || w_cb.size() < n_ue_rf)
        throw ConfigError("analog_sweep: codebook smaller than RF chain count");
    if (h_frame.empty())
        throw ShapeError("analog_sweep: empty channel frame");

    // All pairwise feedbacks in one pass: M[k] = W* H[k] V, then
    // table(rx, tx) = (1/K) sum_k log2(1 + snr_eff |M[k](rx, tx)|^2).
    arma::mat table(w_cb.size(), f_cb.size(), arma::fill::zeros);
    for (const arma::cx_mat& h : h_frame) {
        const arma::cx_mat m = w_cb.vectors.t() * h * f_cb.vectors;
        table += arma::log2(1.0 + snr_eff * arma::square(arma::abs(m)));
    }
    table /= static_cast<double>(h_frame.size());

    SweepResult out;
    out.f_rf.set_size(f_cb.n_antennas(), n_pairs);
    out.w_rf.set_size(w_cb.n_antennas(), n_pairs);
    std::vector<bool> tx_used(f_cb.size(), false), rx_used(w_cb.size(), false);
    for (int round = 0; round < n_pairs; ++round) {
        int best_tx = -1, best_rx = -1;
        double best = -std::numeric_limits<double>::infinity();
        for (int tx = 0; tx < f_cb.size(); ++tx) {
            if (tx_used[tx])
                continue;
            for (int rx = 0; rx < w_cb.size(); ++rx) {
                if (rx_used[rx])
                    continue;
                if (table(rx, tx) > best) {
                    best = table(rx, tx);
                    best_tx = tx;
                    best_rx = rx;
                }
            }
        }
        tx_used[best_tx] = true;
        rx_used[best_rx] = true;
        out.tx_index.push_back(best_tx);
        out.rx_index.push_back(best_rx);
        out.feedback.push_back(best);
        out.f_rf.col(round) = f_cb.beam(best_tx);
        out.w_rf.col(round) = w_cb.beam(best_rx);
    }
    out.best_feedback = out.feedback.front();
    return out;
}

int analog_overhead(int m_ss, int n_ss, int nu_bs, int nu_ue) {
    if (m_ss < 1 || n_ss < 1 || nu_bs < 1 || nu_ue < 1)
        throw DomainError("analog_overhead: all arguments must be positive");
    const long long beams = static_cast<long long>(nu_bs) * nu_ue;
    return static_cast<int>(m_ss * ((beams + n_ss - 1) / n_ss));
}

int digital_overhead(int kappa_rvq, int kappa_channel) {
    if (kappa_rvq < 1 || kappa_channel < 1)
        throw DomainError("digital_overhead: all arguments must be positive");
    return (kappa_rvq + kappa_channel - 1) / kappa_channel;
}

std::vector<arma::cx_mat> estimate_effective_channel(std::span<const arma::cx_mat> h_frame,
                                                     const arma::cx_mat& f_rf,
                                                     const arma::cx_mat& w_rf, double beta_bb,
                                                     double zeta_bb, int n_bs, double snr,
                                                     Rng& rng) {
    const double pilot_energy = beta_bb * zeta_bb * snr;
    if (pilot_energy <= 0.0)
        throw DomainError("estimate_effective_channel: beta*zeta*snr must be positive");
    const double noise_scale = std::sqrt(static_cast<double>(n_bs) / pilot_energy);

    std::vector<arma::cx_mat> out;
    out.reserve(h_frame.size());
    for (const arma::cx_mat& h : h_frame) {
        arma::cx_mat hbar = w_rf.t() * h * f_rf;
        for (auto& e : hbar)
            e += noise_scale * rng.cnormal();
        out.push_back(std::move(hbar));
    }
    return out;
}

arma::cx_mat ls_combiner(const arma::cx_mat& hbar_eff) {
    return gram_left_inverse(hbar_eff, "ls_combiner");
}

arma::cx_mat mmse_precoder(const arma::cx_mat& hhat, const arma::cx_mat& f_rf, int n_s) {
    arma::cx_mat f_bb = gram_right_inverse(hhat, "mmse_precoder");
    const double norm = arma::norm(f_rf * f_bb, "fro");
    if (norm <= 0.0)
        throw SingularityError("mmse_precoder: zero-power precoder");
    f_bb *= std::sqrt(static_cast<double>(n_s)) / norm;
    return f_bb;
}

std::vector<double> spectral_efficiency_mmwave(std::span<const arma::cx_mat> h_frame,
                                               const arma::cx_mat& f_rf,
                                               std::span<const arma::cx_mat> f_bb,
                                               const arma::cx_mat& w_rf,
                                               std::span<const arma::cx_mat> w_bb, double p,
                                               double g, double noise_var) {
    if (h_frame.size() != f_bb.size() || h_frame.size() != w_bb.size())
        throw ShapeError("spectral_efficiency_mmwave: per-subcarrier lists disagree");
    if (p < 0.0 || g < 0.0 || noise_var <= 0.0)
        throw DomainError("spectral_efficiency_mmwave: bad power/gain/noise");
    const double rho = p * g / noise_var;
    std::vector<double> se(h_frame.size());
    for (std::size_t k = 0; k < h_frame.size(); ++k) {
        const arma::cx_mat a = (w_rf * w_bb[k]).t() * h_frame[k] * (f_rf * f_bb[k]);
        se[k] = log_det_capacity(rho * (a * a.t()));
    }
    return se;
}

} // namespace dualband
