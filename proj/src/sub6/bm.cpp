// SPDX-License-Identifier: Apache-2.0
#include "dualband/sub6/bm.hpp"

#include "dualband/errors.hpp"
#include "dualband/linalg.hpp"

#include <cmath>

namespace dualband {

PmiCodebook pmi_codebook(int n_bs, int n_s, int size, int oversampling) {
    if (n_bs < 1 || n_s < 1 || n_s > n_bs)
        throw ConfigError("pmi_codebook: need 1 <= n_s <= n_bs");
    if (oversampling < 1)
        throw ConfigError("pmi_codebook: oversampling must be positive");
    const int grid = oversampling * n_bs;
    if (size < 1 || size > grid)
        throw ConfigError("pmi_codebook: size exceeds the " + std::to_string(grid) +
                          " enumerable entries");

    const double scale = 1.0 / std::sqrt(static_cast<double>(n_bs));
    PmiCodebook cb;
    cb.precoders.reserve(size);
    for (int j = 0; j < size; ++j) {
        arma::cx_mat f(n_bs, n_s);
        for (int t = 0; t < n_s; ++t) {
            const int col = (j + t * oversampling) % grid;
            const double omega = 2.0 * M_PI * col / grid;
            for (int n = 0; n < n_bs; ++n)
                f(n, t) = std::polar(scale, omega * n);
        }
        cb.precoders.push_back(std::move(f));
    }
    return cb;
}

std::vector<arma::cx_mat> csi_with_error(std::span<const arma::cx_mat> h_frame, double beta,
                                         double zeta, int n_bs, double snr, Rng& rng) {
    const double pilot_energy = beta * zeta * snr;
    if (pilot_energy <= 0.0)
        throw DomainError("csi_with_error: beta*zeta*snr must be positive");
    const double noise_scale = std::sqrt(static_cast<double>(n_bs) / pilot_energy);

    std::vector<arma::cx_mat> out;
    out.reserve(h_frame.size());
    for (const arma::cx_mat& h : h_frame) {
        arma::cx_mat p = h;
        for (auto& e : p)
            e += noise_scale * rng.cnormal();
        out.push_back(std::move(p));
    }
    return out;
}

PmiSelection pmi_select(std::span<const arma::cx_mat> p_frame, const PmiCodebook& cb) {
    if (cb.size() < 1)
        throw ConfigError("pmi_select: empty codebook");
    PmiSelection sel;
    sel.f_bb.reserve(p_frame.size());
    sel.index.reserve(p_frame.size());
    for (const arma::cx_mat& p : p_frame) {
        int best = 0;
        double best_metric = -1.0;
        for (int i = 0; i < cb.size(); ++i) {
            if (p.n_cols != cb.precoders[i].n_rows)
                throw ShapeError("pmi_select: CSI/codebook dimensions disagree");
            const double metric = arma::norm(p * cb.precoders[i], "fro");
            if (metric > best_metric) {
                best_metric = metric;
                best = i;
            }
        }
        sel.f_bb.push_back(cb.precoders[best]);
        sel.index.push_back(best);
    }
    return sel;
}

arma::cx_mat zf_combiner(const arma::cx_mat& h_eff) {
    return gram_left_inverse(h_eff, "zf_combiner");
}

double se_feedback_sub6(std::span<const arma::cx_mat> p_frame,
                        std::span<const arma::cx_mat> f_bb, std::span<const arma::cx_mat> w_bb,
                        double snr) {
    if (p_frame.size() != f_bb.size() || p_frame.size() != w_bb.size())
        throw ShapeError("se_feedback_sub6: per-subcarrier lists disagree");
    if (snr < 0.0)
        throw DomainError("se_feedback_sub6: snr must be non-negative");
    if (p_frame.empty())
        return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < p_frame.size(); ++k) {
        const arma::cx_mat eff = w_bb[k].t() * p_frame[k] * f_bb[k];
        double q = 0.0;
        for (arma::uword s = 0; s < std::min(eff.n_rows, eff.n_cols); ++s)
            q += std::norm(eff(s, s));
        sum += std::log2(1.0 + snr * q);
    }
    return sum / static_cast<double>(p_frame.size());
}

int pmi_overhead(int nu_pmi, int kappa_channel) {
    if (nu_pmi < 1 || kappa_channel < 1)
        throw DomainError("pmi_overhead: arguments must be positive");
    const int bits = static_cast<int>(std::ceil(std::log2(static_cast<double>(nu_pmi))));
    return (bits + kappa_channel - 1) / kappa_channel;
}

std::vector<double> spectral_efficiency_sub6(std::span<const arma::cx_mat> h_frame,
                                             std::span<const arma::cx_mat> f_bb,
                                             std::span<const arma::cx_mat> w_bb, double p,
                                             double g, double noise_var) {
    if (h_frame.size() != f_bb.size() || h_frame.size() != w_bb.size())
        throw ShapeError("spectral_efficiency_sub6: per-subcarrier lists disagree");
    if (p < 0.0 || g < 0.0 || noise_var <= 0.0)
        throw DomainError("spectral_efficiency_sub6: bad power/gain/noise");
    const double rho = p * g / noise_var;
    std::vector<double> se(h_frame.size());
    for (std::size_t k = 0; k < h_frame.size(); ++k) {
        const arma::cx_mat a = w_bb[k].t() * h_frame[k] * f_bb[k];
        se[k] = log_det_capacity(rho * (a * a.t()));
    }
    return se;
}

} // namespace dualband
