// SPDX-License-Identifier: Apache-2.0
#include "dualband/errors.hpp"
#include "dualband/linalg.hpp"
#include "dualband/mmwave/bm.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>

using namespace dualband;
using testsupport::random_cx_mat;

namespace {

arma::cx_vec phase_ramp(int n, double omega) {
    arma::cx_vec v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::polar(1.0, omega * i);
    return v;
}

// Rank-one frame with exact spatial frequencies on both ends.
std::vector<arma::cx_mat> single_path_frame(int n_rx, int n_tx, double omega_rx,
                                            double omega_tx, int n_k) {
    const arma::cx_mat h = phase_ramp(n_rx, omega_rx) * phase_ramp(n_tx, omega_tx).t();
    return std::vector<arma::cx_mat>(n_k, h);
}

} // namespace

TEST_SUITE("mmwave_bm") {

TEST_CASE("MMSE and effective SNR closed forms") {
    SUBCASE("no pilots") {
        const auto q = mmse_estimation(0.0, 5.0, 3.0);
        CHECK(q.mmse == 1.0);
        CHECK(q.snr_eff == 0.0);
    }
    SUBCASE("perfect estimation limit") {
        const auto q = mmse_estimation(1e9, 1e9, 4.0);
        CHECK(q.mmse == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(q.snr_eff == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("reference point") {
        const auto q = mmse_estimation(1.0, 10.0, 10.0);
        CHECK(q.mmse == doctest::Approx(1.0 / 101.0).epsilon(1e-14));
        CHECK(q.snr_eff == doctest::Approx(1000.0 / 111.0).epsilon(1e-14));
    }
    SUBCASE("negative inputs rejected") {
        CHECK_THROWS_AS(mmse_estimation(-0.1, 1.0, 1.0), DomainError);
        CHECK_THROWS_AS(mmse_estimation(0.1, 1.0, -1.0), DomainError);
    }
}

TEST_CASE("effective SNR never exceeds SNR and grows with zeta") {
    Rng rng(17);
    for (int t = 0; t < 10000; ++t) {
        const double beta = rng.uniform(0.0, 2.0);
        const double zeta = rng.uniform(0.0, 50.0);
        const double snr = rng.uniform(0.0, 100.0);
        const auto q = mmse_estimation(beta, zeta, snr);
        CHECK(q.snr_eff <= snr + 1e-12);
        const auto q2 = mmse_estimation(beta, zeta + 1.0, snr);
        CHECK(q2.snr_eff >= q.snr_eff - 1e-12);
    }
}

TEST_CASE("spectral-efficiency feedback examples") {
    const arma::cx_vec g{std::complex<double>(1.0, 0.0)};
    const arma::cx_vec v{std::complex<double>(1.0, 0.0)};
    SUBCASE("zero effective SNR") {
        const std::vector<arma::cx_mat> h(3, arma::cx_mat(1, 1, arma::fill::ones));
        CHECK(se_feedback(h, g, v, 0.0) == 0.0);
    }
    SUBCASE("unit gain, unit SNR") {
        const std::vector<arma::cx_mat> h(1, arma::cx_mat(1, 1, arma::fill::ones));
        CHECK(se_feedback(h, g, v, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("two subcarriers with gains 1 and 3") {
        std::vector<arma::cx_mat> h;
        h.push_back(arma::cx_mat(1, 1, arma::fill::ones));
        h.push_back(arma::cx_mat{std::complex<double>(std::sqrt(3.0), 0.0)});
        CHECK(se_feedback(h, g, v, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
    }
}

TEST_CASE("sweep finds the exactly matched beam for every target") {
    const int n = 8;
    const AnalogCodebook f_cb = dft_codebook(n);
    const AnalogCodebook w_cb = dft_codebook(4);
    for (int j = 0; j < n; ++j) {
        const auto frame = single_path_frame(4, n, 2.0 * M_PI * 1 / 4.0, 2.0 * M_PI * j / n, 2);
        const SweepResult res = analog_sweep(frame, f_cb, w_cb, 1, 1, 5.0);
        CHECK(res.tx_index[0] == j);
        CHECK(res.rx_index[0] == 1);
    }
}

TEST_CASE("single-pair sweep equals the exhaustive argmax oracle") {
    Rng rng(23);
    const AnalogCodebook f_cb = dft_codebook(6);
    const AnalogCodebook w_cb = dft_codebook(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<arma::cx_mat> frame;
        for (int k = 0; k < 3; ++k)
            frame.push_back(random_cx_mat(3, 6, rng));
        const SweepResult res = analog_sweep(frame, f_cb, w_cb, 1, 1, 2.0);

        // Brute force over all pairs, ties toward lowest (tx, rx).
        int best_tx = -1, best_rx = -1;
        double best = -1.0;
        for (int tx = 0; tx < f_cb.size(); ++tx)
            for (int rx = 0; rx < w_cb.size(); ++rx) {
                const double fb = se_feedback(frame, w_cb.beam(rx), f_cb.beam(tx), 2.0);
                if (fb > best) {
                    best = fb;
                    best_tx = tx;
                    best_rx = rx;
                }
            }
        CHECK(res.tx_index[0] == best_tx);
        CHECK(res.rx_index[0] == best_rx);
        CHECK(res.best_feedback == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("greedy sweep uses distinct beams per RF chain") {
    Rng rng(29);
    const AnalogCodebook f_cb = dft_codebook(8);
    const AnalogCodebook w_cb = dft_codebook(4);
    std::vector<arma::cx_mat> frame;
    for (int k = 0; k < 2; ++k)
        frame.push_back(random_cx_mat(4, 8, rng));
    const SweepResult res = analog_sweep(frame, f_cb, w_cb, 3, 3, 1.0);
    REQUIRE(res.tx_index.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            CHECK(res.tx_index[i] != res.tx_index[j]);
            CHECK(res.rx_index[i] != res.rx_index[j]);
        }
    // Selection order is non-increasing in feedback.
    CHECK(res.feedback[0] >= res.feedback[1]);
    CHECK(res.feedback[1] >= res.feedback[2]);
    CHECK_THROWS_AS(analog_sweep(frame, f_cb, w_cb, 9, 2, 1.0), ConfigError);
}

TEST_CASE("overhead formulas") {
    CHECK(analog_overhead(1, 4, 32, 16) == 128);
    CHECK(analog_overhead(3, 128, 32, 4) == 3);
    CHECK(analog_overhead(3, 4, 1, 1) == 3);
    CHECK(digital_overhead(8, 1) == 8);
    CHECK(digital_overhead(4, 4) == 1);
    CHECK(digital_overhead(9, 4) == 3);
    CHECK_THROWS_AS(analog_overhead(0, 4, 32, 16), DomainError);
    CHECK_THROWS_AS(digital_overhead(8, 0), DomainError);
}

TEST_CASE("effective-channel estimate converges to truth at high SNR") {
    Rng data_rng(31);
    std::vector<arma::cx_mat> frame{random_cx_mat(4, 6, data_rng)};
    const arma::cx_mat f_rf = random_cx_mat(6, 2, data_rng);
    const arma::cx_mat w_rf = random_cx_mat(4, 2, data_rng);
    Rng rng(5);
    const auto hbar = estimate_effective_channel(frame, f_rf, w_rf, 0.5, 10.0, 6, 1e12, rng);
    const arma::cx_mat truth = w_rf.t() * frame[0] * f_rf;
    CHECK(arma::norm(hbar[0] - truth, "fro") < 1e-4);
    CHECK_THROWS_AS(estimate_effective_channel(frame, f_rf, w_rf, 0.0, 10.0, 6, 1.0, rng),
                    DomainError);
}

TEST_CASE("estimation noise variance matches the stated MSE") {
    // Monte-Carlo oracle for the per-entry error variance.
    Rng data_rng(37);
    std::vector<arma::cx_mat> frame{random_cx_mat(2, 4, data_rng)};
    const arma::cx_mat f_rf = random_cx_mat(4, 2, data_rng);
    const arma::cx_mat w_rf = random_cx_mat(2, 2, data_rng);
    const double beta = 0.2, zeta = 5.0, snr = 8.0;
    const int n_bs = 4;
    const arma::cx_mat truth = w_rf.t() * frame[0] * f_rf;

    Rng rng(41);
    double sum_sq = 0.0;
    const int n_draws = 10000;
    for (int i = 0; i < n_draws; ++i) {
        const auto hbar = estimate_effective_channel(frame, f_rf, w_rf, beta, zeta, n_bs, snr,
                                                     rng);
        const arma::cx_mat err = hbar[0] - truth;
        sum_sq += arma::norm(err, "fro") * arma::norm(err, "fro") / err.n_elem;
    }
    const double expected = n_bs / (beta * zeta * snr);
    CHECK(sum_sq / n_draws == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("reproducible estimates for a fixed seed") {
    Rng data_rng(43);
    std::vector<arma::cx_mat> frame{random_cx_mat(3, 3, data_rng)};
    const arma::cx_mat eye3 = arma::eye<arma::cx_mat>(3, 3);
    Rng a(99), b(99);
    const auto ha = estimate_effective_channel(frame, eye3, eye3, 0.5, 4.0, 3, 2.0, a);
    const auto hb = estimate_effective_channel(frame, eye3, eye3, 0.5, 4.0, 3, 2.0, b);
    CHECK(arma::norm(ha[0] - hb[0], "fro") == 0.0);
}

TEST_CASE("least-squares combiner") {
    SUBCASE("identity and scaling") {
        const arma::cx_mat eye = arma::eye<arma::cx_mat>(3, 3);
        CHECK(arma::norm(ls_combiner(eye) - eye, "fro") < 1e-12);
        CHECK(arma::norm(ls_combiner(arma::cx_mat(2.0 * eye)) - 0.5 * eye, "fro") < 1e-12);
    }
    SUBCASE("left-inverse property on random matrices") {
        Rng rng(47);
        for (int t = 0; t < 10; ++t) {
            const arma::cx_mat h = random_cx_mat(4, 4, rng);
            const arma::cx_mat w = ls_combiner(h);
            CHECK(arma::norm(w.t() * h - arma::eye<arma::cx_mat>(4, 4), "fro") < 1e-9);
        }
    }
    SUBCASE("rank deficiency raises a singularity error") {
        arma::cx_mat h(3, 2, arma::fill::ones); // identical columns
        CHECK_THROWS_AS(ls_combiner(h), SingularityError);
    }
}

TEST_CASE("digital precoder is a power-constrained right inverse") {
    Rng rng(53);
    const int n_s = 3;
    const arma::cx_mat f_rf = random_cx_mat(6, n_s, rng);
    for (int t = 0; t < 10; ++t) {
        const arma::cx_mat hhat = random_cx_mat(n_s, n_s, rng);
        const arma::cx_mat f_bb = mmse_precoder(hhat, f_rf, n_s);
        // Proportional to the right inverse: H * F is a scaled identity.
        const arma::cx_mat prod = hhat * f_bb;
        const std::complex<double> c = prod(0, 0);
        CHECK(arma::norm(prod - c * arma::eye<arma::cx_mat>(n_s, n_s), "fro") <
              1e-9 * std::abs(c));
        const double pw = arma::norm(f_rf * f_bb, "fro");
        CHECK(pw * pw == doctest::Approx(n_s).epsilon(1e-9));
    }
    SUBCASE("identity input") {
        const arma::cx_mat eye = arma::eye<arma::cx_mat>(2, 2);
        const arma::cx_mat f_bb = mmse_precoder(eye, eye, 2);
        const std::complex<double> c = f_bb(0, 0);
        CHECK(arma::norm(f_bb - c * eye, "fro") < 1e-12);
    }
}

TEST_CASE("log-det spectral efficiency") {
    const arma::cx_mat eye2 = arma::eye<arma::cx_mat>(2, 2);
    const std::vector<arma::cx_mat> ident(1, eye2);
    SUBCASE("zero power means zero rate") {
        Rng rng(59);
        std::vector<arma::cx_mat> h{random_cx_mat(2, 2, rng)};
        const auto se = spectral_efficiency_mmwave(h, eye2, ident, eye2, ident, 0.0, 1.0, 1.0);
        CHECK(se[0] == 0.0);
    }
    SUBCASE("scalar unit gain at unit SNR is 1 bps/Hz") {
        const arma::cx_mat one = arma::cx_mat(1, 1, arma::fill::ones);
        const std::vector<arma::cx_mat> h{one}, bb{one};
        const auto se = spectral_efficiency_mmwave(h, one, bb, one, bb, 1.0, 1.0, 1.0);
        CHECK(se[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two-stream diagonal channel") {
        arma::cx_mat h(2, 2, arma::fill::zeros);
        h(0, 0) = 1.0;
        h(1, 1) = 2.0;
        const std::vector<arma::cx_mat> hf{h};
        const auto se = spectral_efficiency_mmwave(hf, eye2, ident, eye2, ident, 1.0, 1.0, 1.0);
        CHECK(se[0] == doctest::Approx(std::log2(2.0) + std::log2(5.0)).epsilon(1e-12));
    }
}

TEST_CASE("gram validation rejects non-Hermitian and indefinite input") {
    arma::cx_mat bad(2, 2, arma::fill::zeros);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(log_det_capacity(bad), NumericalError);
    arma::cx_mat neg = -arma::eye<arma::cx_mat>(2, 2);
    CHECK_THROWS_AS(log_det_capacity(neg), NumericalError);
    CHECK(log_det_capacity(arma::eye<arma::cx_mat>(3, 3)) ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("power-method spectral norm matches SVD") {
    Rng rng(61);
    for (int t = 0; t < 25; ++t) {
        const arma::cx_mat m = random_cx_mat(1 + t % 4, 1 + (t * 7) % 5, rng);
        CHECK(spectral_norm_power(m) ==
              doctest::Approx(arma::norm(m, 2)).epsilon(1e-8));
    }
}

} // TEST_SUITE
