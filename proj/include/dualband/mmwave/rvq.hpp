// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/rng.hpp"

#include <armadillo>
#include <cstdint>
#include <memory>
#include <vector>

namespace dualband {

/// Random vector quantization codebook of Frobenius-normalized complex
/// matrices, refined with Lloyd's algorithm under the spectral-norm
/// similarity ||X* C||_2.
struct RvqCodebook {
    std::vector<arma::cx_mat> entries; ///< 2^bits matrices
    int bits = 0;
    int n_rows = 0;
    int n_cols = 0;
    /// Mean distortion (1 - similarity) per Lloyd iteration, including
    /// the initial codebook. Non-increasing by construction.
    std::vector<double> distortion_history;
};

/// Lloyd refinement over an explicit training set (entries must be
/// Frobenius-normalized). Stops when the relative distortion
/// improvement drops below 1e-6 or after 100 iterations; an update that
/// would increase distortion is rolled back. Empty clusters are
/// reseeded from the worst-matched sample.
RvqCodebook lloyd_refine(int bits, const std::vector<arma::cx_mat>& training);

/// Builds the training set (n_training normalized complex Gaussian
/// matrices from `seed`) and runs lloyd_refine.
RvqCodebook build_rvq_codebook(int bits, int n_rows, int n_cols, int n_training,
                               std::uint64_t seed);

/// Process-wide cache keyed on (bits, shape, n_training, seed).
std::shared_ptr<const RvqCodebook> cached_rvq_codebook(int bits, int n_rows, int n_cols,
                                                       int n_training, std::uint64_t seed);

struct QuantizedChannel {
    arma::cx_mat entry;
    int index = 0;
};

/// argmax over codebook entries of ||hbar* entry||_2; ties break toward
/// the lowest index.
QuantizedChannel quantize_effective_channel(const arma::cx_mat& hbar, const RvqCodebook& cb);

} // namespace dualband
