// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>

namespace dualband {

/// Analog beam codebook: unit-norm steering vectors with uniformly
/// spaced spatial frequencies (DFT construction).
struct AnalogCodebook {
    arma::cx_mat vectors; ///< n_antennas x size, one beam per column
    int size() const { return static_cast<int>(vectors.n_cols); }
    int n_antennas() const { return static_cast<int>(vectors.n_rows); }
    arma::cx_vec beam(int i) const { return vectors.col(i); }
};

/// size defaults to n_antennas (orthogonal DFT). Beam i has spatial
/// frequency 2*pi*i/size.
AnalogCodebook dft_codebook(int n_antennas, int size = -1);

} // namespace dualband
