// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>

namespace dualband {

inline constexpr double kSingularityCondLimit = 1e12;

/// Largest singular value of b via power iteration on b*b
/// (50 iterations max, 1e-10 relative tolerance, deterministic start).
double spectral_norm_power(const arma::cx_mat& b);

/// H (H*H)^-1 — the left-inverse shape shared by the least-squares and
/// zero-forcing combiners. Throws SingularityError when cond(H) exceeds
/// kSingularityCondLimit.
arma::cx_mat gram_left_inverse(const arma::cx_mat& h, const char* who);

/// H* (H H*)^-1 — right pseudo-inverse used by the digital precoder.
arma::cx_mat gram_right_inverse(const arma::cx_mat& h, const char* who);

/// log2 det(I + gram) for a Hermitian PSD gram matrix. Validates
/// Hermitian symmetry and positive semidefiniteness to `tol` and throws
/// NumericalError on violation.
double log_det_capacity(const arma::cx_mat& gram, double tol = 1e-9);

} // namespace dualband
