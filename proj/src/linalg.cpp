// SPDX-License-Identifier: Apache-2.0
#include "dualband/linalg.hpp"

#include "dualband/errors.hpp"

#include <string>

namespace dualband {

double spectral_norm_power(const arma::cx_mat& b) {
    if (b.n_elem == 0)
        return 0.0;
    arma::cx_vec x(b.n_cols, arma::fill::ones);
    x /= std::sqrt(static_cast<double>(b.n_cols));
    double sigma = 0.0;
    for (int it = 0; it < 50; ++it) {
        arma::cx_vec y = b * x;
        const double s = arma::norm(y, 2);
        if (s == 0.0)
            return 0.0;
        x = b.t() * y;
        const double nx = arma::norm(x, 2);
        if (nx == 0.0)
            return s;
        x /= nx;
        if (std::abs(s - sigma) <= 1e-10 * std::max(1.0, s))
            return s;
        sigma = s;
    }
    return sigma;
}

namespace {

void check_condition(const arma::cx_mat& h, const char* who) {
    const arma::vec sv = arma::svd(h);
    const double smin = sv.min();
    if (smin <= 0.0 || sv.max() / smin > kSingularityCondLimit)
        throw SingularityError(std::string(who) + ": matrix is rank deficient (condition number > 1e12)");
}

} // namespace

arma::cx_mat gram_left_inverse(const arma::cx_mat& h, const char* who) {
    if (h.n_rows < h.n_cols)
        throw ShapeError(std::string(who) + ": needs at least as many rows as columns");
    check_condition(h, who);
    return h * arma::inv_sympd(h.t() * h);
}

arma::cx_mat gram_right_inverse(const arma::cx_mat& h, const char* who) {
    if (h.n_cols < h.n_rows)
        throw ShapeError(std::string(who) + ": needs at least as many columns as rows");
    check_condition(h, who);
    return h.t() * arma::inv_sympd(h * h.t());
}

double log_det_capacity(const arma::cx_mat& gram, double tol) {
    if (gram.n_rows != gram.n_cols)
        throw ShapeError("log_det_capacity: gram matrix must be square");
    const double scale = std::max(1.0, arma::norm(gram, "fro"));
    if (arma::norm(gram - gram.t(), "fro") > tol * scale)
        throw NumericalError("log_det_capacity: gram matrix is not Hermitian");
    arma::vec eig = arma::eig_sym(gram);
    if (eig.min() < -tol * scale)
        throw NumericalError("log_det_capacity: gram matrix is not positive semidefinite");
    double out = 0.0;
    for (const double lambda : eig)
        out += std::log2(1.0 + std::max(lambda, 0.0));
    return out;
}

} // namespace dualband
