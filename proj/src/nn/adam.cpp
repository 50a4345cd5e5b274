// SPDX-License-Identifier: Apache-2.0
#include "dualband/nn/adam.hpp"

#include "dualband/errors.hpp"

#include <cmath>

namespace dualband {

AdamState AdamState::make(const Mlp& net, double lr) {
    AdamState s;
    s.lr = lr;
    for (std::size_t l = 0; l < net.n_layers(); ++l) {
        s.m_w.emplace_back(arma::size(net.weights[l]), arma::fill::zeros);
        s.v_w.emplace_back(arma::size(net.weights[l]), arma::fill::zeros);
        s.m_b.emplace_back(net.biases[l].n_elem, arma::fill::zeros);
        s.v_b.emplace_back(net.biases[l].n_elem, arma::fill::zeros);
    }
    return s;
}

namespace {

template <typename T>
void step_tensor(T& param, T& m, T& v, const T& grad, const AdamState& s, double bc1, double bc2) {
    m = s.beta1 * m + (1.0 - s.beta1) * grad;
    v = s.beta2 * v + (1.0 - s.beta2) * (grad % grad);
    param -= s.lr * (m / bc1) / (arma::sqrt(v / bc2) + s.eps);
}

} // namespace

void opt_step(AdamState& opt, Mlp& net, const MlpGrads& grads) {
    if (grads.d_weights.size() != net.n_layers())
        throw ShapeError("opt_step: gradient/parameter layer counts differ");
    ++opt.step;
    const double bc1 = 1.0 - std::pow(opt.beta1, opt.step);
    const double bc2 = 1.0 - std::pow(opt.beta2, opt.step);
    for (std::size_t l = 0; l < net.n_layers(); ++l) {
        if (arma::size(grads.d_weights[l]) != arma::size(net.weights[l]))
            throw ShapeError("opt_step: gradient shape mismatch");
        step_tensor(net.weights[l], opt.m_w[l], opt.v_w[l], grads.d_weights[l], opt, bc1, bc2);
        step_tensor(net.biases[l], opt.m_b[l], opt.v_b[l], grads.d_biases[l], opt, bc1, bc2);
    }
}

} // namespace dualband
