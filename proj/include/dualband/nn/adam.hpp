// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/nn/mlp.hpp"

namespace dualband {

/// Adaptive-moment descent state shadowing an Mlp's parameters.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::vector<arma::mat> m_w, v_w;
    std::vector<arma::vec> m_b, v_b;

    static AdamState make(const Mlp& net, double lr);
};

/// One bias-corrected descent step along `grads`. Gradients must carry
/// whatever batch scaling the caller wants (callers here pass means).
void opt_step(AdamState& opt, Mlp& net, const MlpGrads& grads);

} // namespace dualband
