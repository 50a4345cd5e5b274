// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstdint>
#include <vector>

namespace dualband {

enum class OutputActivation { identity, sigmoid, tanh_unit };

/// Dense feed-forward network, tanh hidden layers, 64-bit parameters.
/// The output layer applies `out_act` and multiplies by `out_scale`
/// (used to pin actor outputs to the action box).
struct Mlp {
    std::vector<int> dims; ///< [input, hidden..., output]
    std::vector<arma::mat> weights; ///< per layer, out x in
    std::vector<arma::vec> biases;
    OutputActivation out_act = OutputActivation::identity;
    double out_scale = 1.0;

    /// Weights uniform in +-1/sqrt(fan_in), biases zero; deterministic
    /// for a given seed.
    static Mlp make(const std::vector<int>& dims, OutputActivation out_act, double out_scale,
                    std::uint64_t seed);

    int input_dim() const { return dims.front(); }
    int output_dim() const { return dims.back(); }
    std::size_t n_layers() const { return weights.size(); }
};

/// Activations recorded by a forward pass, consumed by backward.
struct MlpCache {
    arma::mat input;              ///< columns are samples
    std::vector<arma::mat> pre;   ///< pre-activation per layer
    std::vector<arma::mat> post;  ///< post-activation per layer
};

struct MlpGrads {
    std::vector<arma::mat> d_weights;
    std::vector<arma::vec> d_biases;
    arma::mat d_input; ///< gradient w.r.t. the input columns
};

/// Batched forward; columns of x are independent samples. Pass a cache
/// to enable backward.
arma::mat mlp_forward(const Mlp& net, const arma::mat& x, MlpCache* cache = nullptr);
arma::vec mlp_forward(const Mlp& net, const arma::vec& x);

/// Exact reverse-mode gradients. `upstream` holds dL/d(output) per
/// sample column; parameter gradients are summed over the batch.
MlpGrads mlp_backward(const Mlp& net, const MlpCache& cache, const arma::mat& upstream);

/// target <- eta * online + (1 - eta) * target, per parameter.
void soft_update(Mlp& target, const Mlp& online, double eta);

} // namespace dualband
