// SPDX-License-Identifier: Apache-2.0
#include "dualband/nn/mlp.hpp"

#include "dualband/errors.hpp"
#include "dualband/rng.hpp"

#include <cmath>

namespace dualband {

Mlp Mlp::make(const std::vector<int>& dims, OutputActivation out_act, double out_scale,
              std::uint64_t seed) {
    if (dims.size() < 2)
        throw ShapeError("Mlp::make: need at least input and output dims");
    for (int d : dims)
        if (d < 1)
            throw ShapeError("Mlp::make: all layer dims must be positive");

    Rng rng(seed);
    Mlp net;
    net.dims = dims;
    net.out_act = out_act;
    net.out_scale = out_scale;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const int fan_in = dims[l];
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        arma::mat w(dims[l + 1], fan_in);
        for (auto& e : w)
            e = rng.uniform(-bound, bound);
        net.weights.push_back(std::move(w));
        net.biases.emplace_back(dims[l + 1], arma::fill::zeros);
    }
    return net;
}

namespace {

arma::mat apply_output(const Mlp& net, const arma::mat& z) {
    switch (net.out_act) {
    case OutputActivation::identity: return net.out_scale * z;
    case OutputActivation::sigmoid: return net.out_scale * (1.0 / (1.0 + arma::exp(-z)));
    case OutputActivation::tanh_unit: return net.out_scale * arma::tanh(z);
    }
    return z;
}

// d(out)/d(z) given the pre-activation z.
arma::mat output_slope(const Mlp& net, const arma::mat& z) {
    switch (net.out_act) {
    case OutputActivation::identity:
        return arma::mat(z.n_rows, z.n_cols, arma::fill::value(net.out_scale));
    case OutputActivation::sigmoid: {
        const arma::mat s = 1.0 / (1.0 + arma::exp(-z));
        return net.out_scale * s % (1.0 - s);
    }
    case OutputActivation::tanh_unit: {
        const arma::mat t = arma::tanh(z);
        return net.out_scale * (1.0 - arma::square(t));
    }
    }
    return z;
}

} // namespace

arma::mat mlp_forward(const Mlp& net, const arma::mat& x, MlpCache* cache) {
    if (static_cast<int>(x.n_rows) != net.input_dim())
        throw ShapeError("mlp_forward: input dim mismatch");
    if (cache) {
        cache->input = x;
        cache->pre.clear();
        cache->post.clear();
    }
    arma::mat a = x;
    for (std::size_t l = 0; l < net.n_layers(); ++l) {
        arma::mat z = net.weights[l] * a;
        z.each_col() += net.biases[l];
        const bool last = l + 1 == net.n_layers();
        arma::mat out = last ? apply_output(net, z) : arma::mat(arma::tanh(z));
        if (cache) {
            cache->pre.push_back(z);
            cache->post.push_back(out);
        }
        a = std::move(out);
    }
    return a;
}

arma::vec mlp_forward(const Mlp& net, const arma::vec& x) {
    return arma::vec(mlp_forward(net, arma::mat(x), nullptr));
}

MlpGrads mlp_backward(const Mlp& net, const MlpCache& cache, const arma::mat& upstream) {
    const std::size_t n_layers = net.n_layers();
    if (cache.pre.size() != n_layers)
        throw ShapeError("mlp_backward: cache does not match network");
    if (upstream.n_rows != static_cast<arma::uword>(net.output_dim()) ||
        upstream.n_cols != cache.input.n_cols)
        throw ShapeError("mlp_backward: upstream gradient shape mismatch");

    MlpGrads grads;
    grads.d_weights.resize(n_layers);
    grads.d_biases.resize(n_layers);

    arma::mat delta = upstream % output_slope(net, cache.pre.back());
    for (std::size_t l = n_layers; l-- > 0;) {
        const arma::mat& below = l == 0 ? cache.input : cache.post[l - 1];
        grads.d_weights[l] = delta * below.t();
        grads.d_biases[l] = arma::sum(delta, 1);
        arma::mat d_below = net.weights[l].t() * delta;
        if (l > 0)
            delta = d_below % (1.0 - arma::square(cache.post[l - 1]));
        else
            grads.d_input = std::move(d_below);
    }
    return grads;
}

void soft_update(Mlp& target, const Mlp& online, double eta) {
    if (target.dims != online.dims)
        throw ShapeError("soft_update: architectures differ");
    for (std::size_t l = 0; l < target.n_layers(); ++l) {
        target.weights[l] = eta * online.weights[l] + (1.0 - eta) * target.weights[l];
        target.biases[l] = eta * online.biases[l] + (1.0 - eta) * target.biases[l];
    }
}

} // namespace dualband
