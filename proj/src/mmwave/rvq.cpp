// SPDX-License-Identifier: Apache-2.0
#include "dualband/mmwave/rvq.hpp"

#include "dualband/errors.hpp"
#include "dualband/linalg.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace dualband {

namespace {

arma::cx_mat random_normalized(int n_rows, int n_cols, Rng& rng) {
    arma::cx_mat m(n_rows, n_cols);
    for (auto& e : m)
        e = rng.cnormal();
    const double norm = arma::norm(m, "fro");
    return norm > 0.0 ? arma::cx_mat(m / norm) : m;
}

double similarity(const arma::cx_mat& x, const arma::cx_mat& c) {
    return spectral_norm_power(x.t() * c);
}

} // namespace

QuantizedChannel quantize_effective_channel(const arma::cx_mat& hbar, const RvqCodebook& cb) {
    if (cb.entries.empty())
        throw ConfigError("quantize_effective_channel: empty codebook");
    if (static_cast<int>(hbar.n_rows) != cb.n_rows || static_cast<int>(hbar.n_cols) != cb.n_cols)
        throw ShapeError("quantize_effective_channel: shape does not match codebook");
    int best = 0;
    double best_sim = -1.0;
    for (std::size_t i = 0; i < cb.entries.size(); ++i) {
        const double s = similarity(hbar, cb.entries[i]);
        if (s > best_sim) {
            best_sim = s;
            best = static_cast<int>(i);
        }
    }
    return {cb.entries[best], best};
}

RvqCodebook lloyd_refine(int bits, const std::vector<arma::cx_mat>& training) {
    if (bits < 1 || bits > 20)
        throw ConfigError("lloyd_refine: bits must be in [1, 20]");
    const int n_entries = 1 << bits;
    const int n_training = static_cast<int>(training.size());
    if (n_training < n_entries)
        throw ConfigError("lloyd_refine: need at least 2^bits training samples");
    const int n_rows = static_cast<int>(training.front().n_rows);
    const int n_cols = static_cast<int>(training.front().n_cols);

    RvqCodebook cb;
    cb.bits = bits;
    cb.n_rows = n_rows;
    cb.n_cols = n_cols;
    cb.entries.assign(training.begin(), training.begin() + n_entries);

    std::vector<int> assign(n_training, 0);
    std::vector<double> sim(n_training, 0.0);

    auto assign_all = [&](const std::vector<arma::cx_mat>& entries) {
        double total = 0.0;
        for (int t = 0; t < n_training; ++t) {
            int best = 0;
            double best_sim = -1.0;
            for (int e = 0; e < n_entries; ++e) {
                const double s = similarity(training[t], entries[e]);
                if (s > best_sim) {
                    best_sim = s;
                    best = e;
                }
            }
            assign[t] = best;
            sim[t] = best_sim;
            total += 1.0 - best_sim;
        }
        return total / n_training;
    };

    double distortion = assign_all(cb.entries);
    cb.distortion_history.push_back(distortion);

    for (int it = 0; it < 100; ++it) {
        // Centroid update: normalized cluster mean; empty clusters are
        // reseeded from the currently worst-matched sample.
        std::vector<arma::cx_mat> next(n_entries, arma::cx_mat(n_rows, n_cols, arma::fill::zeros));
        std::vector<int> count(n_entries, 0);
        for (int t = 0; t < n_training; ++t) {
            next[assign[t]] += training[t];
            ++count[assign[t]];
        }
        for (int e = 0; e < n_entries; ++e) {
            if (count[e] == 0) {
                int farthest = 0;
                double worst = std::numeric_limits<double>::infinity();
                for (int t = 0; t < n_training; ++t) {
                    if (sim[t] < worst) {
                        worst = sim[t];
                        farthest = t;
                    }
                }
                next[e] = training[farthest];
                sim[farthest] = 2.0; // keep one reseed per sample
                continue;
            }
            const double norm = arma::norm(next[e], "fro");
            if (norm > 0.0)
                next[e] /= norm;
            else
                next[e] = cb.entries[e];
        }

        const double next_distortion = assign_all(next);
        if (next_distortion > distortion) {
            // The spectral-norm metric does not guarantee descent for the
            // mean-centroid update; roll back and stop.
            assign_all(cb.entries);
            break;
        }
        cb.entries = std::move(next);
        cb.distortion_history.push_back(next_distortion);
        const double improvement = distortion - next_distortion;
        distortion = next_distortion;
        if (improvement < 1e-6 * std::max(distortion, 1e-12))
            break;
    }
    return cb;
}

RvqCodebook build_rvq_codebook(int bits, int n_rows, int n_cols, int n_training,
                               std::uint64_t seed) {
    if (n_rows < 1 || n_cols < 1)
        throw ConfigError("build_rvq_codebook: bad shape");
    Rng rng(seed);
    std::vector<arma::cx_mat> training(std::max(n_training, 1));
    for (auto& t : training)
        t = random_normalized(n_rows, n_cols, rng);
    return lloyd_refine(bits, training);
}

std::shared_ptr<const RvqCodebook> cached_rvq_codebook(int bits, int n_rows, int n_cols,
                                                       int n_training, std::uint64_t seed) {
    using Key = std::tuple<int, int, int, int, std::uint64_t>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const RvqCodebook>> cache;

    const Key key{bits, n_rows, n_cols, n_training, seed};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto built = std::make_shared<const RvqCodebook>(
        build_rvq_codebook(bits, n_rows, n_cols, n_training, seed));
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(built)).first->second;
}

} // namespace dualband
