// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <random>

namespace dualband {

/// Seeded random stream. All stochastic code in the library draws through
/// this wrapper so that results are reproducible bit-for-bit for a given
/// seed, independent of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller. Draws two uniforms per call.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Standard circularly-symmetric complex normal CN(0, 1):
    /// real and imaginary parts iid N(0, 1/2).
    std::complex<double> cnormal() {
        const double s = M_SQRT1_2;
        return {s * normal(), s * normal()};
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace dualband
