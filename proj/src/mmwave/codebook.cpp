// SPDX-License-Identifier: Apache-2.0
#include "dualband/mmwave/codebook.hpp"

#include "dualband/errors.hpp"

#include <cmath>

namespace dualband {

AnalogCodebook dft_codebook(int n_antennas, int size) {
    if (n_antennas < 1)
        throw ConfigError("dft_codebook: need at least one antenna");
    if (size < 0)
        size = n_antennas;
    if (size < 1)
        throw ConfigError("dft_codebook: need at least one beam");

    AnalogCodebook cb;
    cb.vectors.set_size(n_antennas, size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    for (int i = 0; i < size; ++i) {
        const double omega = 2.0 * M_PI * i / size;
        for (int n = 0; n < n_antennas; ++n)
            cb.vectors(n, i) = std::polar(scale, omega * n);
    }
    return cb;
}

} // namespace dualband
