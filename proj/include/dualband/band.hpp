// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace dualband {

enum class Band : int { sub6 = 0, mmwave = 1 };

inline const char* band_name(Band b) { return b == Band::sub6 ? "sub6" : "mmwave"; }

} // namespace dualband
