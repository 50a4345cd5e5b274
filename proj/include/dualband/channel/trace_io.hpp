// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/channel/model.hpp"

#include <string>

namespace dualband {

/// Binary trace container, version 1, little-endian throughout:
///
///   magic            "DBCT" (4 bytes)
///   version          u32 = 1
///   band             u8 (0 sub6, 1 mmwave)
///   n_rx, n_tx       u32 each
///   n_subcarriers    u32
///   n_slots          u32
///   bandwidth_hz     f64
///   carrier_hz       f64
///   slot_duration_s  f64
///   large_scale_gain f64 x n_slots
///   los_flag         u8 x n_slots
///   h                f64 pairs (re, im), slot-major then subcarrier-major,
///                    column-major n_rx x n_tx within a matrix
///
/// Round trips are bit-exact. Malformed input raises FormatError naming
/// the offending field.
void save_trace(const ChannelTrace& trace, const std::string& path);
ChannelTrace load_trace(const std::string& path);

} // namespace dualband
