// SPDX-License-Identifier: Apache-2.0
#include "dualband/channel/trace_io.hpp"

#include "dualband/errors.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace dualband {

namespace {

constexpr char kMagic[4] = {'D', 'B', 'C', 'T'};
constexpr std::uint32_t kVersion = 1;
// Caps so a corrupt header cannot request absurd allocations.
constexpr std::uint32_t kMaxDim = 1u << 20;

template <typename T> void put(std::ostream& os, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T> T get(std::istream& is, const char* field) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is)
        throw FormatError(std::string("trace file truncated while reading ") + field);
    return v;
}

} // namespace

void save_trace(const ChannelTrace& trace, const std::string& path) {
    if (trace.n_slots != static_cast<int>(trace.frames.size()) ||
        trace.n_slots != static_cast<int>(trace.los_flag.size()) ||
        trace.n_slots != static_cast<int>(trace.large_scale_gain.n_elem))
        throw FormatError("save_trace: slot-indexed fields disagree on n_slots");
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw FormatError("save_trace: cannot open " + path);

    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint8_t>(os, static_cast<std::uint8_t>(trace.band));
    put<std::uint32_t>(os, trace.n_rx);
    put<std::uint32_t>(os, trace.n_tx);
    put<std::uint32_t>(os, trace.n_subcarriers);
    put<std::uint32_t>(os, trace.n_slots);
    put<double>(os, trace.bandwidth_hz);
    put<double>(os, trace.carrier_hz);
    put<double>(os, trace.slot_duration_s);
    for (int m = 0; m < trace.n_slots; ++m)
        put<double>(os, trace.large_scale_gain[m]);
    os.write(reinterpret_cast<const char*>(trace.los_flag.data()), trace.n_slots);
    for (int m = 0; m < trace.n_slots; ++m) {
        const arma::cx_cube& frame = trace.frames[m];
        if (static_cast<int>(frame.n_rows) != trace.n_rx ||
            static_cast<int>(frame.n_cols) != trace.n_tx ||
            static_cast<int>(frame.n_slices) != trace.n_subcarriers)
            throw FormatError("save_trace: frame dims inconsistent with header");
        os.write(reinterpret_cast<const char*>(frame.memptr()),
                 static_cast<std::streamsize>(frame.n_elem * sizeof(std::complex<double>)));
    }
    if (!os)
        throw FormatError("save_trace: write failed for " + path);
}

ChannelTrace load_trace(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw FormatError("load_trace: cannot open " + path);

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("load_trace: bad magic bytes");
    const auto version = get<std::uint32_t>(is, "version");
    if (version != kVersion)
        throw FormatError("load_trace: unsupported version " + std::to_string(version));
    const auto band = get<std::uint8_t>(is, "band");
    if (band > 1)
        throw FormatError("load_trace: bad band value " + std::to_string(band));

    ChannelTrace trace;
    trace.band = static_cast<Band>(band);
    const auto n_rx = get<std::uint32_t>(is, "dims");
    const auto n_tx = get<std::uint32_t>(is, "dims");
    const auto n_k = get<std::uint32_t>(is, "dims");
    const auto n_slots = get<std::uint32_t>(is, "dims");
    if (n_rx == 0 || n_tx == 0 || n_k == 0 || n_slots == 0 || n_rx > kMaxDim || n_tx > kMaxDim ||
        n_k > kMaxDim || n_slots > kMaxDim)
        throw FormatError("load_trace: dims out of range");
    trace.n_rx = static_cast<int>(n_rx);
    trace.n_tx = static_cast<int>(n_tx);
    trace.n_subcarriers = static_cast<int>(n_k);
    trace.n_slots = static_cast<int>(n_slots);
    trace.bandwidth_hz = get<double>(is, "bandwidth_hz");
    trace.carrier_hz = get<double>(is, "carrier_hz");
    trace.slot_duration_s = get<double>(is, "slot_duration_s");

    trace.large_scale_gain.set_size(trace.n_slots);
    for (int m = 0; m < trace.n_slots; ++m)
        trace.large_scale_gain[m] = get<double>(is, "large_scale_gain payload length");
    trace.los_flag.resize(trace.n_slots);
    is.read(reinterpret_cast<char*>(trace.los_flag.data()), trace.n_slots);
    if (!is)
        throw FormatError("trace file truncated while reading los_flag payload length");

    trace.frames.resize(trace.n_slots);
    for (int m = 0; m < trace.n_slots; ++m) {
        arma::cx_cube& frame = trace.frames[m];
        frame.set_size(trace.n_rx, trace.n_tx, trace.n_subcarriers);
        is.read(reinterpret_cast<char*>(frame.memptr()),
                static_cast<std::streamsize>(frame.n_elem * sizeof(std::complex<double>)));
        if (!is)
            throw FormatError("load_trace: payload length shorter than header dims imply");
    }
    // Exactly one trace per file: trailing bytes mean the header dims and
    // the payload length disagree.
    is.peek();
    if (!is.eof())
        throw FormatError("load_trace: payload length longer than header dims imply");
    return trace;
}

} // namespace dualband
