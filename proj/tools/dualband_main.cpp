// SPDX-License-Identifier: Apache-2.0
//
// dualband — dual-band link simulator and band/beam-management learners.
//
// Subcommands:
//   run <config.ini>     run the configured experiment, write CSV outputs
//   sweep <config.ini>   like run, with --axis/--values overriding the sweep
//   trace gen <config>   generate one channel trace file ([channel] section)
//   trace info <file>    print a trace file's header
//   check                fast built-in invariant/oracle self-checks
//
// Exit codes: 0 ok, 1 config/runtime error, 2 usage error.

#include "dualband/channel/trace_io.hpp"
#include "dualband/errors.hpp"
#include "dualband/exp/experiment.hpp"
#include "dualband/linalg.hpp"

#include <cstring>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace dualband;

int usage(std::ostream& os) {
    os << "usage: dualband <subcommand> [options]\n"
          "  run <config.ini>   [--out-dir DIR] [--seed N] [--policy LIST] [--threads N]\n"
          "                     [--override section.key=value]...\n"
          "  sweep <config.ini> [--axis power|rvq_bits|vehicle_density|upper_period]\n"
          "                     [--values v1,v2,...] (plus run options)\n"
          "  trace gen <config.ini> --out FILE [--slots N]\n"
          "  trace info <FILE>\n"
          "  check\n";
    return 2;
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::string axis;
    std::string values;
};

bool parse_common(int argc, char** argv, int start, CommonArgs& args) {
    for (int i = start; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&](const char* flag) -> const char* {
            if (i + 1 >= argc) {
                std::cerr << "dualband: " << flag << " needs a value\n";
                return nullptr;
            }
            return argv[++i];
        };
        if (a == "--out-dir") {
            const char* v = next("--out-dir");
            if (!v)
                return false;
            args.out_dir = v;
        } else if (a == "--override") {
            const char* v = next("--override");
            if (!v)
                return false;
            args.overrides.push_back(v);
        } else if (a == "--seed") {
            const char* v = next("--seed");
            if (!v)
                return false;
            args.overrides.push_back(std::string("experiment.base_seed=") + v);
        } else if (a == "--policy") {
            const char* v = next("--policy");
            if (!v)
                return false;
            args.overrides.push_back(std::string("experiment.policy=") + v);
        } else if (a == "--threads") {
            const char* v = next("--threads");
            if (!v)
                return false;
            args.overrides.push_back(std::string("experiment.threads=") + v);
        } else if (a == "--axis") {
            const char* v = next("--axis");
            if (!v)
                return false;
            args.axis = v;
        } else if (a == "--values") {
            const char* v = next("--values");
            if (!v)
                return false;
            args.values = v;
        } else if (args.config_path.empty() && !a.starts_with("--")) {
            args.config_path = a;
        } else {
            std::cerr << "dualband: unknown argument '" << a << "'\n";
            return false;
        }
    }
    return true;
}

int cmd_run(int argc, char** argv, bool is_sweep) {
    CommonArgs args;
    if (!parse_common(argc, argv, 2, args))
        return usage(std::cerr);
    if (args.config_path.empty()) {
        std::cerr << "dualband: missing config path\n";
        return usage(std::cerr);
    }
    IniFile ini = IniFile::parse_file(args.config_path);
    for (const std::string& o : args.overrides)
        ini.apply_override(o);
    if (is_sweep) {
        if (!args.axis.empty())
            ini.apply_override("experiment.sweep_axis=" + args.axis);
        if (!args.values.empty())
            ini.apply_override("experiment.sweep_values=" + args.values);
    }
    const ScenarioConfig cfg = scenario_from_ini(ini);
    std::cout << "# effective config\n" << scenario_to_string(cfg) << "# end config\n";

    const ExperimentResult result = run_experiment(cfg);
    write_experiment_csv(result, args.out_dir);
    std::cout << "wrote " << result.metrics.size() << " metric rows to " << args.out_dir
              << "/metrics.csv\n";
    return 0;
}

int cmd_trace(int argc, char** argv) {
    if (argc < 3)
        return usage(std::cerr);
    const std::string sub = argv[2];
    if (sub == "info") {
        if (argc < 4) {
            std::cerr << "dualband: trace info needs a file\n";
            return usage(std::cerr);
        }
        const ChannelTrace t = load_trace(argv[3]);
        std::cout << "band " << band_name(t.band) << "\nn_rx " << t.n_rx << "\nn_tx " << t.n_tx
                  << "\nn_subcarriers " << t.n_subcarriers << "\nn_slots " << t.n_slots
                  << "\nbandwidth_hz " << t.bandwidth_hz << "\ncarrier_hz " << t.carrier_hz
                  << "\nslot_duration_s " << t.slot_duration_s << "\n";
        return 0;
    }
    if (sub != "gen")
        return usage(std::cerr);

    std::string out_path;
    int n_slots = 1000;
    std::string config_path;
    for (int i = 3; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--out" && i + 1 < argc)
            out_path = argv[++i];
        else if (a == "--slots" && i + 1 < argc)
            n_slots = std::atoi(argv[++i]);
        else if (config_path.empty() && !a.starts_with("--"))
            config_path = a;
        else {
            std::cerr << "dualband: unknown argument '" << a << "'\n";
            return usage(std::cerr);
        }
    }
    if (config_path.empty() || out_path.empty()) {
        std::cerr << "dualband: trace gen needs a config and --out\n";
        return usage(std::cerr);
    }

    // Single-band [channel] schema: carrier_hz, bandwidth_hz,
    // n_subcarriers, n_tx, n_rx, cluster_count, blocker_density, seed.
    const IniFile ini = IniFile::parse_file(config_path);
    if (!ini.sections.count("channel"))
        throw ConfigError("trace gen: config needs a [channel] section");
    ChannelConfig ch;
    double blocker_density = 0.0;
    std::uint64_t seed = 1;
    double speed = 11.11, slot_s = 1e-4;
    GridConfig grid{4, 4, 100.0};
    for (const auto& [key, value] : ini.sections.at("channel")) {
        if (key == "carrier_hz")
            ch.carrier_hz = std::stod(value);
        else if (key == "bandwidth_hz")
            ch.bandwidth_hz = std::stod(value);
        else if (key == "n_subcarriers")
            ch.n_subcarriers = std::stoi(value);
        else if (key == "n_tx")
            ch.n_tx = std::stoi(value);
        else if (key == "n_rx")
            ch.n_rx = std::stoi(value);
        else if (key == "cluster_count")
            ch.cluster_count = std::stoi(value);
        else if (key == "blocker_density")
            blocker_density = std::stod(value);
        else if (key == "seed")
            seed = std::stoull(value);
        else if (key == "band")
            ch.band = value == "sub6" ? Band::sub6 : Band::mmwave;
        else if (key == "speed_mps")
            speed = std::stod(value);
        else if (key == "slot_duration_s")
            slot_s = std::stod(value);
        else
            throw ConfigError("trace gen: unknown [channel] key '" + key + "'");
    }
    ch.bs_x_m = (std::max(grid.n_streets_x, 2) - 1) * grid.block_m / 2 + 7.5;
    ch.bs_y_m = (std::max(grid.n_streets_y, 2) - 1) * grid.block_m / 2 + 12.5;
    const Trajectory traj = generate_trajectory(grid, speed, n_slots, slot_s, seed);
    const ChannelTrace trace = generate_channel(traj, ch, blocker_density, seed);
    save_trace(trace, out_path);
    std::cout << "wrote " << out_path << " (" << trace.n_slots << " slots)\n";
    return 0;
}

// Fast self-checks over the core formulas and oracle equalities.
int cmd_check() {
    int failures = 0;
    auto check = [&](bool ok, const char* what) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        failures += !ok;
    };

    check(analog_overhead(1, 4, 32, 16) == 128, "analog overhead, reference parameters");
    check(digital_overhead(8, 1) == 8, "digital overhead, reference parameters");
    check(pmi_overhead(16, 1) == 4, "PMI overhead, reference parameters");

    const auto q = mmse_estimation(1.0, 10.0, 10.0);
    check(std::abs(q.mmse - 1.0 / 101.0) < 1e-15 &&
              std::abs(q.snr_eff - 1000.0 / 111.0) < 1e-12,
          "MMSE / effective SNR closed forms");

    const AnalogCodebook cb = dft_codebook(8);
    double max_cross = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            max_cross = std::max(max_cross,
                                 std::abs(arma::cdot(cb.beam(i), cb.beam(j))));
    check(max_cross < 1e-12, "DFT codebook orthogonality");

    Rng rng(7);
    const RvqCodebook rvq = build_rvq_codebook(3, 2, 2, 256, 11);
    bool scan_same = true;
    for (int t = 0; t < 32; ++t) {
        arma::cx_mat x(2, 2);
        for (auto& e : x)
            e = rng.cnormal();
        const auto got = quantize_effective_channel(x, rvq);
        int best = 0;
        double best_s = -1.0;
        for (std::size_t i = 0; i < rvq.entries.size(); ++i) {
            const double s = spectral_norm_power(x.t() * rvq.entries[i]);
            if (s > best_s) {
                best_s = s;
                best = static_cast<int>(i);
            }
        }
        scan_same = scan_same && best == got.index;
    }
    check(scan_same, "RVQ quantizer equals exhaustive scan");

    bool masked_ok = true;
    for (int t = 0; t < 20000; ++t) {
        const double thresholds[3] = {rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2)};
        const EnvAction a = thresholds_to_action(Band::sub6, rng.uniform(0, 2), thresholds,
                                                 ThresholdScheme::three_threshold);
        masked_ok = masked_ok && a.kind != ActionKind::analog_training;
    }
    check(masked_ok, "analog training masked at sub-6");

    std::cout << (failures ? "self-check FAILED\n" : "self-check passed\n");
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2)
        return usage(std::cerr);
    const std::string cmd = argv[1];
    try {
        if (cmd == "run")
            return cmd_run(argc, argv, false);
        if (cmd == "sweep")
            return cmd_run(argc, argv, true);
        if (cmd == "trace")
            return cmd_trace(argc, argv);
        if (cmd == "check")
            return cmd_check();
        if (cmd == "--help" || cmd == "-h" || cmd == "help") {
            usage(std::cout);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "dualband: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "dualband: unknown subcommand '" << cmd << "'\n";
    return usage(std::cerr);
}
