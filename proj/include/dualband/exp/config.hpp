// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/channel/grid.hpp"
#include "dualband/channel/model.hpp"
#include "dualband/env/link_env.hpp"
#include "dualband/rl/hrl.hpp"

#include <map>
#include <string>
#include <vector>

namespace dualband {

/// Line-oriented [section] / key = value text config. '#' and ';' start
/// comments. Parse errors and unknown keys raise ConfigError naming the
/// offending line or field.
struct IniFile {
    std::map<std::string, std::map<std::string, std::string>> sections;

    static IniFile parse_string(const std::string& text, const std::string& origin = "<string>");
    static IniFile parse_file(const std::string& path);

    /// "section.key=value" (CLI --override form).
    void apply_override(const std::string& dotted_assignment);

    bool has(const std::string& section, const std::string& key) const;
    const std::string& get(const std::string& section, const std::string& key) const;
};

enum class PolicyKind { genie, greedy, three_threshold, hrl };
const char* policy_name(PolicyKind p);
PolicyKind policy_from_name(const std::string& name);

enum class SweepAxis { none, power, rvq_bits, vehicle_density, upper_period };
const char* sweep_axis_name(SweepAxis a);

struct ExperimentConfig {
    std::vector<PolicyKind> policies{PolicyKind::hrl};
    int n_episodes = 100;
    int n_seeds = 1;
    std::uint64_t base_seed = 1;
    std::vector<double> transmit_power_dbm{30.0};
    SweepAxis sweep = SweepAxis::none;
    std::vector<double> sweep_values;
    int threads = 1;
};

/// Mobility and shared channel-world knobs ([channel] section of an
/// experiment config).
struct WorldConfig {
    GridConfig grid{4, 4, 100.0};
    double speed_mps = 11.11;
    double slot_duration_s = 1e-4;
    double blocker_density = 20.0;
    std::uint64_t seed = 1;
    double mmwave_carrier_hz = 28e9;
    double sub6_carrier_hz = 3.5e9;
    int cluster_count_mmwave = 5;
    int cluster_count_sub6 = 8;
    double k_factor_db = 9.0;
    double delay_spread_ns = 100.0;
    double blockage_rate_per_density = 5e-4;
    double mean_blockage_slots = 120.0;
    /// Blockage hits mmWave harder than sub-6 (diffraction around
    /// vehicle-scale obstacles at longer wavelengths).
    double pathloss_exp_nlos_mmwave = 3.2;
    double pathloss_exp_nlos_sub6 = 2.6;
    double blockage_sensitivity_mmwave = 1.0;
    double blockage_sensitivity_sub6 = 0.0;
    double bs_x_m = 150.0;
    double bs_y_m = 170.0;
};

/// Everything one experiment run needs, in one serializable record.
struct ScenarioConfig {
    WorldConfig world;
    MmWaveLinkConfig mmwave;
    Sub6LinkConfig sub6;
    EnvConfig env;
    DdpgConfig drl;
    HrlConfig hrl;
    ExperimentConfig experiment;

    /// Per-band generation configs derived from the sections.
    ChannelConfig mmwave_channel() const;
    ChannelConfig sub6_channel() const;
};

/// Validates section and key names; unknown entries raise ConfigError
/// naming the field.
ScenarioConfig scenario_from_ini(const IniFile& ini);

/// Effective-config echo (round-trips through scenario_from_ini).
std::string scenario_to_string(const ScenarioConfig& cfg);

} // namespace dualband
