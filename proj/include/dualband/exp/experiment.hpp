// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/exp/baselines.hpp"
#include "dualband/exp/config.hpp"
#include "dualband/rl/hrl.hpp"

#include <string>
#include <vector>

namespace dualband {

struct MetricsRow {
    std::uint64_t seed = 0;
    int episode = 0;
    PolicyKind policy = PolicyKind::hrl;
    double sweep_value = 0.0;
    double mean_reward_bps = 0.0;
    double mean_rate_bps = 0.0;
    double training_fraction = 0.0;
    double band_occupancy_mmwave = 0.0;
};

struct SummaryRow {
    PolicyKind policy = PolicyKind::hrl;
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    double last20_episodes_mean_reward_bps = 0.0;
    double last20_episodes_mean_rate_bps = 0.0;
    double last20_decisions_mean_reward_bps = 0.0; ///< final episode
};

struct ThresholdRow {
    std::uint64_t seed = 0;
    double sweep_value = 0.0;
    ThresholdSample sample;
};

struct ExperimentResult {
    std::vector<MetricsRow> metrics;
    std::vector<SummaryRow> summary;
    std::vector<ThresholdRow> thresholds; ///< hrl runs only
};

/// splitmix64-style mix so derived seeds do not collide.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Environment factory for one (config, seed-index, power) cell. Traces
/// depend only on (world seed, seed index, episode), never on the
/// policy, so every policy faces the same channels.
EnvFactory make_env_factory(const ScenarioConfig& cfg, int seed_index, double power_dbm);

/// Applies one sweep-axis value to a copy of the scenario.
ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepAxis axis, double value);

/// Runs every (policy, sweep value, seed) cell, possibly across
/// experiment.threads worker threads; cell results merge in a fixed
/// order so output is reproducible.
ExperimentResult run_experiment(const ScenarioConfig& cfg);

/// Writes metrics.csv, summary.csv and (for hrl) thresholds.csv with
/// stable headers and deterministic number formatting.
void write_experiment_csv(const ExperimentResult& result, const std::string& out_dir);

/// CSV headers (schema contract, also used by the parsing tests).
extern const char* const kMetricsCsvHeader;
extern const char* const kSummaryCsvHeader;
extern const char* const kThresholdsCsvHeader;

} // namespace dualband
