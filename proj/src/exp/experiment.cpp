// SPDX-License-Identifier: Apache-2.0
#include "dualband/exp/experiment.hpp"

#include "dualband/channel/grid.hpp"
#include "dualband/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace dualband {

const char* const kMetricsCsvHeader =
    "seed,episode,policy,sweep_value,mean_reward_bps,mean_rate_bps,training_fraction,"
    "band_occupancy_mmwave";
const char* const kSummaryCsvHeader =
    "policy,sweep_value,seed,last20_episodes_mean_reward_bps,last20_episodes_mean_rate_bps,"
    "last20_decisions_mean_reward_bps";
const char* const kThresholdsCsvHeader =
    "seed,sweep_value,episode,decision,band,feedback_bps_hz,tau_low,tau_high,action,reward_bps";

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

EnvFactory make_env_factory(const ScenarioConfig& cfg, int seed_index, double power_dbm) {
    const double power_watt = 1e-3 * std::pow(10.0, power_dbm / 10.0);
    return [cfg, seed_index, power_watt](int episode) {
        // Trace seeds are policy-independent: all policies see the same
        // channel instance per (seed index, episode).
        const std::uint64_t trace_seed =
            mix_seed(cfg.world.seed, mix_seed(seed_index, episode));
        const int worst_span =
            std::max({cfg.env.m_dt, analog_overhead(cfg.mmwave.m_ss, cfg.mmwave.n_ss,
                                                    cfg.mmwave.codebook_bs(),
                                                    cfg.mmwave.codebook_ue()),
                      digital_overhead(cfg.mmwave.kappa_rvq, cfg.mmwave.kappa_channel),
                      std::max(1, pmi_overhead(cfg.sub6.nu_pmi, cfg.sub6.kappa_channel))});
        const int n_slots = cfg.env.episode_len_decisions * worst_span + 8;

        const Trajectory traj = generate_trajectory(cfg.world.grid, cfg.world.speed_mps,
                                                    n_slots, cfg.world.slot_duration_s,
                                                    trace_seed);
        ChannelTrace mm = generate_channel(traj, cfg.mmwave_channel(),
                                           cfg.world.blocker_density, trace_seed);
        ChannelTrace s6 = generate_channel(traj, cfg.sub6_channel(),
                                           cfg.world.blocker_density, trace_seed);
        return std::make_unique<LinkEnv>(std::move(mm), std::move(s6), cfg.mmwave, cfg.sub6,
                                         cfg.env, power_watt, mix_seed(trace_seed, 0xE7));
    };
}

ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepAxis axis, double value) {
    ScenarioConfig cfg = base;
    switch (axis) {
    case SweepAxis::none:
        break;
    case SweepAxis::power:
        cfg.experiment.transmit_power_dbm = {value};
        break;
    case SweepAxis::rvq_bits:
        cfg.mmwave.kappa_rvq = static_cast<int>(value);
        break;
    case SweepAxis::vehicle_density:
        cfg.world.blocker_density = value;
        break;
    case SweepAxis::upper_period:
        cfg.hrl.m_upper = static_cast<int>(value);
        break;
    }
    return cfg;
}

namespace {

struct Cell {
    PolicyKind policy;
    double sweep_value;
    int seed_index;
};

struct CellResult {
    std::vector<MetricsRow> metrics;
    std::vector<SummaryRow> summary;
    std::vector<ThresholdRow> thresholds;
};

double mean_tail(const std::vector<double>& v, std::size_t n) {
    if (v.empty())
        return 0.0;
    const std::size_t start = v.size() > n ? v.size() - n : 0;
    double sum = 0.0;
    for (std::size_t i = start; i < v.size(); ++i)
        sum += v[i];
    return sum / static_cast<double>(v.size() - start);
}

CellResult run_cell(const ScenarioConfig& base, const Cell& cell) {
    ScenarioConfig cfg = apply_sweep(base, base.experiment.sweep, cell.sweep_value);
    const double power_dbm = cfg.experiment.transmit_power_dbm.front();
    const EnvFactory factory = make_env_factory(cfg, cell.seed_index, power_dbm);
    const std::uint64_t agent_seed =
        mix_seed(cfg.experiment.base_seed,
                 mix_seed(cell.seed_index, static_cast<int>(cell.policy) + 101));

    LearningCurve curve;
    HrlDiagnostics diag;
    switch (cell.policy) {
    case PolicyKind::genie:
        curve = run_oracle(factory, cfg.experiment.n_episodes, false);
        break;
    case PolicyKind::greedy:
        curve = run_oracle(factory, cfg.experiment.n_episodes, true);
        break;
    case PolicyKind::three_threshold:
        curve = train_three_threshold(factory, cfg.drl, cfg.experiment.n_episodes, agent_seed);
        break;
    case PolicyKind::hrl:
        curve = train_hrl(factory, cfg.hrl, cfg.experiment.n_episodes, agent_seed, &diag);
        break;
    }

    CellResult out;
    std::vector<double> ep_rewards, ep_rates;
    for (std::size_t ep = 0; ep < curve.episodes.size(); ++ep) {
        const EpisodeLog& log = curve.episodes[ep];
        MetricsRow row;
        row.seed = cell.seed_index;
        row.episode = static_cast<int>(ep);
        row.policy = cell.policy;
        row.sweep_value = cell.sweep_value;
        row.mean_reward_bps = log.mean_reward_bps;
        row.mean_rate_bps = log.mean_rate_bps;
        row.training_fraction = log.training_fraction;
        row.band_occupancy_mmwave = log.band_occupancy_mmwave;
        out.metrics.push_back(row);
        ep_rewards.push_back(log.mean_reward_bps);
        ep_rates.push_back(log.mean_rate_bps);
    }
    SummaryRow sum;
    sum.policy = cell.policy;
    sum.sweep_value = cell.sweep_value;
    sum.seed = cell.seed_index;
    sum.last20_episodes_mean_reward_bps = mean_tail(ep_rewards, 20);
    sum.last20_episodes_mean_rate_bps = mean_tail(ep_rates, 20);
    sum.last20_decisions_mean_reward_bps = mean_tail(curve.last_episode_decision_rewards, 20);
    out.summary.push_back(sum);

    for (const ThresholdSample& ts : diag.thresholds)
        out.thresholds.push_back(ThresholdRow{static_cast<std::uint64_t>(cell.seed_index),
                                              cell.sweep_value, ts});
    return out;
}

} // namespace

ExperimentResult run_experiment(const ScenarioConfig& cfg) {
    std::vector<double> sweep_values = cfg.experiment.sweep == SweepAxis::none
                                           ? std::vector<double>{cfg.experiment
                                                                     .transmit_power_dbm.front()}
                                           : cfg.experiment.sweep_values;
    if (cfg.experiment.sweep == SweepAxis::power)
        sweep_values = cfg.experiment.sweep_values;

    std::vector<Cell> cells;
    for (PolicyKind policy : cfg.experiment.policies)
        for (double value : sweep_values)
            for (int seed = 0; seed < cfg.experiment.n_seeds; ++seed)
                cells.push_back(Cell{policy, value, seed});

    std::vector<CellResult> results(cells.size());
    const int n_threads = std::max(1, std::min<int>(cfg.experiment.threads,
                                                    static_cast<int>(cells.size())));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            results[i] = run_cell(cfg, cells[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    results[i] = run_cell(cfg, cells[i]);
            });
        for (std::thread& t : pool)
            t.join();
    }

    ExperimentResult merged;
    for (const CellResult& r : results) {
        merged.metrics.insert(merged.metrics.end(), r.metrics.begin(), r.metrics.end());
        merged.summary.insert(merged.summary.end(), r.summary.begin(), r.summary.end());
        merged.thresholds.insert(merged.thresholds.end(), r.thresholds.begin(),
                                 r.thresholds.end());
    }
    return merged;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

void write_experiment_csv(const ExperimentResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream os(out_dir + "/metrics.csv", std::ios::binary);
        os << kMetricsCsvHeader << "\n";
        for (const MetricsRow& r : result.metrics)
            os << r.seed << ',' << r.episode << ',' << policy_name(r.policy) << ','
               << fmt(r.sweep_value) << ',' << fmt(r.mean_reward_bps) << ','
               << fmt(r.mean_rate_bps) << ',' << fmt(r.training_fraction) << ','
               << fmt(r.band_occupancy_mmwave) << "\n";
    }
    {
        std::ofstream os(out_dir + "/summary.csv", std::ios::binary);
        os << kSummaryCsvHeader << "\n";
        for (const SummaryRow& r : result.summary)
            os << policy_name(r.policy) << ',' << fmt(r.sweep_value) << ',' << r.seed << ','
               << fmt(r.last20_episodes_mean_reward_bps) << ','
               << fmt(r.last20_episodes_mean_rate_bps) << ','
               << fmt(r.last20_decisions_mean_reward_bps) << "\n";
    }
    if (!result.thresholds.empty()) {
        std::ofstream os(out_dir + "/thresholds.csv", std::ios::binary);
        os << kThresholdsCsvHeader << "\n";
        for (const ThresholdRow& r : result.thresholds)
            os << r.seed << ',' << fmt(r.sweep_value) << ',' << r.sample.episode << ','
               << r.sample.decision << ',' << r.sample.band << ',' << fmt(r.sample.feedback)
               << ',' << fmt(r.sample.tau_low) << ',' << fmt(r.sample.tau_high) << ','
               << r.sample.action_kind << ',' << fmt(r.sample.reward_bps) << "\n";
    }
}

} // namespace dualband
