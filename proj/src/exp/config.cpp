// SPDX-License-Identifier: Apache-2.0
#include "dualband/exp/config.hpp"

#include "dualband/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dualband {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

double to_double(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: [" + section + "] " + key + " = '" + v + "' is not a number");
    }
}

int to_int(const std::string& section, const std::string& key, const std::string& v) {
    const double d = to_double(section, key, v);
    if (d != std::floor(d))
        throw ConfigError("config: [" + section + "] " + key + " must be an integer");
    return static_cast<int>(d);
}

bool to_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "off" || v == "0")
        return false;
    throw ConfigError("config: [" + section + "] " + key + " must be a boolean");
}

/// Tracks which keys were consumed so leftovers can be reported by name.
class SectionReader {
public:
    SectionReader(const IniFile& ini, std::string section) : ini_(ini), section_(std::move(section)) {}

    bool present() const { return ini_.sections.count(section_) > 0; }

    template <typename F> void take(const std::string& key, F&& apply) {
        if (ini_.has(section_, key)) {
            apply(ini_.get(section_, key));
            seen_.insert(key);
        }
    }
    void number(const std::string& key, double& out) {
        take(key, [&](const std::string& v) { out = to_double(section_, key, v); });
    }
    void integer(const std::string& key, int& out) {
        take(key, [&](const std::string& v) { out = to_int(section_, key, v); });
    }
    void unsigned64(const std::string& key, std::uint64_t& out) {
        take(key, [&](const std::string& v) {
            out = static_cast<std::uint64_t>(to_double(section_, key, v));
        });
    }
    void boolean(const std::string& key, bool& out) {
        take(key, [&](const std::string& v) { out = to_bool(section_, key, v); });
    }
    void finish() const {
        if (!present())
            return;
        for (const auto& [key, value] : ini_.sections.at(section_))
            if (!seen_.count(key))
                throw ConfigError("config: unknown key '" + key + "' in section [" + section_ +
                                  "]");
    }

private:
    const IniFile& ini_;
    std::string section_;
    std::set<std::string> seen_;
};

} // namespace

IniFile IniFile::parse_string(const std::string& text, const std::string& origin) {
    IniFile ini;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            ini.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": expected key = value");
        if (section.empty())
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": key outside any [section]");
        ini.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return ini;
}

IniFile IniFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << is.rdbuf();
    return parse_string(buffer.str(), path);
}

void IniFile::apply_override(const std::string& dotted) {
    const auto eq = dotted.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override: expected section.key=value, got '" + dotted + "'");
    const std::string path = trim(dotted.substr(0, eq));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override: expected section.key=value, got '" + dotted + "'");
    sections[path.substr(0, dot)][path.substr(dot + 1)] = trim(dotted.substr(eq + 1));
}

bool IniFile::has(const std::string& section, const std::string& key) const {
    const auto it = sections.find(section);
    return it != sections.end() && it->second.count(key) > 0;
}

const std::string& IniFile::get(const std::string& section, const std::string& key) const {
    return sections.at(section).at(key);
}

const char* policy_name(PolicyKind p) {
    switch (p) {
    case PolicyKind::genie: return "genie";
    case PolicyKind::greedy: return "greedy";
    case PolicyKind::three_threshold: return "three_threshold";
    case PolicyKind::hrl: return "hrl";
    }
    return "?";
}

PolicyKind policy_from_name(const std::string& name) {
    for (PolicyKind p : {PolicyKind::genie, PolicyKind::greedy, PolicyKind::three_threshold,
                         PolicyKind::hrl})
        if (name == policy_name(p))
            return p;
    throw ConfigError("config: unknown policy '" + name + "'");
}

const char* sweep_axis_name(SweepAxis a) {
    switch (a) {
    case SweepAxis::none: return "none";
    case SweepAxis::power: return "power";
    case SweepAxis::rvq_bits: return "rvq_bits";
    case SweepAxis::vehicle_density: return "vehicle_density";
    case SweepAxis::upper_period: return "upper_period";
    }
    return "?";
}

ChannelConfig ScenarioConfig::mmwave_channel() const {
    ChannelConfig c;
    c.band = Band::mmwave;
    c.carrier_hz = world.mmwave_carrier_hz;
    c.bandwidth_hz = mmwave.bandwidth_hz;
    c.n_subcarriers = mmwave.n_subcarriers;
    c.n_tx = mmwave.n_bs;
    c.n_rx = mmwave.n_ue;
    c.cluster_count = world.cluster_count_mmwave;
    c.k_factor_db = world.k_factor_db;
    c.delay_spread_s = world.delay_spread_ns * 1e-9;
    c.blockage_rate_per_density = world.blockage_rate_per_density;
    c.mean_blockage_slots = world.mean_blockage_slots;
    c.pathloss_exp_nlos = world.pathloss_exp_nlos_mmwave;
    c.blockage_sensitivity = world.blockage_sensitivity_mmwave;
    c.bs_x_m = world.bs_x_m;
    c.bs_y_m = world.bs_y_m;
    return c;
}

ChannelConfig ScenarioConfig::sub6_channel() const {
    ChannelConfig c = mmwave_channel();
    c.pathloss_exp_nlos = world.pathloss_exp_nlos_sub6;
    c.blockage_sensitivity = world.blockage_sensitivity_sub6;
    c.band = Band::sub6;
    c.carrier_hz = world.sub6_carrier_hz;
    c.bandwidth_hz = sub6.bandwidth_hz;
    c.n_subcarriers = sub6.n_subcarriers;
    c.n_tx = sub6.n_bs;
    c.n_rx = sub6.n_ue;
    c.cluster_count = world.cluster_count_sub6;
    return c;
}

ScenarioConfig scenario_from_ini(const IniFile& ini) {
    static const std::set<std::string> known_sections{"channel", "mmwave", "sub6", "env",
                                                      "drl", "hrl", "experiment"};
    for (const auto& [name, _] : ini.sections)
        if (!known_sections.count(name))
            throw ConfigError("config: unknown section [" + name + "]");

    ScenarioConfig cfg;

    SectionReader ch(ini, "channel");
    ch.integer("grid_nx", cfg.world.grid.n_streets_x);
    ch.integer("grid_ny", cfg.world.grid.n_streets_y);
    ch.number("block_m", cfg.world.grid.block_m);
    ch.number("speed_mps", cfg.world.speed_mps);
    ch.number("slot_duration_s", cfg.world.slot_duration_s);
    ch.number("blocker_density", cfg.world.blocker_density);
    ch.unsigned64("seed", cfg.world.seed);
    ch.number("mmwave_carrier_hz", cfg.world.mmwave_carrier_hz);
    ch.number("sub6_carrier_hz", cfg.world.sub6_carrier_hz);
    ch.integer("cluster_count_mmwave", cfg.world.cluster_count_mmwave);
    ch.integer("cluster_count_sub6", cfg.world.cluster_count_sub6);
    ch.number("k_factor_db", cfg.world.k_factor_db);
    ch.number("delay_spread_ns", cfg.world.delay_spread_ns);
    ch.number("blockage_rate_per_density", cfg.world.blockage_rate_per_density);
    ch.number("mean_blockage_slots", cfg.world.mean_blockage_slots);
    ch.number("pathloss_exp_nlos_mmwave", cfg.world.pathloss_exp_nlos_mmwave);
    ch.number("pathloss_exp_nlos_sub6", cfg.world.pathloss_exp_nlos_sub6);
    ch.number("blockage_sensitivity_mmwave", cfg.world.blockage_sensitivity_mmwave);
    ch.number("blockage_sensitivity_sub6", cfg.world.blockage_sensitivity_sub6);
    ch.number("bs_x_m", cfg.world.bs_x_m);
    ch.number("bs_y_m", cfg.world.bs_y_m);
    ch.finish();

    SectionReader mm(ini, "mmwave");
    mm.integer("n_bs", cfg.mmwave.n_bs);
    mm.integer("n_ue", cfg.mmwave.n_ue);
    mm.integer("n_bs_rf", cfg.mmwave.n_bs_rf);
    mm.integer("n_ue_rf", cfg.mmwave.n_ue_rf);
    mm.integer("n_s", cfg.mmwave.n_s);
    mm.integer("n_subcarriers", cfg.mmwave.n_subcarriers);
    mm.number("bandwidth_hz", cfg.mmwave.bandwidth_hz);
    mm.integer("m_ss", cfg.mmwave.m_ss);
    mm.integer("n_ss", cfg.mmwave.n_ss);
    mm.integer("kappa_rvq", cfg.mmwave.kappa_rvq);
    mm.integer("kappa_channel", cfg.mmwave.kappa_channel);
    mm.number("beta_rf", cfg.mmwave.beta_rf);
    mm.number("zeta_rf", cfg.mmwave.zeta_rf);
    mm.number("beta_bb", cfg.mmwave.beta_bb);
    mm.number("zeta_bb", cfg.mmwave.zeta_bb);
    mm.integer("nu_bs", cfg.mmwave.nu_bs);
    mm.integer("nu_ue", cfg.mmwave.nu_ue);
    mm.number("noise_figure_db", cfg.mmwave.noise_figure_db);
    mm.integer("rvq_training", cfg.mmwave.rvq_training);
    mm.unsigned64("rvq_seed", cfg.mmwave.rvq_seed);
    mm.finish();

    SectionReader s6(ini, "sub6");
    s6.integer("n_bs", cfg.sub6.n_bs);
    s6.integer("n_ue", cfg.sub6.n_ue);
    s6.integer("n_s", cfg.sub6.n_s);
    s6.integer("n_subcarriers", cfg.sub6.n_subcarriers);
    s6.number("bandwidth_hz", cfg.sub6.bandwidth_hz);
    s6.integer("nu_pmi", cfg.sub6.nu_pmi);
    s6.integer("kappa_channel", cfg.sub6.kappa_channel);
    s6.number("beta", cfg.sub6.beta);
    s6.number("zeta", cfg.sub6.zeta);
    s6.integer("pmi_oversampling", cfg.sub6.pmi_oversampling);
    s6.number("noise_figure_db", cfg.sub6.noise_figure_db);
    s6.finish();

    SectionReader env(ini, "env");
    env.integer("m_dt", cfg.env.m_dt);
    env.integer("episode_len_decisions", cfg.env.episode_len_decisions);
    env.integer("stale_horizon_slots", cfg.env.stale_horizon_slots);
    env.take("initial_band", [&](const std::string& v) {
        if (v == "sub6")
            cfg.env.initial_band = Band::sub6;
        else if (v == "mmwave")
            cfg.env.initial_band = Band::mmwave;
        else
            throw ConfigError("config: [env] initial_band must be sub6 or mmwave");
    });
    env.number("stale_feedback_decay", cfg.env.stale_feedback_decay);
    env.finish();

    SectionReader drl(ini, "drl");
    drl.number("gamma", cfg.drl.gamma);
    drl.integer("minibatch", cfg.drl.minibatch);
    drl.integer("buffer_capacity", cfg.drl.buffer_capacity);
    drl.number("eta", cfg.drl.eta);
    drl.number("actor_lr", cfg.drl.actor_lr);
    drl.number("critic_lr", cfg.drl.critic_lr);
    drl.number("noise_std_start", cfg.drl.noise_std_start);
    drl.number("noise_std_end", cfg.drl.noise_std_end);
    drl.integer("hidden_units", cfg.drl.hidden_units);
    drl.number("tau_headroom", cfg.drl.tau_headroom);
    drl.number("tau_floor", cfg.drl.tau_floor);
    drl.number("actor_out_init_scale", cfg.drl.actor_out_init_scale);
    drl.finish();

    cfg.hrl.lower = cfg.drl;
    {
        // The upper level keeps its non-saturating actor output when it
        // inherits the [drl] hyperparameters.
        const OutputActivation upper_act = cfg.hrl.upper.actor_activation;
        cfg.hrl.upper = cfg.drl;
        cfg.hrl.upper.actor_activation = upper_act;
    }
    SectionReader hrl(ini, "hrl");
    hrl.integer("m_upper", cfg.hrl.m_upper);
    hrl.take("correction", [&](const std::string& v) {
        if (v == "none")
            cfg.hrl.correction = Correction::none;
        else if (v == "direct_is")
            cfg.hrl.correction = Correction::direct_is;
        else if (v == "relabel")
            cfg.hrl.correction = Correction::relabel;
        else
            throw ConfigError("config: [hrl] correction must be none, direct_is or relabel");
    });
    hrl.take("round_skip", [&](const std::string& v) {
        cfg.hrl.round_skip_enabled = to_bool("hrl", "round_skip", v);
    });
    hrl.number("w_clip_low", cfg.hrl.w_clip_low);
    hrl.number("w_clip_high", cfg.hrl.w_clip_high);
    hrl.number("goal_epsilon_start", cfg.hrl.goal_epsilon_start);
    hrl.number("goal_epsilon_end", cfg.hrl.goal_epsilon_end);
    hrl.number("upper_actor_lr", cfg.hrl.upper.actor_lr);
    hrl.number("upper_critic_lr", cfg.hrl.upper.critic_lr);
    hrl.integer("upper_minibatch", cfg.hrl.upper.minibatch);
    hrl.number("upper_gamma", cfg.hrl.upper.gamma);
    hrl.number("upper_actor_out_init_scale", cfg.hrl.upper.actor_out_init_scale);
    hrl.finish();

    SectionReader ex(ini, "experiment");
    ex.take("policy", [&](const std::string& v) {
        cfg.experiment.policies.clear();
        for (const std::string& name : split(v, ','))
            cfg.experiment.policies.push_back(policy_from_name(name));
        if (cfg.experiment.policies.empty())
            throw ConfigError("config: [experiment] policy list is empty");
    });
    ex.integer("n_episodes", cfg.experiment.n_episodes);
    ex.integer("n_seeds", cfg.experiment.n_seeds);
    ex.unsigned64("base_seed", cfg.experiment.base_seed);
    ex.take("transmit_power_dbm", [&](const std::string& v) {
        cfg.experiment.transmit_power_dbm.clear();
        for (const std::string& s : split(v, ','))
            cfg.experiment.transmit_power_dbm.push_back(to_double("experiment",
                                                                  "transmit_power_dbm", s));
    });
    ex.take("sweep_axis", [&](const std::string& v) {
        bool found = false;
        for (SweepAxis a : {SweepAxis::none, SweepAxis::power, SweepAxis::rvq_bits,
                            SweepAxis::vehicle_density, SweepAxis::upper_period})
            if (v == sweep_axis_name(a)) {
                cfg.experiment.sweep = a;
                found = true;
            }
        if (!found)
            throw ConfigError("config: [experiment] unknown sweep_axis '" + v + "'");
    });
    ex.take("sweep_values", [&](const std::string& v) {
        cfg.experiment.sweep_values.clear();
        if (trim(v).empty())
            return;
        for (const std::string& s : split(v, ','))
            cfg.experiment.sweep_values.push_back(to_double("experiment", "sweep_values", s));
    });
    ex.integer("threads", cfg.experiment.threads);
    ex.finish();

    if (cfg.experiment.sweep != SweepAxis::none && cfg.experiment.sweep_values.empty())
        throw ConfigError("config: [experiment] sweep_values required when sweep_axis is set");
    if (cfg.experiment.n_seeds < 1 || cfg.experiment.n_episodes < 1)
        throw ConfigError("config: [experiment] n_seeds and n_episodes must be positive");
    if (cfg.experiment.transmit_power_dbm.empty())
        throw ConfigError("config: [experiment] transmit_power_dbm must be non-empty");
    return cfg;
}

std::string scenario_to_string(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os.precision(12);
    os << "[channel]\n"
       << "grid_nx = " << cfg.world.grid.n_streets_x << "\n"
       << "grid_ny = " << cfg.world.grid.n_streets_y << "\n"
       << "block_m = " << cfg.world.grid.block_m << "\n"
       << "speed_mps = " << cfg.world.speed_mps << "\n"
       << "slot_duration_s = " << cfg.world.slot_duration_s << "\n"
       << "blocker_density = " << cfg.world.blocker_density << "\n"
       << "seed = " << cfg.world.seed << "\n"
       << "mmwave_carrier_hz = " << cfg.world.mmwave_carrier_hz << "\n"
       << "sub6_carrier_hz = " << cfg.world.sub6_carrier_hz << "\n"
       << "cluster_count_mmwave = " << cfg.world.cluster_count_mmwave << "\n"
       << "cluster_count_sub6 = " << cfg.world.cluster_count_sub6 << "\n"
       << "k_factor_db = " << cfg.world.k_factor_db << "\n"
       << "delay_spread_ns = " << cfg.world.delay_spread_ns << "\n"
       << "blockage_rate_per_density = " << cfg.world.blockage_rate_per_density << "\n"
       << "mean_blockage_slots = " << cfg.world.mean_blockage_slots << "\n"
       << "pathloss_exp_nlos_mmwave = " << cfg.world.pathloss_exp_nlos_mmwave << "\n"
       << "pathloss_exp_nlos_sub6 = " << cfg.world.pathloss_exp_nlos_sub6 << "\n"
       << "blockage_sensitivity_mmwave = " << cfg.world.blockage_sensitivity_mmwave << "\n"
       << "blockage_sensitivity_sub6 = " << cfg.world.blockage_sensitivity_sub6 << "\n"
       << "bs_x_m = " << cfg.world.bs_x_m << "\n"
       << "bs_y_m = " << cfg.world.bs_y_m << "\n";
    os << "[mmwave]\n"
       << "n_bs = " << cfg.mmwave.n_bs << "\nn_ue = " << cfg.mmwave.n_ue << "\n"
       << "n_bs_rf = " << cfg.mmwave.n_bs_rf << "\nn_ue_rf = " << cfg.mmwave.n_ue_rf << "\n"
       << "n_s = " << cfg.mmwave.n_s << "\nn_subcarriers = " << cfg.mmwave.n_subcarriers << "\n"
       << "bandwidth_hz = " << cfg.mmwave.bandwidth_hz << "\n"
       << "m_ss = " << cfg.mmwave.m_ss << "\nn_ss = " << cfg.mmwave.n_ss << "\n"
       << "kappa_rvq = " << cfg.mmwave.kappa_rvq << "\n"
       << "kappa_channel = " << cfg.mmwave.kappa_channel << "\n"
       << "beta_rf = " << cfg.mmwave.beta_rf << "\nzeta_rf = " << cfg.mmwave.zeta_rf << "\n"
       << "beta_bb = " << cfg.mmwave.beta_bb << "\nzeta_bb = " << cfg.mmwave.zeta_bb << "\n"
       << "nu_bs = " << cfg.mmwave.nu_bs << "\nnu_ue = " << cfg.mmwave.nu_ue << "\n"
       << "noise_figure_db = " << cfg.mmwave.noise_figure_db << "\n"
       << "rvq_training = " << cfg.mmwave.rvq_training << "\n"
       << "rvq_seed = " << cfg.mmwave.rvq_seed << "\n";
    os << "[sub6]\n"
       << "n_bs = " << cfg.sub6.n_bs << "\nn_ue = " << cfg.sub6.n_ue << "\n"
       << "n_s = " << cfg.sub6.n_s << "\nn_subcarriers = " << cfg.sub6.n_subcarriers << "\n"
       << "bandwidth_hz = " << cfg.sub6.bandwidth_hz << "\n"
       << "nu_pmi = " << cfg.sub6.nu_pmi << "\n"
       << "kappa_channel = " << cfg.sub6.kappa_channel << "\n"
       << "beta = " << cfg.sub6.beta << "\nzeta = " << cfg.sub6.zeta << "\n"
       << "pmi_oversampling = " << cfg.sub6.pmi_oversampling << "\n"
       << "noise_figure_db = " << cfg.sub6.noise_figure_db << "\n";
    os << "[env]\n"
       << "m_dt = " << cfg.env.m_dt << "\n"
       << "episode_len_decisions = " << cfg.env.episode_len_decisions << "\n"
       << "stale_horizon_slots = " << cfg.env.stale_horizon_slots << "\n"
       << "initial_band = " << band_name(cfg.env.initial_band) << "\n"
       << "stale_feedback_decay = " << cfg.env.stale_feedback_decay << "\n";
    os << "[drl]\n"
       << "gamma = " << cfg.drl.gamma << "\nminibatch = " << cfg.drl.minibatch << "\n"
       << "buffer_capacity = " << cfg.drl.buffer_capacity << "\n"
       << "eta = " << cfg.drl.eta << "\n"
       << "actor_lr = " << cfg.drl.actor_lr << "\ncritic_lr = " << cfg.drl.critic_lr << "\n"
       << "noise_std_start = " << cfg.drl.noise_std_start << "\n"
       << "noise_std_end = " << cfg.drl.noise_std_end << "\n"
       << "hidden_units = " << cfg.drl.hidden_units << "\n"
       << "tau_headroom = " << cfg.drl.tau_headroom << "\n"
       << "tau_floor = " << cfg.drl.tau_floor << "\n"
       << "actor_out_init_scale = " << cfg.drl.actor_out_init_scale << "\n";
    os << "[hrl]\n"
       << "m_upper = " << cfg.hrl.m_upper << "\n"
       << "correction = "
       << (cfg.hrl.correction == Correction::none
               ? "none"
               : cfg.hrl.correction == Correction::direct_is ? "direct_is" : "relabel")
       << "\n"
       << "round_skip = " << (cfg.hrl.round_skip_enabled ? "on" : "off") << "\n"
       << "w_clip_low = " << cfg.hrl.w_clip_low << "\n"
       << "w_clip_high = " << cfg.hrl.w_clip_high << "\n"
       << "goal_epsilon_start = " << cfg.hrl.goal_epsilon_start << "\n"
       << "goal_epsilon_end = " << cfg.hrl.goal_epsilon_end << "\n"
       << "upper_actor_lr = " << cfg.hrl.upper.actor_lr << "\n"
       << "upper_critic_lr = " << cfg.hrl.upper.critic_lr << "\n"
       << "upper_minibatch = " << cfg.hrl.upper.minibatch << "\n"
       << "upper_gamma = " << cfg.hrl.upper.gamma << "\n"
       << "upper_actor_out_init_scale = " << cfg.hrl.upper.actor_out_init_scale << "\n";
    os << "[experiment]\npolicy = ";
    for (std::size_t i = 0; i < cfg.experiment.policies.size(); ++i)
        os << (i ? "," : "") << policy_name(cfg.experiment.policies[i]);
    os << "\nn_episodes = " << cfg.experiment.n_episodes
       << "\nn_seeds = " << cfg.experiment.n_seeds
       << "\nbase_seed = " << cfg.experiment.base_seed << "\ntransmit_power_dbm = ";
    for (std::size_t i = 0; i < cfg.experiment.transmit_power_dbm.size(); ++i)
        os << (i ? "," : "") << cfg.experiment.transmit_power_dbm[i];
    os << "\nsweep_axis = " << sweep_axis_name(cfg.experiment.sweep) << "\nsweep_values = ";
    for (std::size_t i = 0; i < cfg.experiment.sweep_values.size(); ++i)
        os << (i ? "," : "") << cfg.experiment.sweep_values[i];
    os << "\nthreads = " << cfg.experiment.threads << "\n";
    return os.str();
}

} // namespace dualband
