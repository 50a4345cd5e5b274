// SPDX-License-Identifier: Apache-2.0
#include "dualband/errors.hpp"
#include "dualband/exp/config.hpp"
#include "dualband/exp/experiment.hpp"

#include "doctest.h"

#include <sstream>

using namespace dualband;

TEST_SUITE("config") {

TEST_CASE("parses sections, comments and values") {
    const IniFile ini = IniFile::parse_string(R"(
# a comment
[channel]
grid_nx = 6      ; trailing comment
blocker_density = 25
[mmwave]
kappa_rvq = 6
[experiment]
policy = genie,hrl
transmit_power_dbm = 5,10,15
)");
    const ScenarioConfig cfg = scenario_from_ini(ini);
    CHECK(cfg.world.grid.n_streets_x == 6);
    CHECK(cfg.world.blocker_density == 25.0);
    CHECK(cfg.mmwave.kappa_rvq == 6);
    REQUIRE(cfg.experiment.policies.size() == 2);
    CHECK(cfg.experiment.policies[0] == PolicyKind::genie);
    CHECK(cfg.experiment.policies[1] == PolicyKind::hrl);
    REQUIRE(cfg.experiment.transmit_power_dbm.size() == 3);
    CHECK(cfg.experiment.transmit_power_dbm[1] == 10.0);
}

TEST_CASE("unknown keys and sections are named in errors") {
    SUBCASE("unknown key") {
        const IniFile ini = IniFile::parse_string("[env]\nm_dtt = 3\n");
        try {
            scenario_from_ini(ini);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("m_dtt") != std::string::npos);
            CHECK(std::string(e.what()).find("env") != std::string::npos);
        }
    }
    SUBCASE("unknown section") {
        const IniFile ini = IniFile::parse_string("[typo]\nx = 1\n");
        CHECK_THROWS_AS(scenario_from_ini(ini), ConfigError);
    }
    SUBCASE("non-numeric value") {
        const IniFile ini = IniFile::parse_string("[env]\nm_dt = soon\n");
        CHECK_THROWS_AS(scenario_from_ini(ini), ConfigError);
    }
    SUBCASE("missing file names the path") {
        try {
            IniFile::parse_file("no_such_config.ini");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("no_such_config.ini") != std::string::npos);
        }
    }
}

TEST_CASE("overrides rewrite single keys") {
    IniFile ini = IniFile::parse_string("[env]\nm_dt = 10\n");
    ini.apply_override("env.m_dt=5");
    ini.apply_override("mmwave.kappa_rvq=3");
    const ScenarioConfig cfg = scenario_from_ini(ini);
    CHECK(cfg.env.m_dt == 5);
    CHECK(cfg.mmwave.kappa_rvq == 3);
    CHECK_THROWS_AS(ini.apply_override("no_dot_here"), ConfigError);
}

TEST_CASE("effective-config echo round trips") {
    IniFile ini = IniFile::parse_string("[hrl]\ncorrection = direct_is\nm_upper = 5\n");
    const ScenarioConfig cfg = scenario_from_ini(ini);
    const std::string echoed = scenario_to_string(cfg);
    const ScenarioConfig back = scenario_from_ini(IniFile::parse_string(echoed));
    CHECK(back.hrl.m_upper == 5);
    CHECK(back.hrl.correction == Correction::direct_is);
    CHECK(back.env.m_dt == cfg.env.m_dt);
    CHECK(back.world.blocker_density == cfg.world.blocker_density);
    CHECK(scenario_to_string(back) == echoed);
}

TEST_CASE("sweep validation") {
    const IniFile ini = IniFile::parse_string("[experiment]\nsweep_axis = rvq_bits\n");
    CHECK_THROWS_AS(scenario_from_ini(ini), ConfigError);
    const IniFile ok = IniFile::parse_string(
        "[experiment]\nsweep_axis = rvq_bits\nsweep_values = 1,2,3\n");
    const ScenarioConfig cfg = scenario_from_ini(ok);
    CHECK(cfg.experiment.sweep == SweepAxis::rvq_bits);
    REQUIRE(cfg.experiment.sweep_values.size() == 3);
    const ScenarioConfig swept = apply_sweep(cfg, SweepAxis::rvq_bits, 2.0);
    CHECK(swept.mmwave.kappa_rvq == 2);
}

} // TEST_SUITE
