// SPDX-License-Identifier: Apache-2.0
#include "dualband/env/link_env.hpp"
#include "dualband/errors.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace dualband;
using testsupport::mini_env;
using testsupport::mini_scenario;

namespace {

// Ladder position: switch < analog < digital < data.
int action_rank(ActionKind k) {
    switch (k) {
    case ActionKind::switch_band: return 0;
    case ActionKind::analog_training: return 1;
    case ActionKind::digital_training: return 2;
    case ActionKind::data_transmission: return 3;
    }
    return -1;
}

} // namespace

TEST_SUITE("link_env") {

TEST_CASE("threshold ladder semantics") {
    const double t3[3] = {1.0, 2.0, 3.0};
    SUBCASE("three-threshold at mmWave") {
        CHECK(thresholds_to_action(Band::mmwave, 0.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::switch_band);
        CHECK(thresholds_to_action(Band::mmwave, 1.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::analog_training);
        CHECK(thresholds_to_action(Band::mmwave, 2.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::digital_training);
        CHECK(thresholds_to_action(Band::mmwave, 3.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::data_transmission);
    }
    SUBCASE("three-threshold at sub-6 masks the analog threshold") {
        CHECK(thresholds_to_action(Band::sub6, 0.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::switch_band);
        CHECK(thresholds_to_action(Band::sub6, 1.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::digital_training);
        CHECK(thresholds_to_action(Band::sub6, 2.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::digital_training);
        CHECK(thresholds_to_action(Band::sub6, 3.5, t3, ThresholdScheme::three_threshold)
                  .kind == ActionKind::data_transmission);
    }
    const double t2[2] = {1.0, 2.0};
    SUBCASE("hrl lower at mmWave") {
        CHECK(thresholds_to_action(Band::mmwave, 0.5, t2, ThresholdScheme::hrl_lower).kind ==
              ActionKind::analog_training);
        CHECK(thresholds_to_action(Band::mmwave, 1.5, t2, ThresholdScheme::hrl_lower).kind ==
              ActionKind::digital_training);
        CHECK(thresholds_to_action(Band::mmwave, 2.5, t2, ThresholdScheme::hrl_lower).kind ==
              ActionKind::data_transmission);
    }
    SUBCASE("hrl lower at sub-6 masks the analog threshold") {
        CHECK(thresholds_to_action(Band::sub6, 0.5, t2, ThresholdScheme::hrl_lower).kind ==
              ActionKind::digital_training);
        CHECK(thresholds_to_action(Band::sub6, 1.5, t2, ThresholdScheme::hrl_lower).kind ==
              ActionKind::digital_training);
        CHECK(thresholds_to_action(Band::sub6, 2.5, t2, ThresholdScheme::hrl_lower).kind ==
              ActionKind::data_transmission);
    }
    SUBCASE("crossed thresholds are sorted before bucketing") {
        const double crossed[3] = {3.0, 1.0, 2.0};
        CHECK(thresholds_to_action(Band::mmwave, 1.5, crossed,
                                   ThresholdScheme::three_threshold)
                  .kind == ActionKind::analog_training);
    }
}

TEST_CASE("analog training is never emitted at sub-6") {
    Rng rng(5);
    for (int t = 0; t < 100000; ++t) {
        const double thresholds[3] = {rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)};
        const double fb = rng.uniform(0, 3);
        const ActionKind a3 =
            thresholds_to_action(Band::sub6, fb, thresholds, ThresholdScheme::three_threshold)
                .kind;
        CHECK(a3 != ActionKind::analog_training);
        const double two[2] = {thresholds[0], thresholds[1]};
        const ActionKind a2 =
            thresholds_to_action(Band::sub6, fb, two, ThresholdScheme::hrl_lower).kind;
        CHECK(a2 != ActionKind::analog_training);
    }
}

TEST_CASE("raising feedback never moves the action down the ladder") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const double thresholds[3] = {rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2)};
        for (Band band : {Band::mmwave, Band::sub6}) {
            int prev = -1;
            for (double fb = 0.0; fb < 2.5; fb += 0.01) {
                const int rank = action_rank(
                    thresholds_to_action(band, fb, thresholds,
                                         ThresholdScheme::three_threshold)
                        .kind);
                CHECK(rank >= prev);
                prev = rank;
            }
        }
    }
}

TEST_CASE("reset initializes feedback to zero and is reproducible") {
    auto env = mini_env(11);
    CHECK(env->state().feedback_mmwave == 0.0);
    CHECK(env->state().feedback_sub6 == 0.0);
    CHECK(env->state().band == Band::sub6);
    const arma::vec f1 = env->features();
    auto env2 = mini_env(11);
    const arma::vec f2 = env2->features();
    REQUIRE(f1.n_elem == f2.n_elem);
    for (arma::uword i = 0; i < f1.n_elem; ++i)
        CHECK(f1[i] == f2[i]);
    // Fresh reset: both feedback features are zero.
    CHECK(f1[1] == 0.0);
    CHECK(f1[2] == 0.0);
}

TEST_CASE("feature vector layout and bounds") {
    auto env = mini_env(13);
    const int n_pairs = env->mmwave_config().n_pairs();
    CHECK(static_cast<int>(env->features().n_elem) == 8 + 2 * n_pairs);

    Rng rng(3);
    for (int t = 0; t < 200 && !env->done(); ++t) {
        EnvAction a;
        switch (rng.uniform_int(4)) {
        case 0: a.kind = ActionKind::switch_band; break;
        case 1:
            a.kind = env->state().band == Band::mmwave ? ActionKind::analog_training
                                                       : ActionKind::digital_training;
            break;
        case 2: a.kind = ActionKind::digital_training; break;
        default: a.kind = ActionKind::data_transmission; break;
        }
        const StepOutcome out = env->step(a);
        for (arma::uword i = 0; i < out.features.n_elem; ++i) {
            CHECK(out.features[i] >= 0.0);
            CHECK(out.features[i] <= 1.0);
        }
    }
}

TEST_CASE("band flip changes exactly the band coordinate") {
    BeamState s;
    s.band = Band::sub6;
    s.feedback_mmwave = 1.0;
    s.feedback_sub6 = 2.0;
    s.beam_tx = {1, 2};
    s.beam_rx = {0, 1};
    s.rvq_index = {1, 1, 0, 3};
    s.pmi_index = {2, 2, 2, 2};
    FeatureContext ctx;
    ctx.nu_bs = 4;
    ctx.nu_ue = 2;
    ctx.n_pairs = 2;
    ctx.rvq_entries = 4;
    ctx.nu_pmi = 8;
    ctx.m_rf = 2;
    ctx.slots_since_train_mmwave = 1;
    ctx.slots_since_train_sub6 = 3;
    ctx.running_max_feedback = 2.0;
    const arma::vec f0 = featurize(s, ctx);
    s.band = Band::mmwave;
    const arma::vec f1 = featurize(s, ctx);
    REQUIRE(f0.n_elem == f1.n_elem);
    CHECK(f0[0] == 0.0);
    CHECK(f1[0] == 1.0);
    for (arma::uword i = 1; i < f0.n_elem; ++i)
        CHECK(f0[i] == f1[i]);
}

TEST_CASE("training rewards are exactly zero and overheads match") {
    auto env = mini_env(17);
    // sub-6 training
    StepOutcome out = env->step(EnvAction{ActionKind::digital_training});
    CHECK(out.reward_bps == 0.0);
    CHECK(out.c_flag == 0);
    CHECK(out.slots_consumed == env->m_bb_sub6());
    // switch to mmWave
    out = env->step(EnvAction{ActionKind::switch_band});
    CHECK(out.reward_bps == 0.0);
    CHECK(out.slots_consumed == 1);
    REQUIRE(env->state().band == Band::mmwave);
    // analog training consumes exactly M_RF
    out = env->step(EnvAction{ActionKind::analog_training});
    CHECK(out.reward_bps == 0.0);
    CHECK(out.slots_consumed == env->m_rf());
    CHECK(out.slots_consumed ==
          analog_overhead(env->mmwave_config().m_ss, env->mmwave_config().n_ss,
                          env->mmwave_config().codebook_bs(),
                          env->mmwave_config().codebook_ue()));
    // digital training consumes exactly M_BB
    out = env->step(EnvAction{ActionKind::digital_training});
    CHECK(out.reward_bps == 0.0);
    CHECK(out.slots_consumed == env->m_bb_mmwave());
    // data transmission pays reward = rate
    out = env->step(EnvAction{ActionKind::data_transmission});
    CHECK(out.c_flag == 1);
    CHECK(out.reward_bps == out.rate_bps);
    CHECK(out.slots_consumed == env->env_config().m_dt);
}

TEST_CASE("reward equals c times rate on a long random rollout") {
    auto env = mini_env(19);
    Rng rng(23);
    int episodes_left = 30;
    while (episodes_left > 0) {
        EnvAction a;
        const int r = static_cast<int>(rng.uniform_int(4));
        if (r == 1 && env->state().band != Band::mmwave)
            a.kind = ActionKind::digital_training;
        else
            a.kind = static_cast<ActionKind>(r);
        const StepOutcome out = env->step(a);
        CHECK(out.reward_bps == out.c_flag * out.rate_bps);
        if (out.done) {
            env = mini_env(19 + episodes_left);
            --episodes_left;
        }
    }
}

TEST_CASE("analog training at sub-6 is rejected") {
    auto env = mini_env(29);
    REQUIRE(env->state().band == Band::sub6);
    CHECK_THROWS_AS(env->step(EnvAction{ActionKind::analog_training}), DomainError);
}

TEST_CASE("data rate helper matches the bandwidth scaling example") {
    const std::vector<double> se(16, 2.0);
    CHECK(data_rate_bps(850e6, se) == doctest::Approx(1.7e9).epsilon(1e-12));
    CHECK(data_rate_bps(850e6, std::vector<double>{}) == 0.0);
}

TEST_CASE("episode return sums c times R") {
    std::vector<StepOutcome> outcomes(3);
    outcomes[0].c_flag = 0;
    outcomes[0].rate_bps = 5e8;
    outcomes[1].c_flag = 1;
    outcomes[1].rate_bps = 2e9;
    outcomes[2].c_flag = 1;
    outcomes[2].rate_bps = 3e9;
    CHECK(episode_return(outcomes) == doctest::Approx(5e9).epsilon(1e-12));
    CHECK(episode_return(std::vector<StepOutcome>{}) == 0.0);
}

TEST_CASE("identical traces and actions give identical outcomes") {
    auto a = mini_env(31);
    auto b = mini_env(31);
    Rng rng(37);
    for (int t = 0; t < 60 && !a->done(); ++t) {
        EnvAction act;
        const int r = static_cast<int>(rng.uniform_int(4));
        if (r == 1 && a->state().band != Band::mmwave)
            act.kind = ActionKind::digital_training;
        else
            act.kind = static_cast<ActionKind>(r);
        const StepOutcome oa = a->step(act);
        const StepOutcome ob = b->step(act);
        CHECK(oa.reward_bps == ob.reward_bps);
        CHECK(oa.rate_bps == ob.rate_bps);
        CHECK(oa.slots_consumed == ob.slots_consumed);
    }
}

TEST_CASE("episode end is a signal, not a crash") {
    auto env = mini_env(41);
    while (!env->done())
        env->step(EnvAction{ActionKind::data_transmission});
    const StepOutcome out = env->step(EnvAction{ActionKind::data_transmission});
    CHECK(out.done);
    CHECK(out.slots_consumed == 0);
    CHECK(out.reward_bps == 0.0);
}

TEST_CASE("long-unused band is flagged stale and its feedback decays") {
    auto env = mini_env(43);
    // Train sub-6, then leave for longer than the stale horizon.
    env->step(EnvAction{ActionKind::digital_training});
    const double fb = env->state().feedback_sub6;
    REQUIRE(fb > 0.0);
    env->step(EnvAction{ActionKind::switch_band}); // to mmWave; sub-6 is still fresh
    CHECK(env->state().band == Band::mmwave);
    const int horizon = env->env_config().stale_horizon_slots;
    int spent = 0;
    while (spent <= horizon + 1) {
        spent += env->step(EnvAction{ActionKind::data_transmission}).slots_consumed;
    }
    env->step(EnvAction{ActionKind::switch_band}); // back to sub-6, now stale
    CHECK(env->state().band == Band::sub6);
    CHECK(env->state().stale_sub6);
    CHECK(env->state().feedback_sub6 ==
          doctest::Approx(fb * env->env_config().stale_feedback_decay).epsilon(1e-12));
}

} // TEST_SUITE
