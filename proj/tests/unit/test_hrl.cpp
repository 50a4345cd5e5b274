// SPDX-License-Identifier: Apache-2.0
#include "dualband/errors.hpp"
#include "dualband/rl/hrl.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>

using namespace dualband;

namespace {

LowerStep make_step(double goal, double reward, const arma::vec& state, const arma::vec& action,
                    const arma::vec& mu0, const arma::vec& mu1) {
    LowerStep s;
    s.state = state;
    s.goal = goal;
    s.action = action;
    s.mu_base_g0 = mu0;
    s.mu_base_g1 = mu1;
    s.reward = reward;
    return s;
}

std::vector<LowerStep> simple_window(const std::vector<double>& rewards, double goal = 1.0) {
    std::vector<LowerStep> w;
    const arma::vec mu{0.5, 0.5};
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        arma::vec state{static_cast<double>(i), 1.0};
        w.push_back(make_step(goal, rewards[i], state, mu, mu, mu));
    }
    return w;
}

} // namespace

TEST_SUITE("hrl") {

TEST_CASE("aggregate reward is the period mean") {
    const arma::vec terminal{9.0, 9.0};
    SUBCASE("all-zero window") {
        const auto tr = aggregate_upper(simple_window({0.0, 0.0, 0.0}), 3, 10, terminal);
        CHECK(tr.reward == 0.0);
    }
    SUBCASE("window {1,2,3} with period 3 averages to 2") {
        const auto tr = aggregate_upper(simple_window({1.0, 2.0, 3.0}), 3, 10, terminal);
        CHECK(tr.reward == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("stored length never exceeds M_RF") {
        const auto tr = aggregate_upper(simple_window({1, 1, 1, 1, 1, 1, 1, 1}), 8, 3, terminal);
        CHECK(tr.steps.size() == 3);
        CHECK(tr.agg_input.n_elem == 3 * 2);
        // Reward still averages the full window over M_upper.
        CHECK(tr.reward == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("importance weight is exactly one for identical policies") {
    auto tr = aggregate_upper(simple_window({1.0, 0.0}, 1.0), 2, 8, arma::vec{0.0, 0.0});
    const PolicyFn mu = [](const arma::vec&, double) { return arma::vec{0.4, 0.6}; };
    CHECK(importance_weight(tr, mu, mu, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weight drops when the new policy explains the actions worse") {
    // Logged actions sit exactly on the base policy's output.
    std::vector<LowerStep> w;
    const arma::vec action{0.5, 0.5};
    w.push_back(make_step(1.0, 0.0, arma::vec{1.0, 0.0}, action, action, action));
    auto tr = aggregate_upper(w, 1, 8, arma::vec{0.0, 0.0});
    const PolicyFn mu_base = [&](const arma::vec&, double) { return action; };
    const PolicyFn mu_far = [](const arma::vec&, double) { return arma::vec{0.9, 0.1}; };
    const double w_far = importance_weight(tr, mu_far, mu_base, 0.2);
    CHECK(w_far < 1.0);
    // Gaussian ratio oracle: exp((||a-mu_base||^2 - ||a-mu_now||^2)/(2 sigma^2)).
    const double d_far = 2.0 * 0.4 * 0.4;
    CHECK(w_far == doctest::Approx(std::exp(-d_far / (2 * 0.2 * 0.2))).epsilon(1e-12));
}

TEST_CASE("extreme divergence respects the clip bounds") {
    std::vector<LowerStep> w;
    const arma::vec action{0.0, 0.0};
    w.push_back(make_step(1.0, 0.0, arma::vec{1.0, 0.0}, action, action, action));
    auto tr = aggregate_upper(w, 1, 8, arma::vec{0.0, 0.0});
    const PolicyFn mu_base = [&](const arma::vec&, double) { return action; };
    const PolicyFn mu_far = [](const arma::vec&, double) { return arma::vec{50.0, 50.0}; };
    CHECK(importance_weight(tr, mu_far, mu_base, 0.1) == 1e-3);
    CHECK(importance_weight(tr, mu_base, mu_far, 0.1) == 1e3);
}

TEST_CASE("relabeling keeps the logged goal at w = 1 and flips when warranted") {
    // Policy output depends on the goal; logged actions were produced
    // under goal 1 by the base policy.
    const arma::vec a_g0{0.2, 0.2};
    const arma::vec a_g1{0.8, 0.8};
    auto policy_like = [&](const arma::vec&, double g) { return g < 0.5 ? a_g0 : a_g1; };

    std::vector<LowerStep> w;
    w.push_back(make_step(1.0, 0.0, arma::vec{1.0, 0.0}, a_g1, a_g0, a_g1));
    auto tr = aggregate_upper(w, 1, 8, arma::vec{0.0, 0.0});

    SUBCASE("identical policies keep the logged goal") {
        const double g = relabel_goal(tr, policy_like, policy_like, 0.2);
        CHECK(g == 1.0);
    }
    SUBCASE("a now-policy that reproduces the actions only under the flipped goal") {
        // Under the current policy the logged action (a_g1) is produced
        // at goal 0; the base policy still maps goal 0 to a_g0. The
        // flipped goal makes w(0) land farther from 1 than w(1)?  Work
        // the two candidates explicitly through the formula instead.
        const PolicyFn mu_now = [&](const arma::vec&, double g) {
            return g < 0.5 ? a_g1 : a_g0; // swapped behavior
        };
        const double sigma = 0.2;
        auto w_for = [&](double g) {
            auto trg = tr;
            trg.steps[0].goal = g;
            return importance_weight(trg, mu_now, policy_like, sigma);
        };
        const double g = relabel_goal(tr, mu_now, policy_like, sigma);
        const double obj_keep = (1.0 - w_for(1.0)) * (1.0 - w_for(1.0));
        const double obj_flip = (1.0 - w_for(0.0)) * (1.0 - w_for(0.0));
        CHECK(((obj_flip < obj_keep && g == 0.0) || (obj_flip >= obj_keep && g == 1.0)));
        // And the result is always a valid binary goal.
        CHECK((g == 0.0 || g == 1.0));
    }
}

TEST_CASE("round-skip law") {
    SUBCASE("closed form at q = 1, M_RF = 128") {
        CHECK(non_skip_probability(1.0, 128) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
    }
    SUBCASE("small q clamps to certain non-skip") {
        const double boundary = 128.0 / 255.0;
        CHECK(non_skip_probability(boundary, 128) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(non_skip_probability(0.3, 128) == 1.0);
    }
    SUBCASE("Monte-Carlo frequency matches within 1%") {
        for (const double q : {0.6, 0.8, 1.0}) {
            Rng rng(1000 + static_cast<int>(q * 10));
            const int n = 100000;
            long skips = 0;
            for (int i = 0; i < n; ++i)
                skips += round_skip(q, 128, rng);
            const double p_emp = 1.0 - static_cast<double>(skips) / n;
            CHECK(p_emp == doctest::Approx(non_skip_probability(q, 128)).epsilon(0.01));
        }
    }
    SUBCASE("invalid q rejected") {
        CHECK_THROWS_AS(non_skip_probability(0.0, 128), DomainError);
        CHECK_THROWS_AS(non_skip_probability(1.5, 128), DomainError);
    }
}

TEST_CASE("availability estimator uses Laplace smoothing") {
    AvailabilityEstimator est;
    CHECK(est.q() == doctest::Approx(0.5).epsilon(1e-15));
    est.observe_decision(4);
    CHECK(est.q() == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
    est.observe_decision(1);
    CHECK(est.q() == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("upper stream with period 1 matches a flat learner on logged tensors") {
    // Same nets, same batch, both through the shared update path: the
    // upper level is a flat DDPG whose action is the goal.
    const DdpgConfig cfg = [] {
        DdpgConfig c;
        c.hidden_units = 12;
        return c;
    }();
    DdpgNets upper = DdpgNets::make(4, 1, cfg, 77);
    DdpgNets flat = DdpgNets::make(4, 1, cfg, 77);

    BatchView batch;
    batch.s = arma::mat(4, 6, arma::fill::randu);
    batch.a = arma::mat(1, 6, arma::fill::randu);
    batch.s2 = arma::mat(4, 6, arma::fill::randu);
    batch.r = arma::rowvec(6, arma::fill::randu);
    batch.boot_w = arma::rowvec(6, arma::fill::ones);

    for (int i = 0; i < 5; ++i) {
        const double lu = critic_update_batch(upper, batch, cfg.gamma);
        const double lf = critic_update_batch(flat, batch, cfg.gamma);
        CHECK(lu == lf);
        const double gu = actor_update_batch(upper, batch.s);
        const double gf = actor_update_batch(flat, batch.s);
        CHECK(gu == gf);
    }
    for (std::size_t l = 0; l < upper.critic.n_layers(); ++l)
        CHECK(arma::norm(upper.critic.weights[l] - flat.critic.weights[l], "fro") == 0.0);
}

TEST_CASE("pinned goal with upper updates disabled stays on mmWave") {
    // Ablation: the two-level learner reduces to a lower-level-only
    // mmWave learner.
    dualband::ScenarioConfig scfg = testsupport::mini_scenario();
    scfg.world.seed = 5;
    const EnvFactory factory = make_env_factory(scfg, 0, 30.0);

    HrlConfig cfg;
    cfg.lower.hidden_units = 12;
    cfg.lower.minibatch = 8;
    cfg.upper = cfg.lower;
    cfg.m_upper = 4;
    cfg.upper_updates = false;
    cfg.pin_goal = 1;
    cfg.round_skip_enabled = false;

    auto env = factory(0);
    HrlAgent agent(static_cast<int>(env->features().n_elem), env->m_rf(), cfg, 9);
    const EpisodeLog log = agent.run_episode(*env, 0, 10);
    // After the initial alignment switch the agent never leaves mmWave.
    CHECK(log.band_occupancy_mmwave >= doctest::Approx(1.0 - 1.0 / 40.0));
    CHECK(agent.upper_buffer.size() == 0);
}

TEST_CASE("training steps carry zero intrinsic reward and runs are reproducible") {
    dualband::ScenarioConfig scfg = testsupport::mini_scenario();
    scfg.world.seed = 6;
    scfg.experiment.n_episodes = 2;
    const EnvFactory factory = make_env_factory(scfg, 0, 30.0);

    HrlConfig cfg;
    cfg.lower.hidden_units = 12;
    cfg.lower.minibatch = 8;
    cfg.upper = cfg.lower;
    cfg.m_upper = 4;

    HrlDiagnostics diag_a, diag_b;
    const LearningCurve a = train_hrl(factory, cfg, 2, 33, &diag_a);
    const LearningCurve b = train_hrl(factory, cfg, 2, 33, &diag_b);
    REQUIRE(a.episodes.size() == b.episodes.size());
    for (std::size_t i = 0; i < a.episodes.size(); ++i)
        CHECK(a.episodes[i].mean_reward_bps == b.episodes[i].mean_reward_bps);
    REQUIRE(diag_a.thresholds.size() == diag_b.thresholds.size());
    // Training and switch decisions carry exactly zero intrinsic reward.
    for (const auto& ts : diag_a.thresholds)
        if (ts.action_kind != static_cast<int>(ActionKind::data_transmission))
            CHECK(ts.reward_bps == 0.0);
    CHECK(diag_a.thresholds.size() == 2 * 40);
}

} // TEST_SUITE
