#include "doctest.h"

#include <cmath>

#include "epp/errors.hpp"
#include "epp/repeater.hpp"
#include "epp/replay.hpp"
#include "epp/rng.hpp"

using namespace epp;

TEST_CASE("swap of Werner pairs multiplies the Werner parameters") {
    for (double x1 : {0.9, 0.7})
        for (double x2 : {0.95, 0.6}) {
            BellDiagonal out = swap_pairs(WernerParam(x1).expand(), WernerParam(x2).expand());
            BellDiagonal expect = WernerParam(x1 * x2).expand();
            for (int i = 0; i < 4; ++i)
                CHECK(out[i] == doctest::Approx(expect[i]).epsilon(1e-12));
        }
}

TEST_CASE("swap matches the dense Bell-measurement replay") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        double raw[8];
        for (double& v : raw) v = -std::log(rng.uniform());
        double sa = raw[0] + raw[1] + raw[2] + raw[3], sb = raw[4] + raw[5] + raw[6] + raw[7];
        BellDiagonal a(raw[0] / sa, raw[1] / sa, raw[2] / sa, raw[3] / sa);
        BellDiagonal b(raw[4] / sb, raw[5] / sb, raw[6] / sb, raw[7] / sb);
        for (double p : {1.0, 0.97}) {
            GateNoiseModel noise(NoiseKind::depolarizing, p);
            BellDiagonal c = swap_pairs(a, b, noise);
            BellDiagonal o = replay::swap(a, b, noise);
            for (int i = 0; i < 4; ++i) CHECK(c[i] == doctest::Approx(o[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("swap degrades fidelity and purification restores it") {
    BellDiagonal e = werner_from_fidelity(0.95);
    BellDiagonal swapped = swap_pairs(e, e);
    CHECK(swapped.fidelity() < e.fidelity());
    StepResult r = dejmps_step(swapped, swapped);
    CHECK(r.state.fidelity() > swapped.fidelity());
}

TEST_CASE("deterministic accounting pair count is exactly N^(log2(2M))") {
    for (int rounds : {1, 2}) {
        for (int levels : {1, 2, 3}) {
            RepeaterConfig cfg;
            cfg.levels = levels;
            cfg.elementary = werner_from_fidelity(0.96);
            cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
            cfg.rounds_per_level = rounds;
            cfg.accounting = Accounting::deterministic;
            RepeaterResult r = repeater_run(cfg);
            double N = std::pow(2.0, levels);
            double expected = std::pow(N, std::log2(2.0 * std::pow(2.0, rounds)));
            CHECK(r.resources.pairs == doctest::Approx(expected).epsilon(1e-12));
            CHECK(r.levels.back().distance == static_cast<int>(N));
        }
    }
}

TEST_CASE("expected accounting costs more than deterministic") {
    RepeaterConfig cfg;
    cfg.levels = 2;
    cfg.elementary = werner_from_fidelity(0.96);
    cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
    cfg.rounds_per_level = 1;
    cfg.accounting = Accounting::deterministic;
    double det = repeater_run(cfg).resources.pairs;
    cfg.accounting = Accounting::expected;
    double exp = repeater_run(cfg).resources.pairs;
    CHECK(exp > det);
}

TEST_CASE("adaptive repeater holds the working fidelity at every level") {
    RepeaterConfig cfg;
    cfg.levels = 3;
    cfg.elementary = werner_from_fidelity(0.97);
    cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
    RepeaterResult r = repeater_run(cfg);
    REQUIRE(r.levels.size() == 3);
    for (const RepeaterLevel& lvl : r.levels) {
        CHECK(lvl.fidelity_after_purify >= r.F0 - 1e-9);
        CHECK(lvl.fidelity_after_swap < lvl.fidelity_after_purify);
    }
    CHECK(r.state.fidelity() >= r.F0 - 1e-9);
}

TEST_CASE("pumping protocol uses constant memory per station") {
    RepeaterConfig cfg;
    cfg.levels = 3;
    cfg.elementary = werner_from_fidelity(0.97);
    cfg.protocol = RepeaterProtocol::pumping;
    cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
    RepeaterResult r = repeater_run(cfg);
    CHECK(r.resources.memory_per_station == cfg.levels + 1);
}

TEST_CASE("repeater below threshold throws") {
    RepeaterConfig cfg;
    cfg.levels = 2;
    cfg.elementary = werner_from_fidelity(0.75);
    cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.9);  // below the recurrence threshold
    CHECK_THROWS_AS(repeater_run(cfg), below_threshold_error);
}

TEST_CASE("linear fit recovers an exact line") {
    LogLogFit f = linear_fit({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("resource scaling is polynomial: log-log fit is tight") {
    RepeaterConfig cfg;
    cfg.elementary = werner_from_fidelity(0.96);
    cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
    cfg.rounds_per_level = 1;
    cfg.accounting = Accounting::deterministic;
    ScalingTable t = resource_scaling(cfg, 5);
    REQUIRE(t.rows.size() == 5);
    CHECK(t.fit.r2 > 0.999);
    CHECK(t.fit.slope == doctest::Approx(2.0).epsilon(1e-9));  // pairs = N^2 at M=2
}
