// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check is self-timed where a runtime budget applies.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "epp/analysis.hpp"
#include "epp/bipartite.hpp"
#include "epp/errors.hpp"
#include "epp/multipartite.hpp"
#include "epp/repeater.hpp"
#include "epp/replay.hpp"
#include "epp/rng.hpp"

using namespace epp;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail) {
    std::printf("%s  %2d  %-28s %s\n", ok ? "PASS" : "FAIL", criterion, label, detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> random_weights(Rng& rng, std::size_t n) {
    std::vector<double> w(n);
    double s = 0.0;
    for (double& v : w) {
        v = -std::log(rng.uniform());
        s += v;
    }
    for (double& v : w) v /= s;
    return w;
}

// 1. BBPSSW gate-noise threshold.
void criterion_1() {
    auto t0 = Clock::now();
    double pmin = protocol_threshold(Protocol::bbpssw, 1e-5);
    double dt = seconds_since(t0);
    bool ok = std::abs(pmin - 0.9628) <= 5e-4 && dt < 1.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "p_min=%.6f dt=%.3fs", pmin, dt);
    report(1, "bbpssw threshold", ok, buf);
}

// 2. Noiseless fixed points and upward convergence.
void criterion_2() {
    bool ok = std::abs(bbpssw_step(0.5).state.fidelity() - 0.5) < 1e-12 &&
              std::abs(bbpssw_step(1.0).state.fidelity() - 1.0) < 1e-12;
    Rng rng(2025);
    int climbed = 0;
    for (int i = 0; i < 1000; ++i) {
        double F = 0.501 + 0.498 * rng.uniform();
        bool monotone = true;
        for (int it = 0; it < 10000 && F < 1.0 - 1e-9; ++it) {
            double next = bbpssw_step(F).state.fidelity();
            if (next < F - 1e-13) monotone = false;
            F = next;
        }
        if (monotone && F >= 1.0 - 1e-8) ++climbed;
    }
    ok = ok && climbed == 1000;
    char buf[96];
    std::snprintf(buf, sizeof buf, "fixed {0.5,1}; %d/1000 starts climbed to 1", climbed);
    report(2, "bbpssw fixed points", ok, buf);
}

// 3. DEJMPS basin: all states with maximal lam00 > 1/2 purify.
void criterion_3() {
    auto t0 = Clock::now();
    Rng rng(3);
    int purified = 0;
    for (int i = 0; i < 1000; ++i) {
        auto w = random_weights(rng, 4);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < 4; ++k)
            if (w[k] > w[arg]) arg = k;
        std::swap(w[0], w[arg]);
        if (w[0] <= 0.5) {
            double boost = 0.501 + 0.45 * rng.uniform() - w[0];
            w[0] += boost;
            double rest = 1.0 - w[0];
            double old_rest = w[1] + w[2] + w[3];
            for (std::size_t k = 1; k < 4; ++k) w[k] *= rest / old_rest;
        }
        BellDiagonal s(w[0], w[1], w[2], w[3]);
        for (int round = 0; round < 200 && s.fidelity() <= 1.0 - 1e-6; ++round)
            s = dejmps_step(s, s).state;
        if (s.fidelity() > 1.0 - 1e-6) ++purified;
    }
    double dt = seconds_since(t0);
    bool ok = purified == 1000 && dt < 10.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/1000 purified dt=%.3fs", purified, dt);
    report(3, "dejmps basin", ok, buf);
}

// 4. Hashing/breeding crossover.
void criterion_4() {
    double root = breeding_threshold_werner();
    bool ok = root > 0.805 && root < 0.815 &&
              std::abs(hashing_yield(BellDiagonal()) - 1.0) < 1e-12 &&
              hashing_yield(BellDiagonal(0.25, 0.25, 0.25, 0.25)) == 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "root=%.6f", root);
    report(4, "hashing crossover", ok, buf);
}

// 5. Oracle certification on >= 100 random inputs per protocol step.
void criterion_5() {
    auto t0 = Clock::now();
    Rng rng(5);
    double max_err = 0.0;
    auto track = [&max_err](double a, double b) {
        max_err = std::max(max_err, std::abs(a - b));
    };
    auto rand_bell = [&rng]() {
        auto w = random_weights(rng, 4);
        return BellDiagonal(w[0], w[1], w[2], w[3]);
    };
    for (int i = 0; i < 100; ++i) {
        double F = 0.3 + 0.7 * rng.uniform();
        StepResult c = bbpssw_step(F), o = replay::bbpssw(F);
        for (int k = 0; k < 4; ++k) track(c.state[k], o.state[k]);
        track(c.p_success, o.p_success);

        BellDiagonal a = rand_bell(), b = rand_bell();
        for (double p : {1.0, 0.98}) {
            GateNoiseModel noise(NoiseKind::depolarizing, p);
            StepResult cd = dejmps_step(a, b, noise), od = replay::dejmps(a, b, noise);
            for (int k = 0; k < 4; ++k) track(cd.state[k], od.state[k]);
            track(cd.p_success, od.p_success);
        }

        double eps = 0.05 + 0.9 * rng.uniform();
        FilterResult cf = filter_step(F, eps), of = replay::filter(F, eps);
        track(cf.fidelity, of.fidelity);
        track(cf.p_success, of.p_success);

        BellDiagonal sw_c = swap_pairs(a, b), sw_o = replay::swap(a, b);
        for (int k = 0; k < 4; ++k) track(sw_c[k], sw_o[k]);
    }
    for (const Graph& g : {Graph::star(3), Graph::line(4)}) {
        std::size_t dim = 1ULL << g.num_vertices();
        for (int i = 0; i < 100; ++i) {
            GraphDiagonalState a(g, random_weights(rng, dim));
            GraphDiagonalState b(g, random_weights(rng, dim));
            MultiStepResult c1 = p1_step(a, b), o1 = replay::p1(a, b);
            MultiStepResult c2 = p2_step(a, b), o2 = replay::p2(a, b);
            track(c1.p_success, o1.p_success);
            track(c2.p_success, o2.p_success);
            for (std::size_t k = 0; k < dim; ++k) {
                track(c1.state.weights()[k], o1.state.weights()[k]);
                track(c2.state.weights()[k], o2.state.weights()[k]);
            }
        }
    }
    Graph tri = Graph::complete(3);
    tri.set_coloring({{0}, {1}, {2}});
    for (int i = 0; i < 100; ++i) {
        GraphDiagonalState s(tri, random_weights(rng, 8));
        int j = static_cast<int>(rng.integer() % 3);
        for (GjVariant v : {GjVariant::erase, GjVariant::purifying}) {
            MultiStepResult c = make_gj_state(s, j, v), o = replay::make_gj(s, j, v);
            track(c.p_success, o.p_success);
            for (std::size_t k = 0; k < 8; ++k)
                track(c.state.weights()[k], o.state.weights()[k]);
        }
    }
    double dt = seconds_since(t0);
    bool ok = max_err < 1e-12 && dt < 120.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "max_err=%.3g dt=%.1fs", max_err, dt);
    report(5, "oracle certification", ok, buf);
}

// 6. Strict protocol ordering at p = 0.99.
void criterion_6() {
    auto d = protocol_range(Protocol::dejmps, 0.99);
    auto b = protocol_range(Protocol::bbpssw, 0.99);
    double pd = protocol_threshold(Protocol::dejmps);
    double pb = protocol_threshold(Protocol::bbpssw);
    bool ok = d && b && d->F_max > b->F_max && d->F_min < b->F_min && pd < pb;
    char buf[160];
    std::snprintf(buf, sizeof buf, "Fmax %.4f>%.4f Fmin %.4f<%.4f pmin %.4f<%.4f",
                  d ? d->F_max : 0.0, b ? b->F_max : 0.0, d ? d->F_min : 1.0,
                  b ? b->F_min : 1.0, pd, pb);
    report(6, "dejmps beats bbpssw", ok, buf);
}

// 7. Nested pumping reaches F >= 1 - 1e-7 with a small schedule.
void criterion_7() {
    auto t0 = Clock::now();
    bool found = false;
    std::string best;
    for (double Fe : {0.8, 0.85, 0.9, 0.95}) {
        for (int levels = 1; levels <= 4 && !found; ++levels)
            for (int steps = 1; steps <= 6 && !found; ++steps) {
                PumpingLadder ladder = nested_pump(
                    werner_from_fidelity(Fe),
                    std::vector<int>(static_cast<std::size_t>(levels), steps));
                if (ladder.state.fidelity() >= 1.0 - 1e-7) {
                    found = true;
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "Fe=%.2f levels=%d steps=%d F=1-%.2g", Fe,
                                  levels, steps, 1.0 - ladder.state.fidelity());
                    best = buf;
                }
            }
        if (found) break;
    }
    double dt = seconds_since(t0);
    bool ok = found && dt < 30.0;
    report(7, "nested pumping", ok, best + " dt=" + std::to_string(dt).substr(0, 5) + "s");
}

// 8. GHZ toy-model threshold bisection vs the closed form.
void criterion_8() {
    bool ok = true;
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        double err = std::abs(ghz_model_threshold_bisect(n, 1e-5) - ghz_toy_threshold(n));
        worst = std::max(worst, err);
        if (err > 1e-3) ok = false;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max_err=%.2g over n=2..6", worst);
    report(8, "ghz toy threshold", ok, buf);
}

// 9. Threshold shapes: flat line-cluster, increasing GHZ star.
void criterion_9() {
    double line_min = 2.0, line_max = 0.0;
    for (int n : {4, 6, 8}) {
        double t = graph_protocol_threshold(Graph::line(n));
        line_min = std::min(line_min, t);
        line_max = std::max(line_max, t);
    }
    double s4 = graph_protocol_threshold(Graph::star(4));
    double s6 = graph_protocol_threshold(Graph::star(6));
    double s8 = graph_protocol_threshold(Graph::star(8));
    bool ok = (line_max - line_min) < 0.01 && s4 < s6 && s6 < s8;
    char buf[128];
    std::snprintf(buf, sizeof buf, "line spread=%.4f ghz=(%.4f,%.4f,%.4f)",
                  line_max - line_min, s4, s6, s8);
    report(9, "threshold scaling shapes", ok, buf);
}

// 10. Repeater resource scaling.
void criterion_10() {
    bool ok = true;
    for (int rounds : {1, 2})
        for (int levels : {1, 2, 3, 4}) {
            RepeaterConfig cfg;
            cfg.levels = levels;
            cfg.elementary = werner_from_fidelity(0.96);
            cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
            cfg.rounds_per_level = rounds;
            cfg.accounting = Accounting::deterministic;
            double N = std::pow(2.0, levels);
            double expected = std::pow(N, std::log2(2.0 * std::pow(2.0, rounds)));
            if (repeater_run(cfg).resources.pairs != expected) ok = false;
        }
    RepeaterConfig cfg;
    cfg.elementary = werner_from_fidelity(0.96);
    cfg.noise = GateNoiseModel(NoiseKind::depolarizing, 0.999);
    cfg.rounds_per_level = 1;
    cfg.accounting = Accounting::deterministic;
    ScalingTable t = resource_scaling(cfg, 5);
    if (t.fit.r2 <= 0.999) ok = false;
    double swap_err = 0.0;
    BellDiagonal out = swap_pairs(WernerParam(0.9).expand(), WernerParam(0.8).expand());
    BellDiagonal expect = WernerParam(0.72).expand();
    for (int k = 0; k < 4; ++k) swap_err = std::max(swap_err, std::abs(out[k] - expect[k]));
    if (swap_err > 1e-12) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "r2=%.6f slope=%.3f swap_err=%.2g", t.fit.r2, t.fit.slope,
                  swap_err);
    report(10, "repeater scaling", ok, buf);
}

// 11. CLI determinism: identical command, byte-identical output.
void criterion_11() {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto run = [](const std::string& args) {
        std::string cmd = std::string(EPP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    bool ok = true;
    const std::string cases[] = {
        "curve --protocol dejmps --p 0.98 --points 25",
        "threshold --protocol bbpssw --p-from 0.965 --p-to 0.99 --points 3",
        "repeater --levels 2 --fidelity 0.97 --p 0.999",
        "hashing --points 15",
        "oracle-certify --trials 3 --seed 17",
    };
    for (const std::string& c : cases) {
        std::string f1 = "/tmp/epp_acc_a.csv", f2 = "/tmp/epp_acc_b.csv";
        if (run(c + " --out " + f1) != 0 || run(c + " --out " + f2) != 0 ||
            slurp(f1) != slurp(f2) || slurp(f1).empty())
            ok = false;
    }
    report(11, "cli determinism", ok, ok ? "5/5 reruns byte-identical" : "mismatch");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures) std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    else std::printf("ACCEPTANCE: all 11 criteria passed\n");
    return g_failures ? 1 : 0;
}
