#include "doctest.h"

#include <cmath>

#include "epp/multipartite.hpp"
#include "epp/replay.hpp"
#include "epp/rng.hpp"

using namespace epp;

namespace {

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

}  // namespace

TEST_CASE("with_local_noise fidelity drops with channel strength") {
    Graph g = Graph::line(4);
    auto clean = GraphDiagonalState::pure(g);
    CHECK(clean.fidelity() == doctest::Approx(1.0));
    auto noisy = GraphDiagonalState::with_local_noise(g, PauliChannel::depolarizing(0.9));
    auto noisier = GraphDiagonalState::with_local_noise(g, PauliChannel::depolarizing(0.8));
    CHECK(noisy.fidelity() < 1.0);
    CHECK(noisier.fidelity() < noisy.fidelity());
}

TEST_CASE("p1 and p2 match the dense replay on GHZ-3 and the 4-line") {
    Rng rng(31);
    for (const Graph& base : {Graph::star(3), Graph::line(4)}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t dim = 1ULL << base.num_vertices();
            GraphDiagonalState a(base, random_weights(rng, dim));
            GraphDiagonalState b(base, random_weights(rng, dim));
            for (double p : {1.0, 0.98}) {
                GateNoiseModel noise(NoiseKind::depolarizing, p);
                MultiStepResult c1 = p1_step(a, b, noise);
                MultiStepResult o1 = replay::p1(a, b, noise);
                MultiStepResult c2 = p2_step(a, b, noise);
                MultiStepResult o2 = replay::p2(a, b, noise);
                CHECK(c1.p_success == doctest::Approx(o1.p_success).epsilon(1e-11));
                CHECK(c2.p_success == doctest::Approx(o2.p_success).epsilon(1e-11));
                for (std::size_t i = 0; i < dim; ++i) {
                    CHECK(c1.state.weights()[i] ==
                          doctest::Approx(o1.state.weights()[i]).epsilon(1e-11));
                    CHECK(c2.state.weights()[i] ==
                          doctest::Approx(o2.state.weights()[i]).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("two-colorable recurrence purifies a mildly noisy cluster state") {
    Graph g = Graph::line(5);
    auto s = GraphDiagonalState::with_local_noise(g, PauliChannel::depolarizing(0.95));
    Trajectory t = purify_two_colorable(s, "12", 100);
    CHECK(t.converged);
    CHECK(t.state.fidelity() > 1.0 - 1e-9);
    CHECK(t.fidelities.back() > t.fidelities.front());
    for (double p : t.p_successes) {
        CHECK(p > 0.0);
        CHECK(p <= 1.0 + 1e-12);
    }
}

TEST_CASE("binary mixture step agrees with the full p1 step") {
    // star graph, V_A = {center}: binary weights live on index bit 0
    Graph g = Graph::star(3);
    std::vector<double> lamA{0.8, 0.2};
    std::vector<double> full(8, 0.0);
    full[0] = lamA[0];
    full[1] = lamA[1];
    GraphDiagonalState s(g, full);
    auto [binary, pb] = binary_mixture_step(lamA);
    MultiStepResult r = p1_step(s, s);
    CHECK(pb == doctest::Approx(r.p_success).epsilon(1e-12));
    CHECK(binary[0] == doctest::Approx(r.state.weights()[0]).epsilon(1e-12));
    CHECK(binary[1] == doctest::Approx(r.state.weights()[1]).epsilon(1e-12));
}

TEST_CASE("binary mixture fidelity anchor") {
    CHECK(binary_mixture_fidelity_step(0.5, 2) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(binary_mixture_fidelity_step(1.0, 4) == doctest::Approx(1.0));
}

TEST_CASE("make_gj and the helper purification step match the dense replay") {
    Rng rng(32);
    Graph tri = Graph::complete(3);
    tri.set_coloring({{0}, {1}, {2}});
    Graph c5 = Graph::cycle(5);
    c5.set_coloring(greedy_coloring(c5));
    for (const Graph& g : {tri, c5}) {
        std::size_t dim = 1ULL << g.num_vertices();
        GraphDiagonalState s(g, random_weights(rng, dim));
        for (int j = 0; j < static_cast<int>(g.coloring().size()); ++j) {
            for (GjVariant v : {GjVariant::erase, GjVariant::purifying}) {
                MultiStepResult c = make_gj_state(s, j, v);
                MultiStepResult o = replay::make_gj(s, j, v);
                CHECK(c.p_success == doctest::Approx(o.p_success).epsilon(1e-11));
                for (std::size_t i = 0; i < dim; ++i)
                    CHECK(c.state.weights()[i] ==
                          doctest::Approx(o.state.weights()[i]).epsilon(1e-11));
            }
            GraphDiagonalState target(g, random_weights(rng, dim));
            GraphDiagonalState helper(subgraph_gj(g, j), random_weights(rng, dim));
            MultiStepResult c = kcolor_step_ii(target, helper, j);
            MultiStepResult o = replay::kcolor_ii(target, helper, j);
            CHECK(c.p_success == doctest::Approx(o.p_success).epsilon(1e-11));
            for (std::size_t i = 0; i < dim; ++i)
                CHECK(c.state.weights()[i] == doctest::Approx(o.state.weights()[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("k-coloring cycle improves a mildly noisy triangle state") {
    Graph tri = Graph::complete(3);
    tri.set_coloring({{0}, {1}, {2}});
    auto s = GraphDiagonalState::with_local_noise(tri, PauliChannel::depolarizing(0.97));
    MultiStepResult r = kcolor_cycle(s);
    CHECK(r.state.fidelity() > s.fidelity());
    CHECK(r.p_success > 0.0);
    CHECK(r.p_success <= 1.0 + 1e-12);
}

TEST_CASE("ghz toy threshold closed form") {
    CHECK(ghz_toy_threshold(2) == doctest::Approx(0.5));
    CHECK(ghz_toy_threshold(5) == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-12));
    CHECK(ghz_toy_threshold(5) == doctest::Approx(0.8408964).epsilon(1e-6));
}

TEST_CASE("binary ghz map fixes x=1 at p=1 and contracts below threshold") {
    CHECK(ghz_binary_noisy_step(1.0, 1.0, 4) == doctest::Approx(1.0));
    double p_low = ghz_toy_threshold(4) - 0.05;
    double x = 0.9;
    for (int i = 0; i < 200; ++i) x = ghz_binary_noisy_step(x, p_low, 4);
    CHECK(x < 0.1);  // collapses below threshold
    double p_high = ghz_toy_threshold(4) + 0.05;
    x = 0.9;
    for (int i = 0; i < 200; ++i) x = ghz_binary_noisy_step(x, p_high, 4);
    // attractive fixed point sqrt(2a-1)/a of x -> 2ax/(1+(ax)^2)
    double a = std::pow(p_high, 3);
    CHECK(x == doctest::Approx(std::sqrt(2.0 * a - 1.0) / a).epsilon(1e-9));
}
