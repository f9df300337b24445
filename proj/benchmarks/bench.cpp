#include <benchmark/benchmark.h>

#include "epp/analysis.hpp"
#include "epp/bipartite.hpp"
#include "epp/dense.hpp"
#include "epp/multipartite.hpp"

namespace {

void BM_dejmps_step(benchmark::State& state) {
    epp::BellDiagonal s(0.7, 0.1, 0.15, 0.05);
    epp::GateNoiseModel noise(epp::NoiseKind::depolarizing, 0.99);
    for (auto _ : state) {
        auto r = epp::dejmps_step(s, s, noise);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_dejmps_step);

void BM_p1_step_cluster8(benchmark::State& state) {
    epp::Graph g = epp::Graph::line(8);
    auto s = epp::GraphDiagonalState::with_local_noise(g, epp::PauliChannel::depolarizing(0.95));
    epp::GateNoiseModel noise(epp::NoiseKind::depolarizing, 0.99);
    for (auto _ : state) {
        auto r = epp::p1_step(s, s, noise);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_p1_step_cluster8);

void BM_dense_cnot_8q(benchmark::State& state) {
    epp::dense::DensityMatrix rho = epp::dense::build_graph_state(epp::Graph::line(8));
    for (auto _ : state) {
        rho.apply_cnot(0, 7);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_dense_cnot_8q);

void BM_bbpssw_threshold(benchmark::State& state) {
    for (auto _ : state) {
        double p = epp::protocol_threshold(epp::Protocol::bbpssw, 1e-4);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_bbpssw_threshold);

}  // namespace

BENCHMARK_MAIN();
