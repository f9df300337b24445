#pragma once

#include <optional>
#include <vector>

#include "epp/bell.hpp"
#include "epp/bipartite.hpp"

namespace epp {

// Entanglement swapping of two Bell-diagonal pairs at a middle station. All
// four Bell outcomes are corrected by local Paulis, so the output is the
// deterministic XOR-group convolution of the weight vectors. With noise, the
// two measured qubits (B side of `a`, A side of `b`) are degraded first.
BellDiagonal swap_pairs(const BellDiagonal& a, const BellDiagonal& b,
                        const GateNoiseModel& noise = {});

enum class RepeaterProtocol { bbpssw, dejmps, pumping };

// How elementary-pair consumption is counted. `deterministic` counts copies
// only (success assumed), `expected` divides by each step's success
// probability.
enum class Accounting { deterministic, expected };

struct RepeaterConfig {
    int levels = 1;                     // N = 2^levels segments
    BellDiagonal elementary;
    RepeaterProtocol protocol = RepeaterProtocol::dejmps;
    GateNoiseModel noise;
    std::optional<double> F0;           // working fidelity; auto-chosen if absent
    std::optional<int> rounds_per_level;  // fixed purification depth (M = 2^rounds)
    Accounting accounting = Accounting::expected;
    int max_rounds_per_level = 30;
};

struct ResourceCount {
    double pairs = 1.0;        // elementary pairs per final pair
    double time_steps = 0.0;   // sequential gate-and-measure rounds
    int memory_per_station = 0;
};

struct RepeaterLevel {
    int level = 0;
    int distance = 1;  // in units of the elementary segment length
    double fidelity_after_swap = 1.0;
    double fidelity_after_purify = 1.0;
    int purification_rounds = 0;
    double pairs_total = 1.0;
    double time_steps = 0.0;
};

struct RepeaterResult {
    BellDiagonal state;
    ResourceCount resources;
    double F0 = 1.0;  // working fidelity actually used
    std::vector<RepeaterLevel> levels;
};

// Nested swap-then-repurify scheme: at each level adjacent pairs are swapped
// (doubling the distance) and the result is purified back to >= F0. Throws
// below_threshold_error when re-purification to F0 is impossible.
RepeaterResult repeater_run(const RepeaterConfig& cfg);

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

// Least-squares fit of y = slope * x + intercept.
LogLogFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingTable {
    std::vector<RepeaterLevel> rows;  // final level of each run, 1..n_max
    LogLogFit fit;                    // log(pairs) vs log(distance)
};

ScalingTable resource_scaling(const RepeaterConfig& cfg, int n_max);

}  // namespace epp
