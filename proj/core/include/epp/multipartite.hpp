#pragma once

#include <vector>

#include "epp/bell.hpp"
#include "epp/graphs.hpp"

namespace epp {

// Mixed state diagonal in the graph-state basis of `graph`: 2^n weights
// indexed by the multi-index mu with bit i <-> vertex i (little-endian).
// Fidelity F = lam[0].
class GraphDiagonalState {
public:
    GraphDiagonalState(Graph graph, std::vector<double> lam);

    // Pure |Phi_0><Phi_0|.
    static GraphDiagonalState pure(Graph graph);
    // Each qubit of the pure state sent through a local channel.
    static GraphDiagonalState with_local_noise(Graph graph, const PauliChannel& ch);

    const Graph& graph() const { return graph_; }
    const std::vector<double>& weights() const { return lam_; }
    double fidelity() const { return lam_[0]; }
    int num_qubits() const { return graph_.num_vertices(); }

private:
    Graph graph_;
    std::vector<double> lam_;
};

struct MultiStepResult {
    GraphDiagonalState state;
    double p_success = 1.0;
};

// Action of a single-qubit Pauli channel on graph-basis weights: sigma_z on
// j flips index bit j, sigma_x flips j's neighborhood bits, sigma_y both.
GraphDiagonalState pauli_on_weights(const GraphDiagonalState& s, int qubit,
                                    const PauliChannel& ch);

GraphDiagonalState depolarize_all_qubits(const GraphDiagonalState& s, const PauliChannel& ch);

// Sub-protocol P1 for a two-colorable graph: CNOTs into copy a on V_A, out of
// a on V_B, then copy b measured; kept when all K_j, j in V_A read +1.
MultiStepResult p1_step(const GraphDiagonalState& a, const GraphDiagonalState& b,
                        const GateNoiseModel& noise = {});

// P2: roles of V_A and V_B exchanged.
MultiStepResult p2_step(const GraphDiagonalState& a, const GraphDiagonalState& b,
                        const GateNoiseModel& noise = {});

// Alternating application of P1/P2 on identical copies. `schedule` is a
// string over {'1','2'} repeated cyclically.
struct Trajectory {
    std::vector<double> fidelities;
    std::vector<double> p_successes;
    GraphDiagonalState state;
    bool converged = false;
};
Trajectory purify_two_colorable(const GraphDiagonalState& s, const std::string& schedule,
                                int max_rounds, const GateNoiseModel& noise = {});

// Binary-mixture special case: weights over mu_A only; one P1 step squares
// and renormalizes, lam~ = lam^2 / K with p = K.
std::pair<std::vector<double>, double> binary_mixture_step(const std::vector<double>& lamA);

// One-parameter binary family update F~ = F^2 / (F^2 + (1-F)^2/(2^nA - 1)).
double binary_mixture_fidelity_step(double F, int n_A);

enum class GjVariant { erase, purifying };

// Step (i) of the k-coloring protocol: two copies of a state on G combine
// into one copy on the two-colorable subgraph g_j.
MultiStepResult make_gj_state(const GraphDiagonalState& s, int j, GjVariant variant);

// Step (ii): purify the V_j indices of `target` (on G) with `helper` (on g_j).
MultiStepResult kcolor_step_ii(const GraphDiagonalState& target,
                               const GraphDiagonalState& helper, int j);

// Full cycle over all color classes j = 0..k-1 (step (i) purifying variant
// feeding step (ii)), consuming three copies of `s` per class.
MultiStepResult kcolor_cycle(const GraphDiagonalState& s, const GateNoiseModel& noise = {});

// Toy-model lower bound for the GHZ purification threshold: (1/2)^{1/(n-1)}.
double ghz_toy_threshold(int n);

// Binary GHZ model with bit-flip noise of reliability p in V_B: the fidelity
// parameter map for one P1 step, x -> 2 a x / (1 + (a x)^2), a = p^{n-1}.
double ghz_binary_noisy_step(double x, double p, int n);

}  // namespace epp
