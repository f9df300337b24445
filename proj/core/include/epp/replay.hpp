#pragma once

#include "epp/bell.hpp"
#include "epp/bipartite.hpp"
#include "epp/dense.hpp"
#include "epp/multipartite.hpp"

// Dense-oracle replays of every closed-form protocol step: each function
// rebuilds the step from gates, channels and postselected measurements on
// the brute-force simulator, so the index-algebra implementations can be
// certified against them to 1e-12.
namespace epp::replay {

// Bell weights of (Id (x) ch)|Phi00><Phi00| by direct channel application.
BellDiagonal channel_to_state(const PauliChannel& ch);

// Single-qubit channel on one side of a Bell-diagonal pair.
BellDiagonal channel_on_weights(const BellDiagonal& s, Party side, const PauliChannel& ch);

// Filtering on F|Psi+><Psi+| + (1-F)|00><00| via the explicit local filter
// operators.
FilterResult filter(double F, double eps);

// Full BBPSSW round: bilateral CNOTs, z/x measurements on copy 2, keep on
// even parity, final twirl to Werner form.
StepResult bbpssw(double F);

// DEJMPS round including the explicit basis-change rotations of step (i'),
// with optional local noise channels before the CNOTs.
StepResult dejmps(const BellDiagonal& a, const BellDiagonal& b, const GateNoiseModel& noise = {});

// Entanglement swapping via an explicit Bell measurement at the middle
// station (outcome corrected by the convention-fixing local Pauli).
BellDiagonal swap(const BellDiagonal& a, const BellDiagonal& b, const GateNoiseModel& noise = {});

// Graph-basis channel action.
std::vector<double> pauli_on_weights(const GraphDiagonalState& s, int qubit,
                                     const PauliChannel& ch);

// Sub-protocols P1/P2 on two copies of a two-colorable graph state.
MultiStepResult p1(const GraphDiagonalState& a, const GraphDiagonalState& b,
                   const GateNoiseModel& noise = {});
MultiStepResult p2(const GraphDiagonalState& a, const GraphDiagonalState& b,
                   const GateNoiseModel& noise = {});

// Step (i) of the k-coloring protocol on two copies of a state on G.
MultiStepResult make_gj(const GraphDiagonalState& s, int j, GjVariant variant);

// Step (ii): target on G purified by a helper on g_j.
MultiStepResult kcolor_ii(const GraphDiagonalState& target, const GraphDiagonalState& helper,
                          int j);

}  // namespace epp::replay
