#pragma once

#include <optional>
#include <vector>

#include "epp/bell.hpp"
#include "epp/rng.hpp"

namespace epp {

// Outcome of one probabilistic purification step.
struct StepResult {
    BellDiagonal state;
    double p_success = 1.0;
};

struct FilterResult {
    double fidelity = 1.0;
    double p_success = 1.0;
};

// Gisin-type filtering on the rank-2 family F|Psi+><Psi+| + (1-F)|00><00|.
// F' = F eps / (F eps + (1-F) eps^2), p = F eps + (1-F) eps^2.
FilterResult filter_step(double F, double eps);

// One recurrence step on two identical Werner states of fidelity F.
// Output is returned in Werner form (the protocol re-twirls on iteration).
StepResult bbpssw_step(double F);

// Noisy variant on the Werner parameter x: x' = (4x^2 p^4 + 2x p^2)/(3x^2 p^4 + 3).
WernerParam bbpssw_step_noisy_x(double x, double p);
StepResult bbpssw_step_noisy(const WernerParam& x, const GateNoiseModel& noise);

// Fixed points x- < x+ of the noisy BBPSSW map. Empty below threshold.
std::optional<std::pair<double, double>> bbpssw_fixed_points(double p);

// One recurrence step on Bell-diagonal pairs a (kept) and b (measured).
// Includes the basis-change flip lam10 <-> lam11 on both inputs. With noise,
// each qubit is degraded by the local channel before the CNOTs.
StepResult dejmps_step(const BellDiagonal& a, const BellDiagonal& b,
                       const GateNoiseModel& noise = {});

// Entanglement pumping: iterate dejmps_step with a fixed elementary pair.
struct PumpResult {
    std::vector<double> fidelities;  // after each successful round
    BellDiagonal state;
    bool converged = false;  // stationary to 1e-12 before the round limit
};
PumpResult pump(const BellDiagonal& elementary, int rounds, const GateNoiseModel& noise = {});

// Nested pumping: level k pumps with the fixed point of level k-1 as its
// elementary pair, for steps_per_level[k] rounds.
struct PumpingLadder {
    std::vector<double> level_fidelities;  // fidelity at the top of each level
    BellDiagonal state;
};
PumpingLadder nested_pump(const BellDiagonal& elementary,
                          const std::vector<int>& steps_per_level,
                          const GateNoiseModel& noise = {});

// Monte Carlo cost of pumping to a target fidelity with restart-on-failure.
struct PumpCost {
    double mean_pairs = 0.0;
    double var_pairs = 0.0;
    double mean_time_steps = 0.0;
    int trials = 0;
};
PumpCost pump_cost_monte_carlo(const BellDiagonal& elementary, const GateNoiseModel& noise,
                               double target_fidelity, int trials, std::uint64_t seed);

// Asymptotic hashing/breeding yield D = max(0, 1 - S(rho)).
double hashing_yield(const BellDiagonal& s);

// Root of S(F) = 1 on (1/4, 1): minimal Werner fidelity with positive yield.
double breeding_threshold_werner();

// Werner parameter p^{2m} left in the hashing target pair after m noisy
// bilateral CNOTs with gate reliability p.
WernerParam hashing_noisy_target(double p, int m);

}  // namespace epp
