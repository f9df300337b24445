#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "epp/bell.hpp"
#include "epp/bipartite.hpp"
#include "epp/graphs.hpp"

namespace epp {

// Scalar self-map, typically fidelity -> fidelity for a purification step.
using ScalarMap = std::function<double(double)>;

enum class IterationStatus { converged, max_iterations, diverged };

struct MapTrajectory {
    std::vector<double> iterates;  // includes the initial point
    IterationStatus status = IterationStatus::max_iterations;
    std::optional<double> fixed_point;
};

MapTrajectory iterate_to_fixed_point(const ScalarMap& map, double init, double tol = 1e-12,
                                     int max_iter = 10000);

// Purification interval of a fidelity map under fixed gate noise.
struct PurificationRange {
    double F_min = 0.0;
    double F_max = 0.0;
    double p = 1.0;
};

// Scans [lo, hi] for the gain region {F : map(F) > F} and bisects both basin
// boundaries to `tol`. Empty when no interior gain point exists.
std::optional<PurificationRange> purification_range(const ScalarMap& map, double p,
                                                    double lo = 0.0, double hi = 1.0,
                                                    int scan_points = 1000, double tol = 1e-6);

// Bisection on p for the smallest reliability with a nonempty purification
// interval. `purifiable` must be monotone in p over [lo, hi].
double threshold_p(const std::function<bool(double)>& purifiable, double lo = 0.5,
                   double hi = 1.0, double tol = 1e-5);

enum class Protocol { bbpssw, dejmps };

// Fidelity map of one recurrence step on identical Werner inputs (the
// BBPSSW map re-twirls; the DEJMPS map is evaluated on the Werner expansion).
ScalarMap protocol_fidelity_map(Protocol proto, const GateNoiseModel& noise);

// Range of the named protocol at white-noise reliability p. BBPSSW uses the
// closed-form fixed points; DEJMPS brackets the basin of the iterated
// four-component map numerically.
std::optional<PurificationRange> protocol_range(Protocol proto, double p);

bool protocol_purifiable(Protocol proto, double p);
double protocol_threshold(Protocol proto, double tol = 1e-5);

// Bisection threshold of the restricted binary GHZ model with bit-flip noise
// (one-parameter map x -> 2 a x / (1 + (a x)^2), a = p^{n-1}).
double ghz_model_threshold_bisect(int n, double tol = 1e-5);

// Gate-noise threshold for purifying the graph state of `g` with the P1/P2
// recurrence under single-qubit white noise. `purifiable` probes a grid of
// input preparation qualities for any that the protocol improves to a stable
// fixed point above the start.
bool graph_protocol_purifiable(const Graph& g, double p);
double graph_protocol_threshold(const Graph& g, double tol = 1e-3);

// Expected output pairs per input pair of the recurrence tree run until
// F >= F_target: product over rounds of p_success / 2. Zero if unreachable.
double yield_at_target(Protocol proto, const BellDiagonal& input, double F_target,
                       const GateNoiseModel& noise = {});

}  // namespace epp
