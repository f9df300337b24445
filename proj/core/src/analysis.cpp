#include "epp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epp/errors.hpp"
#include "epp/multipartite.hpp"

namespace epp {

namespace {

constexpr double kStationaryTol = 1e-12;

// Iterate the full four-component recurrence from a Werner start and return
// the final fidelity. DEJMPS output is not Werner, so the scalar restriction
// would miss part of its range.
double dejmps_final_fidelity(double F0, const GateNoiseModel& noise, int max_iter = 800) {
    BellDiagonal s = werner_from_fidelity(F0);
    for (int i = 0; i < max_iter; ++i) {
        StepResult step = dejmps_step(s, s, noise);
        double delta = 0.0;
        for (int k = 0; k < 4; ++k)
            delta = std::max(delta, std::abs(step.state.lam[k] - s.lam[k]));
        s = step.state;
        if (delta < 1e-11) break;
    }
    return s.fidelity();
}

std::optional<PurificationRange> dejmps_range_numeric(double p, double tol = 1e-6) {
    GateNoiseModel noise(NoiseKind::depolarizing, p);
    const int grid = 200;
    double first_in = -1.0, last_out = -1.0, f_max = 0.0;
    for (int i = 1; i < grid; ++i) {
        double F0 = 0.5 + 0.5 * static_cast<double>(i) / grid;
        double ff = dejmps_final_fidelity(F0, noise);
        if (ff > F0 + 1e-7) {
            if (first_in < 0.0) first_in = F0;
            f_max = std::max(f_max, ff);
        } else if (first_in < 0.0) {
            last_out = F0;
        }
    }
    if (first_in < 0.0) return std::nullopt;
    double lo = last_out < 0.0 ? 0.5 : last_out;
    double hi = first_in;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (dejmps_final_fidelity(mid, noise) > mid + 1e-7 ? hi : lo) = mid;
    }
    return PurificationRange{0.5 * (lo + hi), f_max, p};
}

}  // namespace

MapTrajectory iterate_to_fixed_point(const ScalarMap& map, double init, double tol,
                                     int max_iter) {
    MapTrajectory traj;
    traj.iterates.push_back(init);
    double x = init;
    for (int i = 0; i < max_iter; ++i) {
        double next = map(x);
        traj.iterates.push_back(next);
        if (!std::isfinite(next) || std::abs(next) > 1e6) {
            traj.status = IterationStatus::diverged;
            return traj;
        }
        if (std::abs(next - x) < tol) {
            traj.status = IterationStatus::converged;
            traj.fixed_point = next;
            return traj;
        }
        x = next;
    }
    traj.status = IterationStatus::max_iterations;
    return traj;
}

std::optional<PurificationRange> purification_range(const ScalarMap& map, double p, double lo,
                                                    double hi, int scan_points, double tol) {
    if (scan_points < 2) throw std::invalid_argument("purification_range: scan too coarse");
    // Locate the gain region {F : map(F) > F} on the scan grid.
    double first_in = -1.0, before_in = lo, after_in = hi;
    bool found = false;
    for (int i = 1; i < scan_points; ++i) {
        double F = lo + (hi - lo) * static_cast<double>(i) / scan_points;
        if (map(F) > F + 1e-12) {
            if (!found) {
                first_in = F;
                before_in = lo + (hi - lo) * static_cast<double>(i - 1) / scan_points;
                found = true;
            }
            after_in = F;
        }
    }
    if (!found) return std::nullopt;
    auto bisect = [&](double a, double b, bool want_gain_at_hi) {
        while (b - a > tol) {
            double mid = 0.5 * (a + b);
            bool gain = map(mid) > mid + 1e-12;
            if (gain == want_gain_at_hi) b = mid; else a = mid;
        }
        return 0.5 * (a + b);
    };
    double F_min = bisect(before_in, first_in, true);
    // Upper endpoint: the attractive fixed point above the gain region.
    double F_max;
    {
        double a = after_in, b = hi;
        while (b - a > tol) {
            double mid = 0.5 * (a + b);
            (map(mid) > mid + 1e-12 ? a : b) = mid;
        }
        F_max = 0.5 * (a + b);
    }
    return PurificationRange{F_min, F_max, p};
}

double threshold_p(const std::function<bool(double)>& purifiable, double lo, double hi,
                   double tol) {
    if (!purifiable(hi))
        throw below_threshold_error("threshold_p: not purifiable even at the upper endpoint");
    if (purifiable(lo)) return lo;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (purifiable(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

ScalarMap protocol_fidelity_map(Protocol proto, const GateNoiseModel& noise) {
    if (proto == Protocol::bbpssw) {
        if (noise.ideal()) return [](double F) { return bbpssw_step(F).state.fidelity(); };
        if (noise.kind != NoiseKind::depolarizing)
            throw std::invalid_argument("protocol_fidelity_map: noisy closed form needs white noise");
        double p = noise.p;
        return [p](double F) {
            return bbpssw_step_noisy_x(WernerParam::from_fidelity(F).x, p).fidelity();
        };
    }
    return [noise](double F) {
        BellDiagonal s = werner_from_fidelity(F);
        return dejmps_step(s, s, noise).state.fidelity();
    };
}

std::optional<PurificationRange> protocol_range(Protocol proto, double p) {
    if (proto == Protocol::bbpssw) {
        auto roots = bbpssw_fixed_points(p);
        if (!roots) return std::nullopt;
        double F_min = WernerParam(roots->first).fidelity();
        double F_max = WernerParam(roots->second).fidelity();
        if (F_min >= F_max) return std::nullopt;
        return PurificationRange{F_min, F_max, p};
    }
    return dejmps_range_numeric(p);
}

bool protocol_purifiable(Protocol proto, double p) {
    return protocol_range(proto, p).has_value();
}

double protocol_threshold(Protocol proto, double tol) {
    return threshold_p([proto](double p) { return protocol_purifiable(proto, p); }, 0.85, 1.0,
                       tol);
}

double ghz_model_threshold_bisect(int n, double tol) {
    auto purifiable = [n](double p) {
        for (int i = 1; i < 100; ++i) {
            double x = static_cast<double>(i) / 100.0;
            if (ghz_binary_noisy_step(x, p, n) > x + 1e-12) return true;
        }
        return false;
    };
    return threshold_p(purifiable, 0.25, 1.0, tol);
}

bool graph_protocol_purifiable(const Graph& g, double p) {
    GateNoiseModel noise(NoiseKind::depolarizing, p);
    for (int i = 0; i < 30; ++i) {
        double q = 0.999 - 0.006 * i;  // preparation quality grid, dense near 1
        GraphDiagonalState s =
            GraphDiagonalState::with_local_noise(g, PauliChannel::depolarizing(q));
        double F0 = s.fidelity();
        Trajectory traj = purify_two_colorable(s, "12", 200, noise);
        if (traj.fidelities.empty()) continue;
        if (traj.fidelities.back() > F0 + 1e-3 && traj.fidelities.back() > 0.6) return true;
    }
    return false;
}

double graph_protocol_threshold(const Graph& g, double tol) {
    return threshold_p([&g](double p) { return graph_protocol_purifiable(g, p); }, 0.80, 1.0,
                       tol);
}

double yield_at_target(Protocol proto, const BellDiagonal& input, double F_target,
                       const GateNoiseModel& noise) {
    if (input.fidelity() >= F_target) return 1.0;
    BellDiagonal state = input;
    double yield = 1.0;
    for (int round = 0; round < 200; ++round) {
        StepResult step;
        if (proto == Protocol::bbpssw) {
            if (noise.ideal()) {
                step = bbpssw_step(state.fidelity());
            } else {
                step = bbpssw_step_noisy(WernerParam::from_fidelity(state.fidelity()), noise);
            }
        } else {
            step = dejmps_step(state, state, noise);
        }
        yield *= step.p_success / 2.0;
        double delta = 0.0;
        for (int k = 0; k < 4; ++k)
            delta = std::max(delta, std::abs(step.state.lam[k] - state.lam[k]));
        state = step.state;
        if (state.fidelity() >= F_target) return yield;
        if (delta < kStationaryTol) break;  // stalled below target
    }
    return 0.0;
}

}  // namespace epp
