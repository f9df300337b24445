#include "epp/bipartite.hpp"

#include <cmath>
#include <stdexcept>

namespace epp {

namespace {

constexpr double kFixedPointTol = 1e-12;
constexpr int kMaxIterations = 10000;

BellDiagonal degrade_both_qubits(const BellDiagonal& s, const PauliChannel& ch) {
    return apply_channel_to_weights(apply_channel_to_weights(s, Party::A, ch), Party::B, ch);
}

}  // namespace

FilterResult filter_step(double F, double eps) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("filter_step: F outside [0,1]");
    if (eps <= 0.0 || eps > 1.0)
        throw std::invalid_argument("filter_step: eps outside (0,1]");
    double p = F * eps + (1.0 - F) * eps * eps;
    return {F * eps / p, p};
}

StepResult bbpssw_step(double F) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("bbpssw_step: F outside [0,1]");
    double q = (1.0 - F) / 3.0;
    double p = F * F + 2.0 * F * q + 5.0 * q * q;
    double Fp = (F * F + q * q) / p;
    return {werner_from_fidelity(Fp), p};
}

WernerParam bbpssw_step_noisy_x(double x, double p) {
    double p2 = p * p;
    double p4 = p2 * p2;
    return WernerParam((4.0 * x * x * p4 + 2.0 * x * p2) / (3.0 * x * x * p4 + 3.0));
}

StepResult bbpssw_step_noisy(const WernerParam& x, const GateNoiseModel& noise) {
    if (noise.kind != NoiseKind::depolarizing)
        throw std::invalid_argument("bbpssw_step_noisy: closed form requires white noise");
    WernerParam xp = bbpssw_step_noisy_x(x.x, noise.p);
    // success probability of the underlying step at the degraded fidelity
    double xin = x.x * noise.p * noise.p;
    double F = WernerParam(xin).fidelity();
    double q = (1.0 - F) / 3.0;
    double p_suc = F * F + 2.0 * F * q + 5.0 * q * q;
    return {xp.expand(), p_suc};
}

std::optional<std::pair<double, double>> bbpssw_fixed_points(double p) {
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("bbpssw_fixed_points: p outside (0,1]");
    double y = 1.0 / (p * p);
    double disc = 4.0 + 6.0 * y - 9.0 * y * y;
    if (disc < 0.0) return std::nullopt;
    double r = std::sqrt(disc) / 3.0;
    return std::make_pair(2.0 / 3.0 - r, 2.0 / 3.0 + r);
}

StepResult dejmps_step(const BellDiagonal& a, const BellDiagonal& b,
                       const GateNoiseModel& noise) {
    // basis change (i'): lam10 <-> lam11 on both copies, before the noisy
    // CNOTs
    BellDiagonal s(a.lam[0], a.lam[1], a.lam[3], a.lam[2]);
    BellDiagonal t(b.lam[0], b.lam[1], b.lam[3], b.lam[2]);
    if (!noise.ideal()) {
        PauliChannel ch = noise.local_channel();
        s = degrade_both_qubits(s, ch);
        t = degrade_both_qubits(t, ch);
    }
    // bilateral CNOT + measurement core: keep when the copy-2 parity k2+j2 is
    // even; the kept pair carries (k1+j1, k2)
    double l00 = s.lam[0] * t.lam[0] + s.lam[2] * t.lam[2];
    double l01 = s.lam[1] * t.lam[1] + s.lam[3] * t.lam[3];
    double l10 = s.lam[0] * t.lam[2] + s.lam[2] * t.lam[0];
    double l11 = s.lam[1] * t.lam[3] + s.lam[3] * t.lam[1];
    double norm = l00 + l01 + l10 + l11;
    if (norm <= 0.0) throw std::domain_error("dejmps_step: degenerate input (zero success)");
    if (noise.meas_eta < 1.0) {
        // Classical outcome flips with probability 1-eta on each of the two
        // measured qubits; the keep rule compares the two outcomes, so the
        // accepted mixture picks up the both-flip / no-flip combination.
        double eta = noise.meas_eta;
        double agree = eta * eta + (1.0 - eta) * (1.0 - eta);
        double disagree = 2.0 * eta * (1.0 - eta);
        // weights of the discarded branch (outcomes disagree, k2+j2 odd)
        double m00 = s.lam[0] * t.lam[1] + s.lam[2] * t.lam[3];
        double m01 = s.lam[1] * t.lam[0] + s.lam[3] * t.lam[2];
        double m10 = s.lam[0] * t.lam[3] + s.lam[2] * t.lam[1];
        double m11 = s.lam[1] * t.lam[2] + s.lam[3] * t.lam[0];
        l00 = agree * l00 + disagree * m00;
        l01 = agree * l01 + disagree * m01;
        l10 = agree * l10 + disagree * m10;
        l11 = agree * l11 + disagree * m11;
        norm = l00 + l01 + l10 + l11;
    }
    return {BellDiagonal(l00 / norm, l01 / norm, l10 / norm, l11 / norm), norm};
}

PumpResult pump(const BellDiagonal& elementary, int rounds, const GateNoiseModel& noise) {
    if (rounds < 0) throw std::invalid_argument("pump: negative round count");
    PumpResult out;
    out.state = elementary;
    for (int r = 0; r < rounds; ++r) {
        StepResult step = dejmps_step(out.state, elementary, noise);
        double delta = 0.0;
        for (int i = 0; i < 4; ++i)
            delta = std::max(delta, std::abs(step.state.lam[i] - out.state.lam[i]));
        out.state = step.state;
        out.fidelities.push_back(out.state.fidelity());
        if (delta < kFixedPointTol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

PumpingLadder nested_pump(const BellDiagonal& elementary,
                          const std::vector<int>& steps_per_level,
                          const GateNoiseModel& noise) {
    if (steps_per_level.empty()) throw std::invalid_argument("nested_pump: no levels");
    PumpingLadder ladder;
    BellDiagonal level_elementary = elementary;
    for (int steps : steps_per_level) {
        PumpResult r = pump(level_elementary, steps, noise);
        level_elementary = r.state;
        ladder.level_fidelities.push_back(r.state.fidelity());
    }
    ladder.state = level_elementary;
    return ladder;
}

PumpCost pump_cost_monte_carlo(const BellDiagonal& elementary, const GateNoiseModel& noise,
                               double target_fidelity, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("pump_cost_monte_carlo: trials < 1");
    // Establish that the target is reachable by pumping at all.
    PumpResult probe = pump(elementary, kMaxIterations, noise);
    if (probe.state.fidelity() < target_fidelity && elementary.fidelity() < target_fidelity)
        throw std::invalid_argument("pump_cost_monte_carlo: target beyond the pumping fixed point");
    Rng root(seed);
    double sum = 0.0, sumsq = 0.0, time_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.child(static_cast<std::uint64_t>(t));
        long pairs = 1;  // the stored pair starts as a fresh elementary pair
        long steps = 0;
        BellDiagonal current = elementary;
        while (current.fidelity() < target_fidelity) {
            StepResult step = dejmps_step(current, elementary, noise);
            ++pairs;  // fresh elementary pair consumed by this attempt
            ++steps;
            if (rng.bernoulli(step.p_success)) {
                current = step.state;
            } else {
                current = elementary;  // restart from scratch
                ++pairs;               // new stored pair
            }
        }
        sum += static_cast<double>(pairs);
        sumsq += static_cast<double>(pairs) * static_cast<double>(pairs);
        time_sum += static_cast<double>(steps);
    }
    PumpCost cost;
    cost.trials = trials;
    cost.mean_pairs = sum / trials;
    cost.var_pairs = sumsq / trials - cost.mean_pairs * cost.mean_pairs;
    cost.mean_time_steps = time_sum / trials;
    return cost;
}

double hashing_yield(const BellDiagonal& s) {
    return std::max(0.0, 1.0 - entropy(s));
}

double breeding_threshold_werner() {
    double lo = 0.25, hi = 1.0;
    // S is monotone decreasing on (1/4, 1); S(1/4)=2, S(1)=0.
    while (hi - lo > 1e-8) {
        double mid = 0.5 * (lo + hi);
        (s_of_F(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

WernerParam hashing_noisy_target(double p, int m) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("hashing_noisy_target: p outside [0,1]");
    if (m < 0) throw std::invalid_argument("hashing_noisy_target: negative m");
    return WernerParam(std::pow(p, 2.0 * m));
}

}  // namespace epp
