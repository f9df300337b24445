#include "epp/repeater.hpp"

#include <cmath>
#include <stdexcept>

#include "epp/errors.hpp"

namespace epp {

namespace {

// One purification round at a repeater level. Recurrence protocols consume a
// second copy of `state`; pumping consumes a fresh copy of `fresh`.
StepResult purify_round(RepeaterProtocol proto, const BellDiagonal& state,
                        const BellDiagonal& fresh, const GateNoiseModel& noise) {
    switch (proto) {
        case RepeaterProtocol::bbpssw: {
            if (noise.ideal()) return bbpssw_step(werner_twirl(state).fidelity());
            if (noise.kind != NoiseKind::depolarizing)
                throw std::invalid_argument("repeater: noisy BBPSSW needs white noise");
            return bbpssw_step_noisy(WernerParam::from_fidelity(werner_twirl(state).fidelity()),
                                     noise);
        }
        case RepeaterProtocol::dejmps:
            return dejmps_step(state, state, noise);
        case RepeaterProtocol::pumping:
            return dejmps_step(state, fresh, noise);
    }
    throw std::logic_error("repeater: unknown protocol");
}

// Attractive fixed point of the recurrence started from `s` (full
// four-component iteration; equals s when s is not improvable).
BellDiagonal recurrence_fixed_point(RepeaterProtocol proto, const BellDiagonal& s,
                                    const GateNoiseModel& noise) {
    BellDiagonal cur = s;
    for (int i = 0; i < 2000; ++i) {
        StepResult step = purify_round(proto, cur, s, noise);
        double delta = 0.0;
        for (int k = 0; k < 4; ++k)
            delta = std::max(delta, std::abs(step.state.lam[k] - cur.lam[k]));
        if (step.state.fidelity() < cur.fidelity()) break;  // not improvable
        cur = step.state;
        if (delta < 1e-13) break;
    }
    return cur;
}

}  // namespace

BellDiagonal swap_pairs(const BellDiagonal& a, const BellDiagonal& b,
                        const GateNoiseModel& noise) {
    BellDiagonal s = a, t = b;
    if (!noise.ideal()) {
        PauliChannel ch = noise.local_channel();
        // the middle station measures a's B qubit and b's A qubit
        s = apply_channel_to_weights(s, Party::B, ch);
        t = apply_channel_to_weights(t, Party::A, ch);
    }
    std::array<double, 4> w{0.0, 0.0, 0.0, 0.0};
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) w[al ^ be] += s.lam[al] * t.lam[be];
    return BellDiagonal(w[0], w[1], w[2], w[3]);
}

RepeaterResult repeater_run(const RepeaterConfig& cfg) {
    if (cfg.levels < 0) throw std::invalid_argument("repeater_run: negative level count");
    double F0;
    if (cfg.F0) {
        F0 = *cfg.F0;
        if (F0 <= 0.0 || F0 > 1.0) throw std::invalid_argument("repeater_run: F0 outside (0,1]");
    } else {
        // midpoint policy: between the post-swap fidelity of two fixed-point
        // pairs and the fixed point itself
        double f_max, f_swap;
        if (cfg.protocol == RepeaterProtocol::pumping) {
            // a level pumps with its own swapped pair; the first level has the
            // lowest ceiling, so the working point must fit under it
            BellDiagonal swapped = swap_pairs(cfg.elementary, cfg.elementary, cfg.noise);
            f_swap = swapped.fidelity();
            f_max = recurrence_fixed_point(cfg.protocol, swapped, cfg.noise).fidelity();
        } else {
            BellDiagonal fp = recurrence_fixed_point(cfg.protocol, cfg.elementary, cfg.noise);
            f_max = fp.fidelity();
            f_swap = swap_pairs(fp, fp, cfg.noise).fidelity();
        }
        if (f_max <= 0.5)
            throw below_threshold_error("repeater_run: elementary pair is not purifiable");
        F0 = 0.5 * (f_swap + f_max);
    }

    RepeaterResult result;
    result.F0 = F0;
    BellDiagonal state = cfg.elementary;
    double pairs = 1.0;
    double time = 0.0;

    for (int level = 1; level <= cfg.levels; ++level) {
        BellDiagonal swapped = swap_pairs(state, state, cfg.noise);
        pairs *= 2.0;
        time += 1.0;
        RepeaterLevel row;
        row.level = level;
        row.distance = 1 << level;
        row.fidelity_after_swap = swapped.fidelity();

        BellDiagonal cur = swapped;
        double copies = 1.0;  // swapped pairs consumed per purified output
        int rounds = 0;
        auto do_round = [&]() {
            StepResult step = purify_round(cfg.protocol, cur, swapped, cfg.noise);
            if (cfg.protocol == RepeaterProtocol::pumping) {
                copies += 1.0;
            } else {
                copies *= 2.0;
            }
            if (cfg.accounting == Accounting::expected) copies /= step.p_success;
            cur = step.state;
            time += 1.0;
            ++rounds;
        };
        if (cfg.rounds_per_level) {
            for (int r = 0; r < *cfg.rounds_per_level; ++r) do_round();
        } else {
            while (cur.fidelity() < F0) {
                if (rounds >= cfg.max_rounds_per_level)
                    throw below_threshold_error(
                        "repeater_run: cannot re-purify to the working fidelity at level " +
                        std::to_string(level));
                double before = cur.fidelity();
                do_round();
                if (cur.fidelity() <= before + 1e-15 && cur.fidelity() < F0)
                    throw below_threshold_error(
                        "repeater_run: purification stalled below the working fidelity at level " +
                        std::to_string(level));
            }
        }
        pairs *= copies;
        state = cur;
        row.fidelity_after_purify = state.fidelity();
        row.purification_rounds = rounds;
        row.pairs_total = pairs;
        row.time_steps = time;
        result.levels.push_back(row);
    }

    result.state = state;
    result.resources.pairs = pairs;
    result.resources.time_steps = time;
    int n_segments = 1 << cfg.levels;
    result.resources.memory_per_station =
        cfg.protocol == RepeaterProtocol::pumping
            ? cfg.levels + 1
            : 2 * static_cast<int>(std::ceil(pairs / n_segments));
    return result;
}

LogLogFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need at least two points");
    double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LogLogFit fit;
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissa");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0, mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double pred = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

ScalingTable resource_scaling(const RepeaterConfig& cfg, int n_max) {
    if (n_max < 1) throw std::invalid_argument("resource_scaling: n_max < 1");
    ScalingTable table;
    std::vector<double> log_dist, log_pairs;
    for (int n = 1; n <= n_max; ++n) {
        RepeaterConfig c = cfg;
        c.levels = n;
        RepeaterResult r = repeater_run(c);
        table.rows.push_back(r.levels.back());
        log_dist.push_back(std::log2(static_cast<double>(r.levels.back().distance)));
        log_pairs.push_back(std::log2(r.levels.back().pairs_total));
    }
    table.fit = linear_fit(log_dist, log_pairs);
    return table;
}

}  // namespace epp
