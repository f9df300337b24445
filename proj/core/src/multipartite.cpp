#include "epp/multipartite.hpp"

#include <cmath>
#include <stdexcept>

namespace epp {

namespace {

void check_weights(std::vector<double>& w, const char* what) {
    double sum = 0.0;
    for (double& v : w) {
        if (v < 0.0) {
            if (v < -kSimplexTol) throw std::invalid_argument(std::string(what) + ": negative weight");
            v = 0.0;
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": weights do not sum to 1");
    if (sum != 1.0)
        for (double& v : w) v /= sum;
}

std::uint64_t class_mask(const std::vector<int>& vertices) {
    std::uint64_t m = 0;
    for (int v : vertices) m |= 1ULL << v;
    return m;
}

// Accept-rule convolution shared by P1/P2, make_gj (purifying) and the
// k-coloring step (ii): indices agree on `fixed_mask`, XOR on the rest.
std::pair<std::vector<double>, double> postselected_convolution(
    const std::vector<double>& a, const std::vector<double>& b, std::uint64_t fixed_mask,
    std::uint64_t free_mask) {
    std::vector<double> out(a.size(), 0.0);
    double total = 0.0;
    std::uint64_t size = a.size();
    for (std::uint64_t mu = 0; mu < size; ++mu) {
        if (a[mu] == 0.0) continue;
        std::uint64_t fixed = mu & fixed_mask;
        std::uint64_t mu_free = mu & free_mask;
        std::uint64_t nu_free = free_mask;
        while (true) {
            double w = a[mu] * b[fixed | nu_free];
            if (w != 0.0) {
                out[fixed | (mu_free ^ nu_free)] += w;
                total += w;
            }
            if (nu_free == 0) break;
            nu_free = (nu_free - 1) & free_mask;
        }
    }
    return {std::move(out), total};
}

std::pair<std::uint64_t, std::uint64_t> bipartition_masks(const Graph& g) {
    if (g.has_coloring() && g.coloring().size() == 2)
        return {class_mask(g.coloring()[0]), class_mask(g.coloring()[1])};
    auto parts = two_color(g);
    if (!parts) throw std::invalid_argument("graph is not two-colorable");
    return {class_mask(parts->first), class_mask(parts->second)};
}

GraphDiagonalState degraded(const GraphDiagonalState& s, const GateNoiseModel& noise) {
    if (noise.ideal()) return s;
    if (noise.meas_eta < 1.0)
        throw std::invalid_argument("measurement noise is not supported for multipartite steps");
    return depolarize_all_qubits(s, noise.local_channel());
}

}  // namespace

GraphDiagonalState::GraphDiagonalState(Graph graph, std::vector<double> lam)
    : graph_(std::move(graph)), lam_(std::move(lam)) {
    if (lam_.size() != (1ULL << graph_.num_vertices()))
        throw std::invalid_argument("GraphDiagonalState: weight count mismatch");
    check_weights(lam_, "GraphDiagonalState");
}

GraphDiagonalState GraphDiagonalState::pure(Graph graph) {
    std::vector<double> lam(1ULL << graph.num_vertices(), 0.0);
    lam[0] = 1.0;
    return GraphDiagonalState(std::move(graph), std::move(lam));
}

GraphDiagonalState GraphDiagonalState::with_local_noise(Graph graph, const PauliChannel& ch) {
    GraphDiagonalState s = pure(std::move(graph));
    return depolarize_all_qubits(s, ch);
}

GraphDiagonalState pauli_on_weights(const GraphDiagonalState& s, int qubit,
                                    const PauliChannel& ch) {
    const Graph& g = s.graph();
    if (qubit < 0 || qubit >= g.num_vertices())
        throw std::out_of_range("pauli_on_weights: qubit out of range");
    std::uint64_t mz = 1ULL << qubit;            // sigma_z flips the vertex bit
    std::uint64_t mx = g.neighborhood(qubit);    // sigma_x flips the neighborhood
    std::uint64_t masks[4] = {0, mx, mx ^ mz, mz};
    const std::vector<double>& in = s.weights();
    std::vector<double> out(in.size(), 0.0);
    for (int j = 0; j < 4; ++j) {
        if (ch.p[j] == 0.0) continue;
        for (std::uint64_t idx = 0; idx < in.size(); ++idx)
            out[idx ^ masks[j]] += ch.p[j] * in[idx];
    }
    return GraphDiagonalState(g, std::move(out));
}

GraphDiagonalState depolarize_all_qubits(const GraphDiagonalState& s, const PauliChannel& ch) {
    GraphDiagonalState out = s;
    for (int q = 0; q < s.num_qubits(); ++q) out = pauli_on_weights(out, q, ch);
    return out;
}

MultiStepResult p1_step(const GraphDiagonalState& a, const GraphDiagonalState& b,
                        const GateNoiseModel& noise) {
    if (a.graph().edges() != b.graph().edges())
        throw std::invalid_argument("p1_step: mismatched graphs");
    auto [mask_a, mask_b] = bipartition_masks(a.graph());
    GraphDiagonalState sa = degraded(a, noise);
    GraphDiagonalState sb = degraded(b, noise);
    auto [out, p] = postselected_convolution(sa.weights(), sb.weights(), mask_a, mask_b);
    if (p <= 0.0) throw std::domain_error("p1_step: zero success probability");
    for (double& v : out) v /= p;
    return {GraphDiagonalState(a.graph(), std::move(out)), p};
}

MultiStepResult p2_step(const GraphDiagonalState& a, const GraphDiagonalState& b,
                        const GateNoiseModel& noise) {
    if (a.graph().edges() != b.graph().edges())
        throw std::invalid_argument("p2_step: mismatched graphs");
    auto [mask_a, mask_b] = bipartition_masks(a.graph());
    GraphDiagonalState sa = degraded(a, noise);
    GraphDiagonalState sb = degraded(b, noise);
    auto [out, p] = postselected_convolution(sa.weights(), sb.weights(), mask_b, mask_a);
    if (p <= 0.0) throw std::domain_error("p2_step: zero success probability");
    for (double& v : out) v /= p;
    return {GraphDiagonalState(a.graph(), std::move(out)), p};
}

Trajectory purify_two_colorable(const GraphDiagonalState& s, const std::string& schedule,
                                int max_rounds, const GateNoiseModel& noise) {
    if (schedule.empty()) throw std::invalid_argument("purify_two_colorable: empty schedule");
    Trajectory traj{{}, {}, s, false};
    GraphDiagonalState current = s;
    for (int r = 0; r < max_rounds; ++r) {
        char which = schedule[r % schedule.size()];
        MultiStepResult step = which == '1' ? p1_step(current, current, noise)
                             : which == '2' ? p2_step(current, current, noise)
                             : throw std::invalid_argument("schedule must be over {1,2}");
        double delta = 0.0;
        for (std::size_t i = 0; i < step.state.weights().size(); ++i)
            delta = std::max(delta, std::abs(step.state.weights()[i] - current.weights()[i]));
        current = step.state;
        traj.fidelities.push_back(current.fidelity());
        traj.p_successes.push_back(step.p_success);
        if (delta < 1e-12 && r % schedule.size() == schedule.size() - 1) {
            traj.converged = true;
            break;
        }
    }
    traj.state = current;
    return traj;
}

std::pair<std::vector<double>, double> binary_mixture_step(const std::vector<double>& lamA) {
    double k = 0.0;
    for (double v : lamA) k += v * v;
    if (k <= 0.0) throw std::domain_error("binary_mixture_step: zero success probability");
    std::vector<double> out(lamA.size());
    for (std::size_t i = 0; i < lamA.size(); ++i) out[i] = lamA[i] * lamA[i] / k;
    return {std::move(out), k};
}

double binary_mixture_fidelity_step(double F, int n_A) {
    double rest = (1.0 - F) * (1.0 - F) / (std::pow(2.0, n_A) - 1.0);
    return F * F / (F * F + rest);
}

MultiStepResult make_gj_state(const GraphDiagonalState& s, int j, GjVariant variant) {
    const Graph& g = s.graph();
    if (!g.has_coloring()) throw std::invalid_argument("make_gj_state: graph has no coloring");
    if (j < 0 || j >= static_cast<int>(g.coloring().size()))
        throw std::out_of_range("make_gj_state: color class out of range");
    std::uint64_t mask_j = class_mask(g.coloring()[j]);
    std::uint64_t mask_rest = ((1ULL << g.num_vertices()) - 1) & ~mask_j;
    Graph gj = subgraph_gj(g, j);
    if (variant == GjVariant::purifying) {
        auto [out, p] = postselected_convolution(s.weights(), s.weights(), mask_j, mask_rest);
        if (p <= 0.0) throw std::domain_error("make_gj_state: zero success probability");
        for (double& v : out) v /= p;
        return {GraphDiagonalState(std::move(gj), std::move(out)), p};
    }
    // erase variant: the second copy's V_j indices are marginalized out, so
    // the step is deterministic.
    std::vector<double> marginal(s.weights().size(), 0.0);
    for (std::uint64_t mu = 0; mu < s.weights().size(); ++mu)
        marginal[mu & mask_rest] += s.weights()[mu];
    std::vector<double> out(s.weights().size(), 0.0);
    for (std::uint64_t mu = 0; mu < s.weights().size(); ++mu) {
        if (s.weights()[mu] == 0.0) continue;
        std::uint64_t nu_rest = mask_rest;
        while (true) {
            double w = s.weights()[mu] * marginal[nu_rest];
            if (w != 0.0) out[mu ^ nu_rest] += w;
            if (nu_rest == 0) break;
            nu_rest = (nu_rest - 1) & mask_rest;
        }
    }
    return {GraphDiagonalState(std::move(gj), std::move(out)), 1.0};
}

MultiStepResult kcolor_step_ii(const GraphDiagonalState& target,
                               const GraphDiagonalState& helper, int j) {
    const Graph& g = target.graph();
    if (!g.has_coloring()) throw std::invalid_argument("kcolor_step_ii: graph has no coloring");
    if (j < 0 || j >= static_cast<int>(g.coloring().size()))
        throw std::out_of_range("kcolor_step_ii: color class out of range");
    if (helper.num_qubits() != target.num_qubits())
        throw std::invalid_argument("kcolor_step_ii: helper size mismatch");
    std::uint64_t mask_j = class_mask(g.coloring()[j]);
    std::uint64_t mask_rest = ((1ULL << g.num_vertices()) - 1) & ~mask_j;
    auto [out, p] =
        postselected_convolution(target.weights(), helper.weights(), mask_j, mask_rest);
    if (p <= 0.0) throw std::domain_error("kcolor_step_ii: zero success probability");
    for (double& v : out) v /= p;
    return {GraphDiagonalState(g, std::move(out)), p};
}

MultiStepResult kcolor_cycle(const GraphDiagonalState& s, const GateNoiseModel& noise) {
    const Graph& g = s.graph();
    if (!g.has_coloring()) throw std::invalid_argument("kcolor_cycle: graph has no coloring");
    GraphDiagonalState current = s;
    double p_total = 1.0;
    for (int j = 0; j < static_cast<int>(g.coloring().size()); ++j) {
        MultiStepResult helper = make_gj_state(degraded(current, noise), j, GjVariant::purifying);
        GraphDiagonalState target = degraded(current, noise);
        GraphDiagonalState helper_state = noise.ideal()
            ? helper.state
            : depolarize_all_qubits(helper.state, noise.local_channel());
        MultiStepResult step = kcolor_step_ii(target, helper_state, j);
        current = GraphDiagonalState(g, step.state.weights());
        p_total *= helper.p_success * step.p_success;
    }
    return {current, p_total};
}

double ghz_toy_threshold(int n) {
    if (n < 2) throw std::invalid_argument("ghz_toy_threshold: n < 2");
    return std::pow(0.5, 1.0 / (n - 1));
}

double ghz_binary_noisy_step(double x, double p, int n) {
    if (n < 2) throw std::invalid_argument("ghz_binary_noisy_step: n < 2");
    double a = std::pow(p, n - 1);
    double ax = a * x;
    return 2.0 * ax / (1.0 + ax * ax);
}

}  // namespace epp
