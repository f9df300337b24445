#include "epp/replay.hpp"

#include <cmath>
#include <stdexcept>

namespace epp::replay {

namespace {

using dense::Basis;
using dense::Cx;
using dense::DensityMatrix;
using dense::Matrix;
using dense::PauliString;
using dense::Vector;

// Tensor product with `low` on the low-order qubits (0..k-1).
DensityMatrix tensor(const DensityMatrix& low, const DensityMatrix& high) {
    long dl = low.dim(), dh = high.dim();
    Matrix out(dl * dh, dl * dh);
    for (long ih = 0; ih < dh; ++ih)
        for (long jh = 0; jh < dh; ++jh)
            for (long il = 0; il < dl; ++il)
                for (long jl = 0; jl < dl; ++jl)
                    out(ih * dl + il, jh * dl + jl) =
                        high.matrix()(ih, jh) * low.matrix()(il, jl);
    return DensityMatrix(low.nqubits() + high.nqubits(), std::move(out));
}

std::uint64_t class_mask(const std::vector<int>& vertices) {
    std::uint64_t m = 0;
    for (int v : vertices) m |= 1ULL << v;
    return m;
}

std::pair<std::vector<int>, std::vector<int>> bipartition(const Graph& g) {
    if (g.has_coloring() && g.coloring().size() == 2)
        return {g.coloring()[0], g.coloring()[1]};
    auto parts = two_color(g);
    if (!parts) throw std::invalid_argument("replay: graph is not two-colorable");
    return *parts;
}

// Stabilizer generator K_i of the copy-2 graph state inside a 2n-qubit
// register (copy 2 on qubits n..2n-1), neighborhoods taken from `h`.
PauliString copy2_correlation(const Graph& h, int i, int n) {
    std::string ops(static_cast<std::size_t>(2 * n), 'I');
    ops[static_cast<std::size_t>(n + i)] = 'X';
    std::uint64_t nb = h.neighborhood(i);
    for (int k = 0; k < n; ++k)
        if ((nb >> k) & 1ULL) ops[static_cast<std::size_t>(n + k)] = 'Z';
    return PauliString(ops);
}

void degrade_all(DensityMatrix& rho, const GateNoiseModel& noise) {
    if (noise.ideal()) return;
    if (noise.meas_eta < 1.0)
        throw std::invalid_argument("replay: measurement noise is not replayed");
    PauliChannel ch = noise.local_channel();
    for (int q = 0; q < rho.nqubits(); ++q) rho.apply_pauli_channel(q, ch);
}

// Shared core of P1/P2, make_gj and the k-coloring step (ii): CNOTs between
// the copies (copy 2 as source on `src2` vertices, copy 1 as source on the
// rest), then the accept projection of K_i, i in `src2`, on copy 2 (skipped
// for the erase variant), then the trace over copy 2.
MultiStepResult two_copy_step(const DensityMatrix& copy1, const DensityMatrix& copy2,
                              const Graph& out_graph, const Graph& meas_graph,
                              const std::vector<int>& src2, const std::vector<int>& src1,
                              bool postselect, const GateNoiseModel& noise) {
    int n = copy1.nqubits();
    DensityMatrix rho = tensor(copy1, copy2);
    degrade_all(rho, noise);
    for (int v : src2) rho.apply_cnot(n + v, v);
    for (int v : src1) rho.apply_cnot(v, n + v);
    double p = 1.0;
    if (postselect)
        for (int i : src2) p *= rho.project_stabilizer(copy2_correlation(meas_graph, i, n));
    std::vector<int> keep(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) keep[static_cast<std::size_t>(q)] = q;
    DensityMatrix out = rho.partial_trace_keep(keep);
    return {GraphDiagonalState(out_graph, dense::graph_diagonal_weights(out, out_graph)), p};
}

}  // namespace

BellDiagonal channel_to_state(const PauliChannel& ch) {
    DensityMatrix rho = DensityMatrix::from_pure(2, dense::bell_vector(0, 0));
    rho.apply_pauli_channel(1, ch);  // qubit 1 is the transmitted (B) half
    return dense::bell_twirl(rho);
}

BellDiagonal channel_on_weights(const BellDiagonal& s, Party side, const PauliChannel& ch) {
    DensityMatrix rho = dense::bell_diagonal_state(s);
    rho.apply_pauli_channel(side == Party::A ? 0 : 1, ch);
    return dense::bell_twirl(rho);
}

FilterResult filter(double F, double eps) {
    Vector psi = Vector::Zero(4);
    psi(1) = psi(2) = 1.0 / std::sqrt(2.0);  // (|10> + |01>)/sqrt2, qubit 0 = A
    Matrix rho = F * (psi * psi.adjoint());
    rho(0, 0) += 1.0 - F;
    double o[2] = {std::sqrt(eps), 1.0};
    Matrix m = Matrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m(a + 2 * b, a + 2 * b) = o[a] * o[b];
    Matrix filtered = m * rho * m.adjoint();
    double p = filtered.trace().real();
    if (p <= 0.0) throw std::domain_error("replay::filter: zero-probability branch");
    double fout = (psi.adjoint() * filtered * psi)(0).real() / p;
    return {fout, p};
}

namespace {

// Bilateral-CNOT core on copies (A1=0, B1=1, A2=2, B2=3): keep rule selects
// the +1 eigenspace of Z_{A2} X_{B2}.
StepResult bilateral_core(DensityMatrix rho) {
    rho.apply_cnot(0, 2);
    rho.apply_cnot(3, 1);
    double p = rho.project_stabilizer(PauliString("IIZX"));
    DensityMatrix kept = rho.partial_trace_keep({0, 1});
    return {dense::bell_twirl(kept), p};
}

}  // namespace

StepResult bbpssw(double F) {
    DensityMatrix copy = dense::bell_diagonal_state(werner_from_fidelity(F));
    StepResult out = bilateral_core(tensor(copy, copy));
    out.state = werner_twirl(out.state);
    return out;
}

StepResult dejmps(const BellDiagonal& a, const BellDiagonal& b, const GateNoiseModel& noise) {
    DensityMatrix rho = tensor(dense::bell_diagonal_state(a), dense::bell_diagonal_state(b));
    // step (i') basis change, written out as the explicit local rotations
    const Cx i1(0.0, 1.0);
    Matrix ua(2, 2), ub_x(2, 2), h = dense::hadamard();
    ua << 1.0, -i1, -i1, 1.0;
    ub_x << 1.0, i1, i1, 1.0;
    ua /= std::sqrt(2.0);
    Matrix ub = h * (ub_x / std::sqrt(2.0)) * h;  // given in the x basis
    rho.apply_1q(ua, 0);
    rho.apply_1q(ub, 1);
    rho.apply_1q(ua, 2);
    rho.apply_1q(ub, 3);
    degrade_all(rho, noise);
    return bilateral_core(std::move(rho));
}

BellDiagonal swap(const BellDiagonal& a, const BellDiagonal& b, const GateNoiseModel& noise) {
    // pair 1 on (0,1), pair 2 on (2,3); the middle station holds 1 and 2
    auto run = [&noise](const BellDiagonal& s, const BellDiagonal& t) {
        DensityMatrix rho =
            tensor(dense::bell_diagonal_state(s), dense::bell_diagonal_state(t));
        if (!noise.ideal()) {
            PauliChannel ch = noise.local_channel();
            rho.apply_pauli_channel(1, ch);
            rho.apply_pauli_channel(2, ch);
        }
        // Bell measurement on (1,2), outcome Phi00 postselected
        Vector phi = dense::bell_vector(0, 0);
        Matrix proj = Matrix::Zero(16, 16);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                int i0 = i & 1, i12 = (i >> 1) & 3, i3 = (i >> 3) & 1;
                int j0 = j & 1, j12 = (j >> 1) & 3, j3 = (j >> 3) & 1;
                if (i0 != j0 || i3 != j3) continue;
                proj(i, j) = phi(i12) * std::conj(phi(j12));
            }
        Matrix post = proj * rho.matrix() * proj.adjoint();
        double p = post.trace().real();
        if (p <= 0.0) throw std::domain_error("replay::swap: zero-probability outcome");
        DensityMatrix full(4, post / p);
        return dense::bell_twirl(full.partial_trace_keep({0, 3}));
    };
    // The outcome-00 correction is a fixed local Pauli; identify its index
    // shift from the pure-input run, then undo it.
    BellDiagonal pure_out = run(BellDiagonal(), BellDiagonal());
    int shift = 0;
    for (int g = 1; g < 4; ++g)
        if (pure_out.lam[g] > pure_out.lam[shift]) shift = g;
    BellDiagonal raw = run(a, b);
    return BellDiagonal(raw.lam[shift], raw.lam[1 ^ shift], raw.lam[2 ^ shift],
                        raw.lam[3 ^ shift]);
}

std::vector<double> pauli_on_weights(const GraphDiagonalState& s, int qubit,
                                     const PauliChannel& ch) {
    DensityMatrix rho = dense::graph_diagonal_state(s.graph(), s.weights());
    rho.apply_pauli_channel(qubit, ch);
    return dense::graph_diagonal_weights(rho, s.graph());
}

MultiStepResult p1(const GraphDiagonalState& a, const GraphDiagonalState& b,
                   const GateNoiseModel& noise) {
    const Graph& g = a.graph();
    auto [va, vb] = bipartition(g);
    DensityMatrix c1 = dense::graph_diagonal_state(g, a.weights());
    DensityMatrix c2 = dense::graph_diagonal_state(g, b.weights());
    return two_copy_step(c1, c2, g, g, va, vb, true, noise);
}

MultiStepResult p2(const GraphDiagonalState& a, const GraphDiagonalState& b,
                   const GateNoiseModel& noise) {
    const Graph& g = a.graph();
    auto [va, vb] = bipartition(g);
    DensityMatrix c1 = dense::graph_diagonal_state(g, a.weights());
    DensityMatrix c2 = dense::graph_diagonal_state(g, b.weights());
    return two_copy_step(c1, c2, g, g, vb, va, true, noise);
}

MultiStepResult make_gj(const GraphDiagonalState& s, int j, GjVariant variant) {
    const Graph& g = s.graph();
    if (!g.has_coloring()) throw std::invalid_argument("replay::make_gj: no coloring");
    int n = g.num_vertices();
    Graph gj = subgraph_gj(g, j);
    std::vector<int> vj = g.coloring()[static_cast<std::size_t>(j)];
    std::uint64_t mask_j = class_mask(vj);
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!((mask_j >> v) & 1ULL)) rest.push_back(v);
    DensityMatrix c1 = dense::graph_diagonal_state(g, s.weights());
    DensityMatrix rho = tensor(c1, c1);
    for (int v : vj) rho.apply_cnot(n + v, v);
    for (int v : rest) rho.apply_cnot(v, n + v);
    double p = 1.0;
    if (variant == GjVariant::purifying)
        for (int i : vj) p *= rho.project_stabilizer(copy2_correlation(g, i, n));
    // z-measure the remaining copy-2 qubits outcome by outcome. Unlike the
    // two-colorable steps, copy 2 still carries edges inside `rest`, so an
    // outcome of 1 on copy-2 qubit k leaves a sigma_z byproduct on the copy-1
    // neighbours of k within `rest`; undo it before averaging the branches.
    Matrix m = rho.matrix();
    for (int k : rest) {
        long d = m.rows();
        Matrix m0 = Matrix::Zero(d, d), m1 = Matrix::Zero(d, d);
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) {
                if (((r >> (n + k)) & 1L) != ((c >> (n + k)) & 1L)) continue;
                (((r >> (n + k)) & 1L) ? m1 : m0)(r, c) = m(r, c);
            }
        std::string ops(static_cast<std::size_t>(2 * n), 'I');
        std::uint64_t nb = g.neighborhood(k) & ~mask_j;
        for (int i = 0; i < n; ++i)
            if ((nb >> i) & 1ULL) ops[static_cast<std::size_t>(i)] = 'Z';
        Matrix corr = PauliString(ops).matrix();
        m = m0 + corr * m1 * corr.adjoint();
    }
    std::vector<int> keep(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) keep[static_cast<std::size_t>(q)] = q;
    DensityMatrix out = DensityMatrix(2 * n, std::move(m)).partial_trace_keep(keep);
    return {GraphDiagonalState(gj, dense::graph_diagonal_weights(out, gj)), p};
}

MultiStepResult kcolor_ii(const GraphDiagonalState& target, const GraphDiagonalState& helper,
                          int j) {
    const Graph& g = target.graph();
    if (!g.has_coloring()) throw std::invalid_argument("replay::kcolor_ii: no coloring");
    Graph gj = subgraph_gj(g, j);
    std::vector<int> vj = g.coloring()[static_cast<std::size_t>(j)];
    std::uint64_t mask_j = class_mask(vj);
    std::vector<int> rest;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!((mask_j >> v) & 1ULL)) rest.push_back(v);
    DensityMatrix c1 = dense::graph_diagonal_state(g, target.weights());
    DensityMatrix c2 = dense::graph_diagonal_state(gj, helper.weights());
    return two_copy_step(c1, c2, g, gj, vj, rest, true, {});
}

}  // namespace epp::replay
