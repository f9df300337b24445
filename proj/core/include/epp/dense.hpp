#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "epp/bell.hpp"
#include "epp/graphs.hpp"

// Brute-force dense density-matrix simulator. Executes protocol steps exactly
// from gates, channels and measurements, at desk scale (<= 12 qubits). All
// index conventions used by the closed-form modules are certified against it.
namespace epp::dense {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Basis { x, z };

// Sign-tracked Pauli string over n qubits, e.g. "XZI" with a +/-1 sign.
// Qubit i corresponds to character i and to bit i of basis-state indices
// (little-endian).
struct PauliString {
    std::string ops;  // over {I,X,Y,Z}
    int sign = 1;

    PauliString() = default;
    PauliString(std::string s, int sg = 1) : ops(std::move(s)), sign(sg) {}

    Matrix matrix() const;
    // Conjugation by CNOT(control -> target): P -> U P U^dagger.
    PauliString conjugate_by_cnot(int control, int target) const;
    bool is_identity_on(int qubit) const { return ops[qubit] == 'I'; }
};

class DensityMatrix {
public:
    // |0...0><0...0| on n qubits.
    explicit DensityMatrix(int nqubits);
    DensityMatrix(int nqubits, Matrix rho);

    static DensityMatrix from_pure(int nqubits, const Vector& psi);

    int nqubits() const { return n_; }
    long dim() const { return rho_.rows(); }
    const Matrix& matrix() const { return rho_; }

    // Validation per the oracle's invariants (Hermitian, trace 1, PSD).
    void validate(double tol = 1e-9) const;

    void apply_unitary(const Matrix& u);  // full-dimension unitary
    void apply_1q(const Matrix& u, int qubit);
    void apply_2q(const Matrix& u, int q0, int q1);  // u indexed by (bit0=q0, bit1=q1)
    void apply_cnot(int control, int target);
    void apply_cz(int q0, int q1);
    void apply_pauli(const PauliString& p);
    void apply_pauli_channel(int qubit, const PauliChannel& ch);

    // Projective measurement with postselection; returns the Born probability
    // and leaves the renormalized post-measurement state (qubit kept).
    double measure(int qubit, Basis basis, int result);

    // Project onto the +1 eigenspace of a Pauli string; returns the
    // probability weight of the branch and renormalizes.
    double project_stabilizer(const PauliString& p);

    DensityMatrix partial_trace_keep(const std::vector<int>& keep) const;

    double fidelity_with(const Vector& psi) const;

private:
    int n_ = 0;
    Matrix rho_;
};

// --- Fixed basis states and circuits -------------------------------------

Matrix pauli_matrix(char op);
Matrix hadamard();

// Rotated Bell basis: |Phi00> = (|0>_z|0>_x + |1>_z|1>_x)/sqrt2,
// |Phi_{k1k2}> = sigma_z^{k1}(A) sigma_z^{k2}(B) |Phi00>, on qubits (A=0,B=1).
Vector bell_vector(int k1, int k2);

// Graph-basis state |Phi_mu>: product of sigma_z^{mu_j} on |Phi_0>, where
// |Phi_0> is the CZ-circuit graph state on |+>^n.
Vector graph_state_vector(const Graph& g);
Vector graph_basis_vector(const Graph& g, unsigned mu);

DensityMatrix build_graph_state(const Graph& g);

// Diagonal Bell weights <Phi_k|rho|Phi_k> of a 2-qubit state (the twirl).
BellDiagonal bell_twirl(const DensityMatrix& rho);

// Dense 2-qubit state with the given Bell-diagonal weights.
DensityMatrix bell_diagonal_state(const BellDiagonal& s);

// Graph-basis diagonal weights of an n-qubit state; `tol` guards that the
// state really is diagonal (off-diagonal leakage below tol in weight sum).
std::vector<double> graph_diagonal_weights(const DensityMatrix& rho, const Graph& g);

DensityMatrix graph_diagonal_state(const Graph& g, const std::vector<double>& lam);

}  // namespace epp::dense
