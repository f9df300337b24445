#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace epp {

// Absolute tolerance for probability-simplex checks. Drift below this is
// renormalized silently; anything larger is an error.
inline constexpr double kSimplexTol = 1e-12;

// Two-qubit state diagonal in the Bell basis {|Phi_{k1 k2}>}, stored as the
// four weights (lam00, lam01, lam10, lam11) with index = 2*k1 + k2.
// k1 is the eigenvalue bit of K1 = X_A Z_B, k2 of K2 = Z_A X_B.
// Fidelity F = lam00.
struct BellDiagonal {
    std::array<double, 4> lam{1.0, 0.0, 0.0, 0.0};

    BellDiagonal() = default;
    BellDiagonal(double l00, double l01, double l10, double l11);
    explicit BellDiagonal(const std::array<double, 4>& w);

    double fidelity() const { return lam[0]; }
    double operator[](std::size_t i) const { return lam[i]; }
    double& operator[](std::size_t i) { return lam[i]; }
};

// One-parameter Werner family rho_W(x) = x|Phi00><Phi00| + (1-x)/4 * Id.
struct WernerParam {
    double x = 1.0;

    explicit WernerParam(double x_);
    double fidelity() const { return (3.0 * x + 1.0) / 4.0; }
    static WernerParam from_fidelity(double F) { return WernerParam((4.0 * F - 1.0) / 3.0); }
    BellDiagonal expand() const;
};

// Pauli-diagonal single-qubit channel: probabilities over (I, X, Y, Z).
struct PauliChannel {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    PauliChannel() = default;
    PauliChannel(double p0, double px, double py, double pz);

    static PauliChannel identity() { return {}; }
    // White noise with reliability p: p*rho + (1-p)/4 * sum_j sigma_j rho sigma_j
    static PauliChannel depolarizing(double p);
    static PauliChannel dephasing(double p);
    static PauliChannel bitflip(double p);
};

enum class NoiseKind { depolarizing, dephasing, bitflip };

// Noise model for two-qubit gates: local channels with reliability p applied
// to each participating qubit before the perfect gate. meas_eta < 1 flips
// classical measurement outcomes with probability 1 - meas_eta.
struct GateNoiseModel {
    NoiseKind kind = NoiseKind::depolarizing;
    double p = 1.0;
    double meas_eta = 1.0;

    GateNoiseModel() = default;
    GateNoiseModel(NoiseKind k, double p_, double eta = 1.0);

    bool ideal() const { return p >= 1.0 && meas_eta >= 1.0; }
    PauliChannel local_channel() const;
};

// Which side of the pair a single-qubit channel acts on. The Bell-index
// action differs between the two (certified against the dense oracle).
enum class Party { A, B };

BellDiagonal werner_from_fidelity(double F);

// Deterministic averaging map equalizing the three non-target weights.
BellDiagonal werner_twirl(const BellDiagonal& s);

// Bell weights of the state (Id (x) ch)|Phi00><Phi00| obtained by sending one
// half of |Phi00> through the channel.
BellDiagonal channel_to_state(const PauliChannel& ch);

// Action of a single-qubit Pauli channel on Bell-diagonal weights.
BellDiagonal apply_channel_to_weights(const BellDiagonal& s, Party side, const PauliChannel& ch);

// Von Neumann entropy in bits: -sum lam log2 lam (0 log 0 = 0).
double entropy(const BellDiagonal& s);

// S(F) = -F log2 F - (1-F) log2((1-F)/3); entropy of the Werner state.
double s_of_F(double F);

}  // namespace epp
