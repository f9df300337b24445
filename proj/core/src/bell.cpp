#include "epp/bell.hpp"

#include <cmath>
#include <string>

namespace epp {

namespace {

void check_simplex(std::array<double, 4>& w, const char* what) {
    double sum = 0.0;
    for (double& v : w) {
        if (v < 0.0) {
            if (v < -kSimplexTol)
                throw std::invalid_argument(std::string(what) + ": negative weight");
            v = 0.0;
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": weights sum to " + std::to_string(sum));
    if (sum != 1.0)
        for (double& v : w) v /= sum;
}

}  // namespace

BellDiagonal::BellDiagonal(double l00, double l01, double l10, double l11)
    : lam{l00, l01, l10, l11} {
    check_simplex(lam, "BellDiagonal");
}

BellDiagonal::BellDiagonal(const std::array<double, 4>& w) : lam(w) {
    check_simplex(lam, "BellDiagonal");
}

WernerParam::WernerParam(double x_) : x(x_) {
    if (x < -1.0 / 3.0 - kSimplexTol || x > 1.0 + kSimplexTol)
        throw std::invalid_argument("WernerParam: x outside [-1/3, 1]");
}

BellDiagonal WernerParam::expand() const {
    double F = fidelity();
    return werner_from_fidelity(F);
}

PauliChannel::PauliChannel(double p0, double px, double py, double pz)
    : p{p0, px, py, pz} {
    check_simplex(p, "PauliChannel");
}

PauliChannel PauliChannel::depolarizing(double p) {
    double q = (1.0 - p) / 4.0;
    return PauliChannel(p + q, q, q, q);
}

PauliChannel PauliChannel::dephasing(double p) {
    double q = (1.0 - p) / 2.0;
    return PauliChannel(p + q, 0.0, 0.0, q);
}

PauliChannel PauliChannel::bitflip(double p) {
    double q = (1.0 - p) / 2.0;
    return PauliChannel(p + q, q, 0.0, 0.0);
}

GateNoiseModel::GateNoiseModel(NoiseKind k, double p_, double eta)
    : kind(k), p(p_), meas_eta(eta) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("GateNoiseModel: p outside [0,1]");
    if (meas_eta < 0.5 || meas_eta > 1.0)
        throw std::invalid_argument("GateNoiseModel: meas_eta outside [1/2,1]");
}

PauliChannel GateNoiseModel::local_channel() const {
    switch (kind) {
        case NoiseKind::depolarizing: return PauliChannel::depolarizing(p);
        case NoiseKind::dephasing: return PauliChannel::dephasing(p);
        case NoiseKind::bitflip: return PauliChannel::bitflip(p);
    }
    throw std::logic_error("GateNoiseModel: bad kind");
}

BellDiagonal werner_from_fidelity(double F) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("werner_from_fidelity: F outside [0,1]");
    double q = (1.0 - F) / 3.0;
    return BellDiagonal(F, q, q, q);
}

BellDiagonal werner_twirl(const BellDiagonal& s) {
    double q = (1.0 - s.lam[0]) / 3.0;
    BellDiagonal out;
    out.lam = {s.lam[0], q, q, q};
    return out;
}

BellDiagonal channel_to_state(const PauliChannel& ch) {
    // Sending the B half of |Phi00> through the channel: sigma_z^B flips k2,
    // sigma_x^B flips k1, sigma_y^B flips both (index permutation certified
    // by the dense oracle).
    BellDiagonal out;
    out.lam = {ch.p[0], ch.p[3], ch.p[1], ch.p[2]};
    return BellDiagonal(out.lam);
}

BellDiagonal apply_channel_to_weights(const BellDiagonal& s, Party side, const PauliChannel& ch) {
    // Index translations: on A, sigma_x flips k2, sigma_y flips both,
    // sigma_z flips k1; on B the roles of k1 and k2 swap.
    constexpr unsigned kMaskA[4] = {0u, 1u, 3u, 2u};  // I, X, Y, Z (k1 bit = 2, k2 bit = 1)
    constexpr unsigned kMaskB[4] = {0u, 2u, 3u, 1u};
    const unsigned* mask = (side == Party::A) ? kMaskA : kMaskB;
    std::array<double, 4> out{0, 0, 0, 0};
    for (unsigned j = 0; j < 4; ++j)
        for (unsigned idx = 0; idx < 4; ++idx)
            out[idx ^ mask[j]] += ch.p[j] * s.lam[idx];
    BellDiagonal r;
    r.lam = out;
    return r;
}

double entropy(const BellDiagonal& s) {
    double h = 0.0;
    for (double v : s.lam)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

double s_of_F(double F) {
    if (F >= 1.0) return 0.0;
    if (F <= 0.0) return std::log2(3.0);
    return -F * std::log2(F) - (1.0 - F) * std::log2((1.0 - F) / 3.0);
}

}  // namespace epp
