#pragma once

#include <cstdint>
#include <random>

namespace epp {

// Seedable, splittable generator. Every stochastic routine takes an explicit
// seed (or an Rng), and child streams are derived deterministically so that
// per-trial parallelism cannot change results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : Rng(splitmix(seed)) {}

    // Derived stream for sub-task `index`, independent of draws on *this.
    Rng child(std::uint64_t index) const {
        return Rng(splitmix(seed_mix_ ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
    }

    double uniform() { return dist_(engine_); }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t integer() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    explicit Rng(std::pair<std::uint64_t, std::uint64_t> s)
        : engine_(s.first), seed_mix_(s.second) {}

    // splitmix64; returns (engine seed, mix used for child derivation)
    static std::pair<std::uint64_t, std::uint64_t> splitmix(std::uint64_t x) {
        auto step = [](std::uint64_t& z) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t r = z;
            r = (r ^ (r >> 30)) * 0xbf58476d1ce4e5b9ULL;
            r = (r ^ (r >> 27)) * 0x94d049bb133111ebULL;
            return r ^ (r >> 31);
        };
        std::uint64_t s = x;
        std::uint64_t a = step(s);
        std::uint64_t b = step(s);
        return {a, b};
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_mix_ = 0;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

}  // namespace epp
