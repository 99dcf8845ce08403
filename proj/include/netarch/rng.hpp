#pragma once

#include <cmath>
#include <cstdint>

namespace netarch {

// SplitMix64 (Steele, Lea, Flood 2014; the generator behind java.util.SplittableRandom).
// State advances by a fixed odd gamma, outputs are a finalizing mix of the state, so the
// state after k draws is seed + k*gamma. That makes streams trivially resumable: a graph
// file only needs to record the seed and the number of variates consumed.
class splitmix64 {
public:
    static constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;

    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += gamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exp(1). next_unit() < 1 strictly, so the argument of log1p stays in (-1, 0].
    double next_exp() { return -std::log1p(-next_unit()); }

    std::uint64_t state() const { return state_; }

    static splitmix64 resumed(std::uint64_t seed, std::uint64_t draws_consumed) {
        return splitmix64(seed + draws_consumed * gamma);
    }

private:
    std::uint64_t state_;
};

// Replication seed derivation: seed_i is the i-th output of a SplitMix64 stream seeded
// with the master seed. Stateless (O(1) per index), so worker scheduling cannot affect it.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed + index * splitmix64::gamma).next();
}

}  // namespace netarch
