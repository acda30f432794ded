// Deterministic random draws. The helpers below avoid std::*_distribution so
// seeded runs reproduce byte-identically across standard libraries.
#pragma once

#include <cstdint>
#include <random>

namespace idnc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed-splitting rule for experiment trials:
//   seed = splitmix chain over (master, sweep index, policy id, trial index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t sweep_index,
                                 std::uint64_t policy_id, std::uint64_t trial_index) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ splitmix64(sweep_index + 0x51ed270be06127e1ULL));
    s = splitmix64(s ^ splitmix64(policy_id + 0x9d1bc4f6e2c1a3b5ULL));
    s = splitmix64(s ^ splitmix64(trial_index + 0x2545f4914f6cdd1dULL));
    return s;
}

inline double rand_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool rand_bernoulli(std::mt19937_64& rng, double prob) {
    return rand_u01(rng) < prob;
}

// Uniform integer in [0, n) by rejection; n must be > 0.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace idnc
