// rng.hpp
// Counter-based random stream. A draw is a pure function of (seed, counter),
// so a trajectory is replayable from its seed alone and the number of draws
// consumed is auditable.

#pragma once

#include <cstdint>

namespace qsim {

// i-th output of a splitmix64 generator seeded with `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index);

// Seed for trajectory `index` of an ensemble with seed `base_seed`.
// Fixed function, documented in the README: splitmix64_at(base_seed, index).
std::uint64_t derive_trajectory_seed(std::uint64_t base_seed, std::uint64_t index);

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed) {}

    // Uniform double in [0, 1); advances the counter by one.
    double next_unit();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace qsim
