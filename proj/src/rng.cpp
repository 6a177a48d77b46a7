#include "qsim/rng.hpp"

namespace qsim {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * kGolden);
}

std::uint64_t derive_trajectory_seed(std::uint64_t base_seed, std::uint64_t index) {
    return splitmix64_at(base_seed, index);
}

double RngStream::next_unit() {
    const std::uint64_t bits = splitmix64_at(seed_, counter_++);
    // Top 53 bits give a uniform dyadic rational in [0, 1).
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace qsim
