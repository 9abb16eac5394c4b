#pragma once

#include <cstdint>
#include <random>

namespace ubb {

/// SplitMix64 finalizer, used to scramble user seeds into well-mixed engine seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seedable, splittable random stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives bounded integers itself so that a seed reproduces the same draws on
/// every standard library. All randomness of a run flows through one Rng in
/// call order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    bool coin() { return (next_u64() >> 63) != 0; }
    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Independent child stream seeded from this stream.
    Rng split();

    /// Number of 64-bit words consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

} // namespace ubb
