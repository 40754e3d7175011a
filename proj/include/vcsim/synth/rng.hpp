#pragma once

#include <cstdint>
#include <random>

namespace vcsim::synth {

// std::mt19937_64's output sequence is fixed by the standard, but the
// <random> distributions are not; these helpers map raw draws to ranges the
// same way on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    /// Uniform in [0, 1) with 53 bits.
    double unit();
    bool chance(double p);

private:
    std::mt19937_64 engine_;
};

/// Mixes several values into one seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

} // namespace vcsim::synth
