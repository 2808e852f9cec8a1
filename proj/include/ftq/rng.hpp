#pragma once

#include <cstdint>
#include <random>

namespace ftq {

/// Deterministic uniform stream. The generator is std::mt19937_64, whose
/// output sequence is pinned by the standard, and the mapping to doubles is
/// an explicit 53-bit center-of-bin transform, so a (seed, n) pair yields
/// the same draws on every platform. Concurrent samplers need distinct seeds.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw strictly inside (0,1): ((x >> 11) + 0.5) * 2^-53.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ftq
