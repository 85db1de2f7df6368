#pragma once

#include <cstdint>

namespace annlab {

// SplitMix64: the fixed PRNG used everywhere randomness is needed.
// Chosen over std::mt19937 + distributions because the distribution
// adapters in <random> are not pinned by the standard; this generator
// plus the helpers below produce identical streams on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

    // Uniform in [0, bound). Modulo reduction; bias is < 2^-32 for the
    // bounds used here (vertex counts) and keeps the stream portable.
    std::uint64_t bounded(std::uint64_t bound) { return next_u64() % bound; }

    // Uniform float in [0, 1) with 24 random mantissa bits.
    float next_float() {
        return static_cast<float>(next_u64() >> 40) * (1.0f / 16777216.0f);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

private:
    std::uint64_t state_;
};

// Stateless mix of up to three words into one; used to derive independent
// deterministic sub-streams (per vertex, per iteration) from one seed.
inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    SplitMix64 g(a ^ (b * 0xD1B54A32D192ED03ULL) ^ (c * 0x8CB92BA72F3D8DD7ULL));
    return g.next_u64();
}

}  // namespace annlab
