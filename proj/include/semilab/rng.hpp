#pragma once

#include <cstdint>

namespace semilab {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xFF51AFD7ED558CCDull;
    k ^= k >> 33;
    k *= 0xC4CEB9FE1A85EC53ull;
    k ^= k >> 33;
    return k;
}

// Strong 64-bit mix of (master_seed, trial_id, stream_index). Distinct trials
// get statistically independent streams with no shared state, so trial-level
// parallelism needs no RNG synchronization.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t trial_id,
                                        std::uint64_t stream_index) {
    std::uint64_t h = master_seed;
    h = fmix64(h ^ (0x9E3779B97F4A7C15ull * (trial_id + 1)));
    h = fmix64(h ^ (0xC2B2AE3D27D4EB4Full * (stream_index + 1)));
    return h;
}

// xoshiro256++ (Blackman/Vigna), seeded through splitmix64. Self-contained so
// sequences are identical across platforms and standard-library versions.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1): the u = 0 edge (probability 2^-53) maps to the
    // nearest interior point, and likewise u = 1 would.
    double open01() {
        double u = uniform01();
        if (u <= 0.0) u = 0x1.0p-53;
        if (u >= 1.0) u = 1.0 - 0x1.0p-53;
        return u;
    }

    // Uniform on [0, n) via 128-bit multiply-shift.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace semilab
