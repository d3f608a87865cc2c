#pragma once

#include <array>
#include <cstdint>

namespace schreierlab {

namespace detail {

// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

// Deterministic 64-bit generator (xoshiro256**). The algorithm is fixed so
// that a given seed produces the same stream on every platform; nothing here
// depends on implementation-defined standard-library distributions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_value_(seed) {
        // SplitMix64 stream expands the seed into the four state words.
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ull;
            word = detail::mix64(s);
        }
    }

    std::uint64_t seed() const { return seed_value_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        u128 m = static_cast<u128>(next_u64()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<u128>(next_u64()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_value_ = 0;
};

// Stable per-trial seed derivation: master + (trial+1)*odd is injective in
// the trial index, and the SplitMix64 finalizer is a bijection, so two trial
// indices under one master can never collide.
inline std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial_index) {
    return detail::mix64(master + (trial_index + 1) * 0x9E3779B97F4A7C15ull);
}

} // namespace schreierlab
