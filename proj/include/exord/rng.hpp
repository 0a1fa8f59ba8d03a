#pragma once

#include <cstdint>
#include <random>

namespace exord {

// Deterministic measurement randomness. Same seed, same draw sequence, on
// every platform: the unit doubles are derived from raw mt19937_64 output
// instead of std::uniform_real_distribution, whose stream is not pinned by
// the standard.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace exord
