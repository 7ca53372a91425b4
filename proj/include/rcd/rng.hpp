#pragma once

#include <cstdint>
#include <cstddef>

namespace rcd {

// Deterministic RNG stream. Uses xoshiro256** with splitmix64 seeding so that
// results are bit-identical across platforms and standard libraries (the std
// distributions are implementation-defined, so we avoid them).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    // Independent stream r of a master seed; used for per-realization streams.
    static RngStream substream(std::uint64_t master, std::uint64_t index) {
        std::uint64_t x = master;
        (void)splitmix64(x);
        return RngStream(x ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). Unbiased via rejection.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next_u64();
        while (v >= bound) v = next_u64();
        return static_cast<std::size_t>(v % n);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4]{};
};

}  // namespace rcd
