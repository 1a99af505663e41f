/*
 * Deterministic randomness for key generation, error sampling and
 * experiment replay. All sampling goes through Rng so results depend
 * only on the 64-bit seed, never on the standard library's
 * distribution implementations.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace qcmdpc {

inline uint64_t splitmix64(uint64_t x)
{
    uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stable per-task seed from a master seed and two indices (e.g. code index
// and trial index). Workers seeded this way produce identical streams
// regardless of how tasks are distributed.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b)
{
    uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (a * 0x9E3779B97F4A7C15ULL));
    h = splitmix64(h ^ (b * 0xC2B2AE3D27D4EB4FULL));
    return h;
}

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, bound) by rejection; unbiased and identical across
    // platforms (std::uniform_int_distribution is not).
    uint64_t below(uint64_t bound)
    {
        if (bound == 0)
            throw std::invalid_argument("Rng::below(0)");
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

    // k distinct values from [0, n), sorted ascending. Partial Fisher-Yates:
    // no rejection loop, so cost is independent of k/n density.
    std::vector<uint32_t> distinct(uint32_t n, uint32_t k)
    {
        if (k > n)
            throw std::invalid_argument("cannot draw " + std::to_string(k) +
                                        " distinct values from " + std::to_string(n));
        std::vector<uint32_t> pool(n);
        std::iota(pool.begin(), pool.end(), 0u);
        for (uint32_t i = 0; i < k; i++) {
            uint32_t j = i + uint32_t(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace qcmdpc
