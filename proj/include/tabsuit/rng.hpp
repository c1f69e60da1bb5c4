#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tabsuit {

// splitmix64 step; used to derive independent sub-seeds from one run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Unbiased draw in [0, n) via masked rejection. mt19937_64 output is pinned
// by the standard, so sequences are identical across platforms.
inline std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t range = n - 1;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(range | 1);
    std::uint64_t x;
    do {
        x = gen() & mask;
    } while (x >= n);
    return x;
}

// Uniform double in [0, 1) using the top 53 bits.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// k distinct indices from [0, n), in increasing order, via partial
// Fisher-Yates. Deterministic in seed.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle_values(std::vector<T>& values, std::mt19937_64& gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_draw(gen, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace tabsuit
