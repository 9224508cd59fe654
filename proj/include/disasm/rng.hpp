#ifndef DISASM_RNG_HPP
#define DISASM_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace disasm {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent seed streams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b) ^ c);
}

// FNV-1a over a word sequence; stable across builds, unlike std::hash.
inline std::uint64_t hash_ints(const std::vector<int>& v) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int x : v) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Uniform draw in [0, n). std::uniform_int_distribution is implementation
// defined, so results would not be stable; this keeps outputs reproducible.
inline std::size_t rand_below(Rng& rng, std::size_t n) {
    return n <= 1 ? 0 : static_cast<std::size_t>(rng() % n);
}

// Uniform double in [0, 1) with 53 random bits.
inline double rand_real01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rand_below(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace disasm

#endif
