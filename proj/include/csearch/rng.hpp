#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace csearch::rng {

// SplitMix64 finalizer. Spreads counter-derived seeds before they reach the
// main engine so that nearby seeds give unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic uniform stream over mt19937_64. Every helper consumes exactly
// one engine draw per call, so two runs with equal seeds stay draw-aligned
// even when their consumers branch differently.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform double in [0, 1) with 53 significant bits.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Multiply-high reduction: single draw,
    // modulo bias below 2^-64 per call.
    std::uint64_t bounded(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool bernoulli(double p) { return u01() < p; }

    // Fisher-Yates, back to front. n-1 draws for n elements.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Replication r of a run seeded with `master` uses master + r (wrapping).
// Replication 0 therefore reproduces a single run seeded with `master`.
inline std::uint64_t replication_seed(std::uint64_t master, std::uint64_t r) {
    return master + r;
}

inline constexpr std::uint64_t kMarketTag = 0x6D61726B65747374ULL;
inline constexpr std::uint64_t kPolicyTag = 0x706F6C6963797374ULL;

inline Stream derive_stream(std::uint64_t seed, std::uint64_t tag) {
    return Stream(splitmix64(seed ^ tag));
}

} // namespace csearch::rng
