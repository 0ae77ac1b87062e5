#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wikinav {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed for the index-th independent stream of a master seed. Streams are a
// function of (master, index) only, so concurrent consumers stay reproducible
// no matter how work is scheduled.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9e3779b97f4a7c15ull * (index + 1));
}

// mt19937_64 with hand-rolled bounded/real draws. std::*_distribution output
// is implementation-defined; these draws are pinned by the standard-specified
// engine sequence, which keeps seeded runs byte-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform draw in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace wikinav
