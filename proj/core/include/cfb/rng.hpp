#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cfb {

/// 64-bit FNV-1a hash.
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Named random stream: the same (seed, name) pair always yields the same
/// sequence, and different names give independent streams.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view name) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(fnv1a(name)), static_cast<std::uint32_t>(fnv1a(name) >> 32)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) from the top 53 bits; identical on every platform.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace cfb
