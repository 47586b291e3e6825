#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace sara {

/// splitmix64 step; used both as a generator and to derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

inline std::uint64_t hash_str(std::string_view s, std::uint64_t seed = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Small deterministic generator with stable output across platforms and
/// compilers (std::* distributions are implementation-defined, which would
/// break byte-identical runs).
class Rng {
public:
    Rng() : state_(0x853c49e6748fea9bULL) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Derive an independent stream for a named purpose.
    Rng stream(std::string_view label) const {
        return Rng(hash_mix(state_, hash_str(label)));
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    /// Box-Muller; always consumes exactly two uniforms.
    double gaussian(double mean, double sd) {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t state() const { return state_; }

    bool operator==(const Rng&) const = default;

private:
    std::uint64_t state_;
};

} // namespace sara
