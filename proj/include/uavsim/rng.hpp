#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace uavsim {

// xoshiro256** seeded through splitmix64. Self-contained so that draws are
// bit-identical across platforms and standard-library versions; the std::
// distributions make no such guarantee. Substreams are derived from a root
// seed plus an integer path (uav id, purpose, replication index, ...) so a
// stream's output never depends on event interleaving.
class Rng {
public:
    Rng() : Rng(0) {}

    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
        std::uint64_t x = seed ^ (salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
        return splitmix64(x);
    }

    // Hash a (root, path...) tuple into a child seed.
    static std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = splitmix64(root);
        for (std::uint64_t p : path) h = mix(h, p);
        return h;
    }

    static Rng derive(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
        return Rng(derive_seed(root, path));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64()); // full 64-bit range
        // Multiply-shift bounded draw (Lemire), without the rejection step;
        // bias is < 2^-53 of a slot for the spans used here.
        const std::uint64_t x = next_u64();
        const unsigned __int128 m = static_cast<unsigned __int128>(x) * span;
        return lo + static_cast<std::int64_t>(m >> 64);
    }

    // Box-Muller; draws two uniforms per call, no cached spare.
    double normal(double mean = 0.0, double sd = 1.0) {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    double exponential(double rate) {
        double u = uniform01();
        while (u <= 0.0) u = uniform01();
        return -std::log(u) / rate;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace uavsim
