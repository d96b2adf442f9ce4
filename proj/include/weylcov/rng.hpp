// rng.hpp — Seedable deterministic random number generation.
//
// All stochastic routines in this library draw from xoshiro256** seeded
// through SplitMix64, with Gaussian variates produced by Box-Muller.  The
// algorithms are fixed here (rather than delegated to std:: distributions)
// so that a seed reproduces the same stream bit-for-bit on every platform.

#pragma once

#include <cmath>
#include <cstdint>

namespace weylcov {

// SplitMix64: used to expand a 64-bit seed into generator state and to
// derive independent per-task seeds by counting.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256** by Blackman & Vigna (public domain reference implementation).
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
        has_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next() {
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

    // Uniform double in [0, 1), 53 significant bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1] (never zero; safe under log).
    double uniform01_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller; one spare is cached per pair.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    bool has_spare_;
    double spare_;
};

}  // namespace weylcov
