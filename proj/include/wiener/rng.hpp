#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace wiener {

// Identifies one reproducible random stream. Distinct (master, stream)
// pairs give statistically independent streams; the same pair always
// replays the same sequence, independent of worker count.
struct SeedSpec {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    bool operator==(const SeedSpec&) const = default;
};

// SplitMix64 finalizer (Steele/Lea/Flood), used for seeding and for
// deriving sub-stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives an independent stream for a tagged sub-task (per-level runs,
// per-check runs). Chunk-level derivation happens inside the samplers.
constexpr SeedSpec substream(SeedSpec seed, std::uint64_t tag) {
    return SeedSpec{seed.master, mix64(seed.stream ^ mix64(tag))};
}

// xoshiro256++ (Blackman/Vigna). State is expanded from
// (master, stream, chunk) through a SplitMix64 chain.
class Xoshiro256pp {
public:
    Xoshiro256pp(SeedSpec seed, std::uint64_t chunk = 0) {
        std::uint64_t sm = mix64(seed.master);
        sm = mix64(sm ^ mix64(seed.stream));
        sm = mix64(sm ^ mix64(chunk));
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ull;
            word = mix64(sm);
        }
        state_[0] |= 1; // never all-zero
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on (0, 1), 53-bit resolution
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Standard normal draws via the Marsaglia polar method. Exact in law;
// the generator choice is gated by a Kolmogorov-Smirnov test in the
// test suite (n = 1e6, level 1e-3).
class NormalSampler {
public:
    explicit NormalSampler(SeedSpec seed, std::uint64_t chunk = 0) : rng_(seed, chunk) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * rng_.uniform01() - 1.0;
            v = 2.0 * rng_.uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace wiener
