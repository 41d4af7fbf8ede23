// ── rng.hpp ─────────────────────────────────────────────────────────────────
// Seeded random number generation for every sampler in the library.
//
// The generator is SplitMix64 (Steele, Lea & Flood 2014): a 64-bit counter
// advanced by the golden-ratio increment and scrambled by two xor-shift
// multiplies.  It is tiny, portable (fixed two's-complement wrap-around,
// no implementation-defined behavior) and statistically adequate for the
// Monte-Carlo workloads here.
//
// Stream splitting: derive_stream(seed, index) re-seeds a fresh generator
// from a scramble of (seed, index), so element i of a batch is reproducible
// on its own, independent of how many elements the batch holds and of the
// order they are drawn in.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>

namespace stlkern {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_u01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1]; safe as a log() argument.
    double next_u01_open_zero() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased (128-bit multiply-shift).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_u01();
    }

    // Standard Box-Muller, cosine branch only.  One value per call keeps the
    // draw count per stream position fixed and documentable.
    double next_normal(double mean, double stddev);

    // ±1 with P(-1) = p_minus.
    int next_sign(double p_minus) {
        return next_u01() < p_minus ? -1 : 1;
    }

private:
    std::uint64_t state_;
};

// Independent child seed for stream `index` of a batch rooted at `seed`.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

// Named sub-seeds for the components of a composite experiment, so one
// master seed pins every artifact.  Role tags are part of the file-format
// contract; renumbering them breaks reproducibility of existing sidecars.
enum class SeedRole : std::uint64_t {
    Trajectories = 1,
    Formulas = 2,
    Split = 3,
    Targets = 4,
    KernelSample = 5,
};

std::uint64_t derive_seed(std::uint64_t master_seed, SeedRole role);

}  // namespace stlkern
