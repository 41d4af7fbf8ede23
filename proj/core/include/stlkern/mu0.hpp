// ── mu0.hpp ─────────────────────────────────────────────────────────────────
// The base measure over piecewise-linear trajectories on [a, b]: simple
// signals are likely, wiggly ones are not.  A draw fixes the start level
// (Gaussian), the total variation budget K (squared Gaussian), spreads K
// over the grid via ordered uniform gaps, and walks the increments with a
// sign that flips with probability q at each step.
//
// The sampler is a pure function of (config, count): trajectory i is drawn
// from its own derived stream, so it does not depend on count or on the
// other trajectories.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>
#include <vector>

#include "stlkern/trajectory.hpp"

namespace stlkern {

struct Mu0Config {
    double a = 0.0;           // interval start, seconds
    double b = 20.0;          // interval end, seconds
    double h = 1.0;           // grid step; (b - a) / h must be integral
    double sigma_start = 1.0; // stddev of the start level
    double sigma_tv = 1.0;    // K = Z^2 with Z ~ N(0, sigma_tv)
    double q = 0.1;           // sign-flip probability per step
    std::uint64_t seed = 0;

    // Grid point count minus one; throws if the config is invalid.
    std::size_t segments() const;
    void validate() const;
};

std::vector<Trajectory> sample_mu0(const Mu0Config& cfg, std::size_t count);

// Single draw from stream `index` of the batch rooted at cfg.seed.
// total_variation(result) telescopes back to the drawn K.
Trajectory sample_mu0_one(const Mu0Config& cfg, std::uint64_t index);

}  // namespace stlkern
