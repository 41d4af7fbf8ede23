#include "stlkern/rng.hpp"

#include <cmath>
#include <numbers>

namespace stlkern {

double Rng::next_normal(double mean, double stddev) {
    const double u1 = next_u01_open_zero();
    const double u2 = next_u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    // One scramble round over (seed + f(index)) decorrelates neighboring
    // streams; index is offset so stream 0 differs from the root seed.
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, SeedRole role) {
    return derive_stream(master_seed ^ 0x5ca1ab1e0ddba11ULL,
                         static_cast<std::uint64_t>(role));
}

}  // namespace stlkern
