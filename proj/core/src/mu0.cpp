#include "stlkern/mu0.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stlkern/rng.hpp"

namespace stlkern {

void Mu0Config::validate() const {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("mu0: requires a < b, both finite");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("mu0: grid step must be positive");
    }
    const double n = (b - a) / h;
    if (std::fabs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
        throw std::invalid_argument("mu0: (b - a) / h must be an integer");
    }
    if (!(sigma_start > 0.0) || !(sigma_tv > 0.0)) {
        throw std::invalid_argument("mu0: sigma_start and sigma_tv must be positive");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("mu0: q must lie in [0, 1]");
    }
}

std::size_t Mu0Config::segments() const {
    validate();
    return static_cast<std::size_t>(std::llround((b - a) / h));
}

Trajectory sample_mu0_one(const Mu0Config& cfg, std::uint64_t index) {
    const std::size_t n = cfg.segments();
    Rng rng(derive_stream(cfg.seed, index));

    // Draw order is part of the reproducibility contract:
    // start level, TV budget, N-1 gap points, start sign, N flip draws.
    const double start = rng.next_normal(0.0, cfg.sigma_start);
    const double z = rng.next_normal(0.0, cfg.sigma_tv);
    const double tv_budget = z * z;

    std::vector<double> knots(n + 1);
    knots.front() = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        knots[i] = rng.next_uniform(0.0, tv_budget);
    }
    knots.back() = tv_budget;
    std::sort(knots.begin() + 1, knots.end() - 1);

    int sign = rng.next_sign(0.5);
    std::vector<double> values(n + 1);
    values[0] = start;
    for (std::size_t i = 0; i < n; ++i) {
        sign *= rng.next_sign(cfg.q);  // flip applies before the increment is used
        values[i + 1] = values[i] + sign * (knots[i + 1] - knots[i]);
    }
    return Trajectory(cfg.a, cfg.h, std::move(values));
}

std::vector<Trajectory> sample_mu0(const Mu0Config& cfg, std::size_t count) {
    cfg.validate();
    if (count == 0) {
        throw std::invalid_argument("sample_mu0: count must be >= 1");
    }
    std::vector<Trajectory> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(sample_mu0_one(cfg, i));
    }
    return out;
}

}  // namespace stlkern
