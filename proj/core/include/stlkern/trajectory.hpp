// ── trajectory.hpp ──────────────────────────────────────────────────────────
// Uniformly gridded scalar signals and the measurements used on them.
// A Trajectory holds samples x(t0 + i*h) for i = 0..N; between grid points
// the signal is understood as piecewise linear.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstddef>
#include <vector>

namespace stlkern {

class Trajectory {
public:
    // Requires h > 0, at least one sample, all samples finite.
    Trajectory(double t0, double h, std::vector<double> values);

    double t0() const { return t0_; }
    double step() const { return h_; }
    std::size_t size() const { return values_.size(); }
    double time_at(std::size_t i) const { return t0_ + h_ * static_cast<double>(i); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    // Piecewise-linear interpolation; clamps outside [t0, t_end].
    double value_at(double t) const;

private:
    double t0_;
    double h_;
    std::vector<double> values_;
};

// Sum of absolute increments; for a piecewise-linear grid signal this is the
// exact total variation (the sup over partitions is attained on the grid).
double total_variation(const Trajectory& xi);

// Number of sign changes between consecutive nonzero increments.  Flat
// stretches are skipped, so [0,1,1,0] counts one change (up then down).
std::size_t monotonicity_changes(const Trajectory& xi);

// Subtract the pooled mean and divide by the pooled standard deviation,
// computed across every sample of every trajectory.  Throws on an empty set
// or zero pooled variance.  Grids are unchanged.
std::vector<Trajectory> znormalize(const std::vector<Trajectory>& set);

// Re-grid to step h_new over the same [t0, t_end] span, interpolating
// linearly between original samples.  The last new point is clamped to
// t_end, so both endpoints are preserved.
Trajectory resample(const Trajectory& xi, double h_new);

}  // namespace stlkern
