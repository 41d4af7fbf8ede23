#include "stlkern/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace stlkern {

Trajectory::Trajectory(double t0, double h, std::vector<double> values)
    : t0_(t0), h_(h), values_(std::move(values)) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("trajectory grid step must be positive and finite");
    }
    if (values_.empty()) {
        throw std::invalid_argument("trajectory needs at least one sample");
    }
    if (!std::isfinite(t0)) {
        throw std::invalid_argument("trajectory start time must be finite");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("trajectory samples must be finite");
        }
    }
}

double Trajectory::value_at(double t) const {
    const double rel = (t - t0_) / h_;
    if (rel <= 0.0) return values_.front();
    const double last = static_cast<double>(values_.size() - 1);
    if (rel >= last) return values_.back();
    const std::size_t i = static_cast<std::size_t>(rel);
    const double frac = rel - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double total_variation(const Trajectory& xi) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
        tv += std::fabs(xi[i + 1] - xi[i]);
    }
    return tv;
}

std::size_t monotonicity_changes(const Trajectory& xi) {
    std::size_t changes = 0;
    int last_sign = 0;
    for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
        const double d = xi[i + 1] - xi[i];
        if (d == 0.0) continue;
        const int sign = d > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++changes;
        last_sign = sign;
    }
    return changes;
}

std::vector<Trajectory> znormalize(const std::vector<Trajectory>& set) {
    if (set.empty()) {
        throw std::invalid_argument("znormalize: empty trajectory set");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (const Trajectory& xi : set) {
        for (double v : xi.values()) sum += v;
        count += xi.size();
    }
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (const Trajectory& xi : set) {
        for (double v : xi.values()) ss += (v - mean) * (v - mean);
    }
    const double variance = ss / static_cast<double>(count);
    if (!(variance > 0.0)) {
        throw std::domain_error("znormalize: zero pooled variance");
    }
    const double inv_sd = 1.0 / std::sqrt(variance);

    std::vector<Trajectory> out;
    out.reserve(set.size());
    for (const Trajectory& xi : set) {
        std::vector<double> values(xi.size());
        for (std::size_t i = 0; i < xi.size(); ++i) {
            values[i] = (xi[i] - mean) * inv_sd;
        }
        out.emplace_back(xi.t0(), xi.step(), std::move(values));
    }
    return out;
}

Trajectory resample(const Trajectory& xi, double h_new) {
    if (!(h_new > 0.0) || !std::isfinite(h_new)) {
        throw std::invalid_argument("resample: step must be positive and finite");
    }
    const double t_end = xi.time_at(xi.size() - 1);
    const std::size_t n_new =
        static_cast<std::size_t>(std::floor((t_end - xi.t0()) / h_new + 1e-9));
    std::vector<double> values;
    values.reserve(n_new + 1);
    for (std::size_t i = 0; i <= n_new; ++i) {
        const double t = xi.t0() + h_new * static_cast<double>(i);
        values.push_back(xi.value_at(t));
    }
    // Snap the endpoint onto the original final sample when the new grid
    // reaches t_end (guards against interpolation rounding there).
    const double t_last = xi.t0() + h_new * static_cast<double>(n_new);
    if (std::fabs(t_last - t_end) <= 1e-9 * h_new) {
        values.back() = xi[xi.size() - 1];
    }
    return Trajectory(xi.t0(), h_new, std::move(values));
}

}  // namespace stlkern
