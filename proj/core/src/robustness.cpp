#include "stlkern/robustness.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stlkern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// First and last grid index t' with (t' - t) * h inside the window,
// clamped to the trace; empty when first > last.
struct IndexRange {
    std::size_t first;
    std::size_t last;  // inclusive
    bool empty;
};

IndexRange window_range(std::size_t t, std::size_t n, double h,
                        const std::optional<TimeWindow>& w) {
    if (!w) return {t, n - 1, false};
    std::size_t first = t;
    while (first < n && (static_cast<double>(first - t) * h) < w->lo) ++first;
    if (first >= n) return {0, 0, true};
    std::size_t last = first;
    while (last + 1 < n && (static_cast<double>(last + 1 - t) * h) <= w->hi) ++last;
    if ((static_cast<double>(first - t) * h) > w->hi) return {0, 0, true};
    return {first, last, false};
}

// Quantitative semantics, whole-signal at a time.
std::vector<double> rho_signal(const Formula& f, const Trajectory& xi) {
    const std::size_t n = xi.size();
    std::vector<double> out(n);
    switch (f.kind) {
        case FormulaKind::True:
            std::fill(out.begin(), out.end(), kInf);
            break;
        case FormulaKind::Atom:
            if (f.polarity == AtomPolarity::GreaterEqual) {
                for (std::size_t i = 0; i < n; ++i) out[i] = xi[i] - f.threshold;
            } else {
                for (std::size_t i = 0; i < n; ++i) out[i] = f.threshold - xi[i];
            }
            break;
        case FormulaKind::Not: {
            out = rho_signal(*f.left, xi);
            for (double& v : out) v = -v;
            break;
        }
        case FormulaKind::And: {
            out = rho_signal(*f.left, xi);
            const std::vector<double> rhs = rho_signal(*f.right, xi);
            for (std::size_t i = 0; i < n; ++i) out[i] = std::min(out[i], rhs[i]);
            break;
        }
        case FormulaKind::Or: {
            out = rho_signal(*f.left, xi);
            const std::vector<double> rhs = rho_signal(*f.right, xi);
            for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], rhs[i]);
            break;
        }
        case FormulaKind::Eventually: {
            const std::vector<double> child = rho_signal(*f.left, xi);
            if (!f.window) {
                // sup over the suffix: one backward sweep
                double acc = -kInf;
                for (std::size_t i = n; i-- > 0;) {
                    acc = std::max(acc, child[i]);
                    out[i] = acc;
                }
            } else {
                for (std::size_t t = 0; t < n; ++t) {
                    const IndexRange r = window_range(t, n, xi.step(), f.window);
                    double acc = -kInf;
                    if (!r.empty) {
                        for (std::size_t j = r.first; j <= r.last; ++j) {
                            acc = std::max(acc, child[j]);
                        }
                    }
                    out[t] = acc;
                }
            }
            break;
        }
        case FormulaKind::Globally: {
            const std::vector<double> child = rho_signal(*f.left, xi);
            if (!f.window) {
                double acc = kInf;
                for (std::size_t i = n; i-- > 0;) {
                    acc = std::min(acc, child[i]);
                    out[i] = acc;
                }
            } else {
                for (std::size_t t = 0; t < n; ++t) {
                    const IndexRange r = window_range(t, n, xi.step(), f.window);
                    double acc = kInf;
                    if (!r.empty) {
                        for (std::size_t j = r.first; j <= r.last; ++j) {
                            acc = std::min(acc, child[j]);
                        }
                    }
                    out[t] = acc;
                }
            }
            break;
        }
        case FormulaKind::Until: {
            const std::vector<double> lhs = rho_signal(*f.left, xi);
            const std::vector<double> rhs = rho_signal(*f.right, xi);
            if (!f.window) {
                // rho(t) = max_{t'>=t} min(rhs[t'], min lhs[t..t']), folded
                // backward:  rho(t) = min(lhs[t], max(rhs[t], rho(t+1))).
                // min/max only select values, so this equals the exhaustive
                // max-min bit for bit.
                double next = -kInf;
                for (std::size_t i = n; i-- > 0;) {
                    next = std::min(lhs[i], std::max(rhs[i], next));
                    out[i] = next;
                }
            } else {
                for (std::size_t t = 0; t < n; ++t) {
                    const IndexRange r = window_range(t, n, xi.step(), f.window);
                    double best = -kInf;
                    if (!r.empty) {
                        double lhs_min = kInf;
                        std::size_t j = t;
                        // running min of lhs over [t, t'], extended as t' walks
                        // the window
                        for (std::size_t tp = r.first; tp <= r.last; ++tp) {
                            for (; j <= tp; ++j) lhs_min = std::min(lhs_min, lhs[j]);
                            best = std::max(best, std::min(rhs[tp], lhs_min));
                        }
                    }
                    out[t] = best;
                }
            }
            break;
        }
    }
    return out;
}

// Boolean semantics with the same window conventions.
std::vector<char> sat_signal(const Formula& f, const Trajectory& xi) {
    const std::size_t n = xi.size();
    std::vector<char> out(n);
    switch (f.kind) {
        case FormulaKind::True:
            std::fill(out.begin(), out.end(), 1);
            break;
        case FormulaKind::Atom:
            if (f.polarity == AtomPolarity::GreaterEqual) {
                for (std::size_t i = 0; i < n; ++i) out[i] = xi[i] >= f.threshold;
            } else {
                for (std::size_t i = 0; i < n; ++i) out[i] = xi[i] <= f.threshold;
            }
            break;
        case FormulaKind::Not: {
            out = sat_signal(*f.left, xi);
            for (char& v : out) v = !v;
            break;
        }
        case FormulaKind::And: {
            out = sat_signal(*f.left, xi);
            const std::vector<char> rhs = sat_signal(*f.right, xi);
            for (std::size_t i = 0; i < n; ++i) out[i] = out[i] && rhs[i];
            break;
        }
        case FormulaKind::Or: {
            out = sat_signal(*f.left, xi);
            const std::vector<char> rhs = sat_signal(*f.right, xi);
            for (std::size_t i = 0; i < n; ++i) out[i] = out[i] || rhs[i];
            break;
        }
        case FormulaKind::Eventually: {
            const std::vector<char> child = sat_signal(*f.left, xi);
            for (std::size_t t = 0; t < n; ++t) {
                const IndexRange r = window_range(t, n, xi.step(), f.window);
                char any = 0;
                if (!r.empty) {
                    for (std::size_t j = r.first; j <= r.last && !any; ++j) {
                        any = child[j];
                    }
                }
                out[t] = any;
            }
            break;
        }
        case FormulaKind::Globally: {
            const std::vector<char> child = sat_signal(*f.left, xi);
            for (std::size_t t = 0; t < n; ++t) {
                const IndexRange r = window_range(t, n, xi.step(), f.window);
                char all = 1;
                if (!r.empty) {
                    for (std::size_t j = r.first; j <= r.last && all; ++j) {
                        all = child[j];
                    }
                }
                out[t] = all;
            }
            break;
        }
        case FormulaKind::Until: {
            const std::vector<char> lhs = sat_signal(*f.left, xi);
            const std::vector<char> rhs = sat_signal(*f.right, xi);
            for (std::size_t t = 0; t < n; ++t) {
                const IndexRange r = window_range(t, n, xi.step(), f.window);
                char found = 0;
                if (!r.empty) {
                    char lhs_all = 1;
                    std::size_t j = t;
                    for (std::size_t tp = r.first; tp <= r.last && !found; ++tp) {
                        for (; j <= tp; ++j) lhs_all = lhs_all && lhs[j];
                        found = rhs[tp] && lhs_all;
                        if (!lhs_all) break;  // min over [t, t'] stays false
                    }
                }
                out[t] = found;
            }
            break;
        }
    }
    return out;
}

void check_index(const Trajectory& xi, std::size_t t_index) {
    if (t_index >= xi.size()) {
        throw std::out_of_range("monitor index " + std::to_string(t_index) +
                                " outside trajectory of length " +
                                std::to_string(xi.size()));
    }
}

}  // namespace

std::vector<double> robustness_signal(const Formula& f, const Trajectory& xi) {
    return rho_signal(f, xi);
}

double robustness(const Formula& f, const Trajectory& xi, std::size_t t_index) {
    check_index(xi, t_index);
    return rho_signal(f, xi)[t_index];
}

std::vector<char> boolean_signal(const Formula& f, const Trajectory& xi) {
    return sat_signal(f, xi);
}

bool boolean_sat(const Formula& f, const Trajectory& xi, std::size_t t_index) {
    check_index(xi, t_index);
    return sat_signal(f, xi)[t_index] != 0;
}

}  // namespace stlkern
