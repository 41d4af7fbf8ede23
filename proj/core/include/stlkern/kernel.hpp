// ── kernel.hpp ──────────────────────────────────────────────────────────────
// The formula kernel and its Monte-Carlo machinery.
//
// For formulas phi, psi and a trajectory sample {xi_1..xi_M} on a shared
// grid of step h, the raw kernel is the empirical L2 inner product of
// their robustness signals,
//
//   k'(phi, psi) = (1/M) * sum_m [ h * sum_t rho(phi, xi_m, t) * rho(psi, xi_m, t) ]
//
// with the time sum running over every grid point.  The normalized kernel
// divides by sqrt(k'(phi,phi) * k'(psi,psi)) computed on the same sample,
// which keeps |k| <= 1 (Cauchy-Schwarz) and k(phi,phi) = 1 exactly; the
// Gaussian wrap maps the induced distance d^2 = 2 - 2k through
// exp(-d^2 / (2 sigma^2)).
//
// A KernelSample owns the trajectory draw and caches one robustness-signal
// matrix per formula (keyed by printed text), so Gram construction touches
// each formula's monitor exactly once.  Summation order is fixed
// (trajectories in index order, grid left to right): identical samples
// give bit-identical kernels.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "stlkern/formula.hpp"
#include "stlkern/linalg.hpp"
#include "stlkern/trajectory.hpp"

namespace stlkern {

// Self-kernels at or below this are treated as rho == 0 on the sample;
// such formulas cannot be normalized and are rejected from corpora.
inline constexpr double kDegenerateSelfKernel = 1e-12;

class DegenerateFormulaError : public std::runtime_error {
public:
    DegenerateFormulaError(std::string message, std::vector<std::size_t> indices)
        : std::runtime_error(std::move(message)), indices_(std::move(indices)) {}

    const std::vector<std::size_t>& indices() const { return indices_; }

private:
    std::vector<std::size_t> indices_;
};

class KernelSample {
public:
    // Trajectories must share one grid (t0, h, length); fingerprint_seed
    // identifies the draw (measure config + seed) for artifact metadata.
    explicit KernelSample(std::vector<Trajectory> trajectories,
                          std::uint64_t fingerprint = 0);

    std::size_t trajectory_count() const { return trajectories_.size(); }
    std::size_t grid_size() const { return grid_size_; }
    double grid_step() const { return grid_step_; }
    std::uint64_t fingerprint() const { return fingerprint_; }
    const std::vector<Trajectory>& trajectories() const { return trajectories_; }

    // Robustness of f over the whole sample, flattened [trajectory][time];
    // computed on first use, then cached under print_formula(f).
    const std::vector<double>& signals(const Formula& f);

    // raw_kernel(f, f, *this), cached alongside the signals.
    double self_kernel(const Formula& f);

    void clear_cache() {
        cache_.clear();
        self_cache_.clear();
    }

private:
    std::vector<Trajectory> trajectories_;
    std::size_t grid_size_ = 0;
    double grid_step_ = 0.0;
    std::uint64_t fingerprint_ = 0;
    std::unordered_map<std::string, std::vector<double>> cache_;
    std::unordered_map<std::string, double> self_cache_;
};

enum class GramKind : unsigned char { Raw, Normalized, Gaussian };

std::string to_string(GramKind kind);
GramKind gram_kind_from_string(const std::string& s);

struct GramMatrix {
    std::vector<FormulaPtr> formulas;
    SymMatrix entries;
    GramKind kind = GramKind::Normalized;
    double sigma = 0.0;        // Gaussian kind only
    std::uint64_t sample_fingerprint = 0;
    double jitter = 0.0;       // diagonal shift applied downstream, if any

    std::size_t size() const { return entries.size(); }
    double at(std::size_t i, std::size_t j) const { return entries.at(i, j); }
};

// ── pairwise kernels ────────────────────────────────────────────────────────

double raw_kernel(const Formula& phi, const Formula& psi, KernelSample& sample);

// Throws DegenerateFormulaError (index 0 = phi, 1 = psi) when a self-kernel
// is numerically zero.
double normalized_kernel(const Formula& phi, const Formula& psi,
                         KernelSample& sample);

double gaussian_kernel(const Formula& phi, const Formula& psi,
                       KernelSample& sample, double sigma);

// Gaussian wrap over an already-normalized kernel value.
double gaussian_from_normalized(double k_normalized, double sigma);

// ── Gram matrices ───────────────────────────────────────────────────────────

// Full symmetric matrix over the corpus; robustness signals are computed
// once per formula.  Degenerate formulas are reported by corpus index.
GramMatrix gram(const std::vector<FormulaPtr>& corpus, KernelSample& sample,
                GramKind kind, double sigma = 0.0);

// Diagonal shift a downstream solver should add when it needs strict PD:
// 1e-8 * trace / n.
double pd_jitter(const SymMatrix& g);

// ── Monte-Carlo estimators ──────────────────────────────────────────────────

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

// Mean robustness at grid index t_index over the sample, with the standard
// error of the mean (0 when M == 1).
Estimate expected_robustness(const Formula& phi, KernelSample& sample,
                             std::size_t t_index);

// Fraction of trajectories satisfying phi at t_index, with binomial
// standard error.
Estimate satisfaction_probability(const Formula& phi, KernelSample& sample,
                                  std::size_t t_index);

}  // namespace stlkern
