// ── regression.hpp ──────────────────────────────────────────────────────────
// Kernel regression over formula space: Nadaraya-Watson smoothing,
// k-nearest-neighbor averaging, kernel ridge regression and epsilon-SVR.
//
// Training runs on a Gram matrix (Gaussian kind for NW/KRR/SVR; any kind
// for KNN, which ranks neighbors by the normalized-kernel distance
// d^2 = 2 - 2k).  Prediction-time kernel values against the stored
// training formulas are computed on the same KernelSample the Gram came
// from, so a training formula predicts through exactly the entries it was
// fitted on.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stlkern/formula.hpp"
#include "stlkern/kernel.hpp"

namespace stlkern {

enum class RegressionMethod : unsigned char {
    NadarayaWatson,
    KNearestNeighbors,
    KernelRidge,
    SupportVectorRegression,
};

std::string to_string(RegressionMethod m);
RegressionMethod regression_method_from_string(const std::string& s);

enum class TargetKind : unsigned char {
    ExpectedRobustness,
    SatisfactionProbability,
};

std::string to_string(TargetKind k);
TargetKind target_kind_from_string(const std::string& s);

struct RegressionHyper {
    double sigma = 0.22;      // Gaussian bandwidth (NW/KRR/SVR)
    std::size_t neighbors = 5;  // KNN
    double ridge_lambda = 1e-6; // KRR
    double svr_c = 10.0;        // SVR box constraint
    double svr_epsilon = 0.01;  // SVR insensitive tube
};

struct TrainingSet {
    std::vector<FormulaPtr> formulas;
    std::vector<double> targets;
    TargetKind kind = TargetKind::ExpectedRobustness;

    void validate() const;
    std::size_t size() const { return formulas.size(); }
};

struct Regressor {
    RegressionMethod method = RegressionMethod::KernelRidge;
    RegressionHyper hyper;
    TargetKind target_kind = TargetKind::ExpectedRobustness;
    std::vector<FormulaPtr> train_formulas;
    std::vector<double> targets;       // stored for NW/KNN and diagnostics
    std::vector<double> coefficients;  // KRR alpha / SVR beta; empty for NW/KNN
    double bias = 0.0;                 // SVR only
    std::uint64_t gram_fingerprint = 0;
    double jitter_applied = 0.0;       // KRR diagonal shift, if any
};

class SvrConvergenceError : public std::runtime_error {
public:
    SvrConvergenceError(std::string message, double kkt_violation)
        : std::runtime_error(std::move(message)), violation_(kkt_violation) {}

    double kkt_violation() const { return violation_; }

private:
    double violation_;
};

// Fit on a training Gram; targets align with gram.formulas.
//   NW / KNN  store targets only.
//   KRR       solves (G + lambda I) alpha = y; adds pd_jitter(G) once if the
//             factorization fails, errors if it still fails.
//   SVR       two-variable coordinate ascent on the epsilon-insensitive
//             dual to KKT tolerance 1e-4 (at most 1e5 iterations); throws
//             SvrConvergenceError with the final violation on a cap hit.
Regressor fit(RegressionMethod method, const RegressionHyper& hyper,
              const GramMatrix& gram, const std::vector<double>& targets,
              TargetKind target_kind);

// Predict a single formula using kernel evaluations against the training
// formulas on `sample`.  Satisfaction-probability outputs are clamped to
// [0, 1].
double predict(const Regressor& reg, const Formula& phi, KernelSample& sample);

// Same predictors, driven by a precomputed vector of NORMALIZED kernel
// values k(phi, train_i); the public predict() routes through this.
double predict_from_normalized(const Regressor& reg,
                               std::span<const double> k_normalized);

double evaluate_mse(const Regressor& reg, const TrainingSet& test,
                    KernelSample& sample);

// Deterministic shuffled split; train size = round(fraction * n), clamped
// to keep both sides non-empty.
std::pair<TrainingSet, TrainingSet> split(const TrainingSet& set, double fraction,
                                          std::uint64_t seed);

// Index-level form of the same split (first = train, second = test).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double fraction, std::uint64_t seed);

}  // namespace stlkern
