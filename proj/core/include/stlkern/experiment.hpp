// ── experiment.hpp ──────────────────────────────────────────────────────────
// Glue between the samplers, the kernel and the regressors: the pieces a
// full prediction experiment is assembled from, shared by the command-line
// tool and the acceptance suite.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlkern/formula_gen.hpp"
#include "stlkern/kernel.hpp"
#include "stlkern/mu0.hpp"
#include "stlkern/regression.hpp"
#include "stlkern/rng.hpp"
#include "stlkern/stochastic.hpp"

namespace stlkern {

// Which stochastic process trajectories come from.  Parsed from
//   "mu0" | "model:immigration" | "model:isomerization" |
//   "model:polymerase" | "model:file:<network.json>"
// Model batches are z-normalized by default (raw counts dwarf the
// formula-threshold range); mu0 batches are not.
struct MeasureSpec {
    enum class Kind : unsigned char { Mu0, Model };

    Kind kind = Kind::Mu0;
    std::string label = "mu0";
    Mu0Config mu0;
    ReactionNetwork network;  // Kind::Model
    SSAConfig ssa;            // Kind::Model
    bool normalize = false;

    nlohmann::json to_json() const;
};

MeasureSpec parse_measure(const std::string& text);

// Inverse of MeasureSpec::to_json (file-based networks come back embedded,
// with no dependency on the original path).
MeasureSpec measure_spec_from_json(const nlohmann::json& j);

std::vector<Trajectory> sample_measure(const MeasureSpec& measure,
                                       std::size_t count, std::uint64_t seed);

// Stable identifier of a specific trajectory draw (measure + count + seed),
// written into gram sidecars and model files.
std::uint64_t measure_fingerprint(const MeasureSpec& measure, std::size_t count,
                                  std::uint64_t seed);

KernelSample make_kernel_sample(const MeasureSpec& measure, std::size_t count,
                                std::uint64_t seed);

std::vector<Estimate> estimate_targets(const std::vector<FormulaPtr>& corpus,
                                       KernelSample& sample, TargetKind kind,
                                       std::size_t t_index);

// 25 log-spaced bandwidths over [0.05, 5].
std::vector<double> default_sigma_grid();

// ── bandwidth sweeps over a shared normalized Gram ──────────────────────────

struct SweepPoint {
    double sigma = 0.0;
    double mse_train = 0.0;
    double mse_test = 0.0;
    bool failed = false;   // fit threw (e.g. SVR cap); MSEs are NaN
    std::string error;
};

struct SweepResult {
    RegressionMethod method = RegressionMethod::KernelRidge;
    std::vector<SweepPoint> points;

    // Index of the lowest test MSE among non-failed points; nullopt when
    // every point failed.
    std::optional<std::size_t> best_index() const;
};

// Normalized Gram over train+test formulas, evaluated once; per sigma the
// Gaussian transform is applied entrywise, the model fitted on the train
// block and scored on both blocks.  KNN ignores sigma and yields one
// sweep-independent point repeated per grid entry.
SweepResult sweep_sigma(const GramMatrix& normalized_gram,
                        const std::vector<double>& targets, TargetKind kind,
                        const std::vector<std::size_t>& train_indices,
                        const std::vector<std::size_t>& test_indices,
                        RegressionMethod method, const RegressionHyper& base,
                        const std::vector<double>& sigma_grid);

// Fit one model at a fixed bandwidth on the train block of a shared
// normalized Gram and score it; returned regressor carries the Gaussian
// hyperparameters used.
struct FitReport {
    Regressor regressor;
    double mse_train = 0.0;
    double mse_test = 0.0;
};

FitReport fit_on_split(const GramMatrix& normalized_gram,
                       const std::vector<double>& targets, TargetKind kind,
                       const std::vector<std::size_t>& train_indices,
                       const std::vector<std::size_t>& test_indices,
                       RegressionMethod method, const RegressionHyper& hyper);

// MSE of always predicting the train-target mean; the floor any useful
// regressor must beat.
double mean_predictor_mse(const std::vector<double>& targets,
                          const std::vector<std::size_t>& train_indices,
                          const std::vector<std::size_t>& test_indices);

// ── whole-experiment configuration (CLI surface) ────────────────────────────

struct ExperimentConfig {
    MeasureSpec measure;
    FormulaGenConfig formula_gen;
    std::size_t kernel_trajectories = 1000;   // M for gram/prediction kernels
    std::size_t target_trajectories = 10000;  // M for target estimation
    std::size_t t_index = 0;
    TargetKind target_kind = TargetKind::ExpectedRobustness;
    RegressionMethod method = RegressionMethod::KernelRidge;
    RegressionHyper hyper;
    double split_fraction = 0.75;
    std::uint64_t master_seed = 0;

    std::uint64_t seed_for(SeedRole role) const;
};

}  // namespace stlkern
