// ── io.hpp ──────────────────────────────────────────────────────────────────
// File formats.  All emitters are deterministic: floats use shortest
// round-trip formatting, JSON objects serialize with sorted keys, and no
// output embeds timestamps or machine state, so a rerun with the same
// config produces byte-identical artifacts.
//
//   trajectory CSV   header "time,x", one row per grid point; batches are
//                    either one file per trajectory in a directory or a
//                    single CSV with a leading traj_id column
//   mu0 config       flat "key = value" lines (a, b, h, sigma_start,
//                    sigma_tv, q, seed)
//   network JSON     {species[], initial[], reactions[{change[], rate,
//                    reactants[]}], observed}
//   corpus           one formula per line, '#' comments allowed
//   targets CSV      header "formula,target,stderr", formula quoted
//   gram CSV         formula-index header row/column + JSON sidecar
//   model JSON       method, hyperparameters, fitted state, corpus text,
//                    gram fingerprint
//   metrics CSV      method,sigma,lambda,C,epsilon,k,mse_train,mse_test
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlkern/formula.hpp"
#include "stlkern/kernel.hpp"
#include "stlkern/mu0.hpp"
#include "stlkern/regression.hpp"
#include "stlkern/stochastic.hpp"
#include "stlkern/trajectory.hpp"

namespace stlkern {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& body);

// ── trajectories ────────────────────────────────────────────────────────────

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& xi);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

// One traj_%05d.csv per trajectory under dir (created if missing).
void write_trajectory_batch_dir(const std::filesystem::path& dir,
                                const std::vector<Trajectory>& batch);

// Single CSV with header traj_id,time,x.
void write_trajectory_batch_csv(const std::filesystem::path& path,
                                const std::vector<Trajectory>& batch);

// Accepts either layout.
std::vector<Trajectory> read_trajectory_batch(const std::filesystem::path& path);

// ── configs ─────────────────────────────────────────────────────────────────

void write_mu0_config(const std::filesystem::path& path, const Mu0Config& cfg);
Mu0Config read_mu0_config(const std::filesystem::path& path);

nlohmann::json network_to_json(const ReactionNetwork& net);
ReactionNetwork network_from_json(const nlohmann::json& j);
ReactionNetwork read_network_file(const std::filesystem::path& path);
void write_network_file(const std::filesystem::path& path,
                        const ReactionNetwork& net);

// ── formula corpora and targets ─────────────────────────────────────────────

void write_corpus(const std::filesystem::path& path,
                  const std::vector<FormulaPtr>& corpus);
std::vector<FormulaPtr> read_corpus(const std::filesystem::path& path);

struct TargetRow {
    std::string formula;
    double target = 0.0;
    double stderr_ = 0.0;
};

void write_targets_csv(const std::filesystem::path& path,
                       const std::vector<FormulaPtr>& corpus,
                       const std::vector<Estimate>& estimates);
std::vector<TargetRow> read_targets_csv(const std::filesystem::path& path);

// ── gram matrices ───────────────────────────────────────────────────────────

void write_gram_csv(const std::filesystem::path& path, const GramMatrix& g);

// Entries + size only; formulas/kind live in the sidecar.
SymMatrix read_gram_csv(const std::filesystem::path& path);

// Sidecar carries corpus text, kind, sigma, fingerprint plus caller
// metadata (measure config, seeds) under "provenance".
void write_gram_sidecar(const std::filesystem::path& path, const GramMatrix& g,
                        const nlohmann::json& provenance);

// ── models and metrics ──────────────────────────────────────────────────────

nlohmann::json regressor_to_json(const Regressor& reg);
Regressor regressor_from_json(const nlohmann::json& j);
void write_model_file(const std::filesystem::path& path, const Regressor& reg,
                      const nlohmann::json& provenance);
Regressor read_model_file(const std::filesystem::path& path,
                          nlohmann::json* provenance = nullptr);

struct MetricsRow {
    std::string method;
    double sigma = 0.0;
    double lambda = 0.0;
    double c = 0.0;
    double epsilon = 0.0;
    std::size_t neighbors = 0;
    double mse_train = 0.0;
    double mse_test = 0.0;
};

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsRow>& rows);

}  // namespace stlkern
