#include "stlkern/experiment.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stlkern/io.hpp"
#include "stlkern/rng.hpp"

namespace stlkern {

nlohmann::json MeasureSpec::to_json() const {
    nlohmann::json j;
    j["label"] = label;
    j["normalize"] = normalize;
    if (kind == Kind::Mu0) {
        j["mu0"] = {{"a", mu0.a},
                    {"b", mu0.b},
                    {"h", mu0.h},
                    {"sigma_start", mu0.sigma_start},
                    {"sigma_tv", mu0.sigma_tv},
                    {"q", mu0.q}};
    } else {
        j["network"] = network_to_json(network);
        j["ssa"] = {{"t_end", ssa.t_end},
                    {"grid_t0", ssa.grid_t0},
                    {"grid_h", ssa.grid_h},
                    {"grid_segments", ssa.grid_segments}};
    }
    return j;
}

MeasureSpec parse_measure(const std::string& text) {
    MeasureSpec m;
    if (text == "mu0") {
        m.kind = MeasureSpec::Kind::Mu0;
        m.label = text;
        return m;
    }
    constexpr std::string_view prefix = "model:";
    if (text.rfind(prefix, 0) != 0) {
        throw std::invalid_argument(
            "measure must be 'mu0', 'model:<name>' or 'model:file:<path>', got '" +
            text + "'");
    }
    const std::string rest = text.substr(prefix.size());
    m.kind = MeasureSpec::Kind::Model;
    m.label = text;
    m.normalize = true;
    constexpr std::string_view file_prefix = "file:";
    if (rest.rfind(file_prefix, 0) == 0) {
        m.network = read_network_file(rest.substr(file_prefix.size()));
    } else {
        m.network = builtin_model(rest);
    }
    return m;
}

MeasureSpec measure_spec_from_json(const nlohmann::json& j) {
    MeasureSpec m;
    m.label = j.at("label").get<std::string>();
    m.normalize = j.at("normalize").get<bool>();
    if (j.contains("mu0")) {
        m.kind = MeasureSpec::Kind::Mu0;
        const nlohmann::json& mj = j.at("mu0");
        m.mu0.a = mj.at("a").get<double>();
        m.mu0.b = mj.at("b").get<double>();
        m.mu0.h = mj.at("h").get<double>();
        m.mu0.sigma_start = mj.at("sigma_start").get<double>();
        m.mu0.sigma_tv = mj.at("sigma_tv").get<double>();
        m.mu0.q = mj.at("q").get<double>();
        m.mu0.validate();
    } else {
        m.kind = MeasureSpec::Kind::Model;
        m.network = network_from_json(j.at("network"));
        const nlohmann::json& sj = j.at("ssa");
        m.ssa.t_end = sj.at("t_end").get<double>();
        m.ssa.grid_t0 = sj.at("grid_t0").get<double>();
        m.ssa.grid_h = sj.at("grid_h").get<double>();
        m.ssa.grid_segments = sj.at("grid_segments").get<std::size_t>();
        m.ssa.validate();
    }
    return m;
}

std::vector<Trajectory> sample_measure(const MeasureSpec& measure,
                                       std::size_t count, std::uint64_t seed) {
    if (measure.kind == MeasureSpec::Kind::Mu0) {
        Mu0Config cfg = measure.mu0;
        cfg.seed = seed;
        std::vector<Trajectory> batch = sample_mu0(cfg, count);
        return measure.normalize ? znormalize(batch) : batch;
    }
    SSAConfig cfg = measure.ssa;
    cfg.seed = seed;
    return sample_process(measure.network, cfg, count, measure.normalize);
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t measure_fingerprint(const MeasureSpec& measure, std::size_t count,
                                  std::uint64_t seed) {
    std::string desc = measure.to_json().dump();
    desc += "|count=" + std::to_string(count);
    desc += "|seed=" + std::to_string(seed);
    return fnv1a(desc);
}

KernelSample make_kernel_sample(const MeasureSpec& measure, std::size_t count,
                                std::uint64_t seed) {
    return KernelSample(sample_measure(measure, count, seed),
                        measure_fingerprint(measure, count, seed));
}

std::vector<Estimate> estimate_targets(const std::vector<FormulaPtr>& corpus,
                                       KernelSample& sample, TargetKind kind,
                                       std::size_t t_index) {
    std::vector<Estimate> out;
    out.reserve(corpus.size());
    for (const FormulaPtr& f : corpus) {
        out.push_back(kind == TargetKind::ExpectedRobustness
                          ? expected_robustness(*f, sample, t_index)
                          : satisfaction_probability(*f, sample, t_index));
    }
    return out;
}

std::vector<double> default_sigma_grid() {
    constexpr double lo = 0.05;
    constexpr double hi = 5.0;
    constexpr int n = 25;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    }
    return grid;
}

std::optional<std::size_t> SweepResult::best_index() const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].failed) continue;
        if (!best || points[i].mse_test < points[*best].mse_test) best = i;
    }
    return best;
}

namespace {

// Gaussian train-block Gram from the shared normalized matrix.
GramMatrix gaussian_train_block(const GramMatrix& normalized,
                                const std::vector<std::size_t>& train,
                                double sigma) {
    GramMatrix g;
    g.kind = GramKind::Gaussian;
    g.sigma = sigma;
    g.sample_fingerprint = normalized.sample_fingerprint;
    g.entries = SymMatrix(train.size());
    g.formulas.reserve(train.size());
    for (std::size_t idx : train) g.formulas.push_back(normalized.formulas[idx]);
    for (std::size_t i = 0; i < train.size(); ++i) {
        for (std::size_t j = 0; j < train.size(); ++j) {
            g.entries.at(i, j) = gaussian_from_normalized(
                normalized.at(train[i], train[j]), sigma);
        }
    }
    return g;
}

double block_mse(const Regressor& reg, const GramMatrix& normalized,
                 const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& train,
                 const std::vector<double>& targets) {
    double sum = 0.0;
    std::vector<double> k_row(train.size());
    for (std::size_t r : rows) {
        for (std::size_t j = 0; j < train.size(); ++j) {
            k_row[j] = normalized.at(r, train[j]);
        }
        const double err = predict_from_normalized(reg, k_row) - targets[r];
        sum += err * err;
    }
    return sum / static_cast<double>(rows.size());
}

}  // namespace

FitReport fit_on_split(const GramMatrix& normalized_gram,
                       const std::vector<double>& targets, TargetKind kind,
                       const std::vector<std::size_t>& train_indices,
                       const std::vector<std::size_t>& test_indices,
                       RegressionMethod method, const RegressionHyper& hyper) {
    if (normalized_gram.kind != GramKind::Normalized) {
        throw std::invalid_argument("fit_on_split: needs a normalized gram matrix");
    }
    if (targets.size() != normalized_gram.size()) {
        throw std::invalid_argument("fit_on_split: target count mismatch");
    }
    if (train_indices.empty() || test_indices.empty()) {
        throw std::invalid_argument("fit_on_split: empty split");
    }

    std::vector<double> y_train;
    y_train.reserve(train_indices.size());
    for (std::size_t idx : train_indices) y_train.push_back(targets[idx]);

    GramMatrix train_gram =
        (method == RegressionMethod::KNearestNeighbors)
            ? [&] {
                  GramMatrix g;
                  g.kind = GramKind::Normalized;
                  g.sample_fingerprint = normalized_gram.sample_fingerprint;
                  g.entries = SymMatrix(train_indices.size());
                  for (std::size_t i = 0; i < train_indices.size(); ++i) {
                      g.formulas.push_back(
                          normalized_gram.formulas[train_indices[i]]);
                      for (std::size_t j = 0; j < train_indices.size(); ++j) {
                          g.entries.at(i, j) = normalized_gram.at(
                              train_indices[i], train_indices[j]);
                      }
                  }
                  return g;
              }()
            : gaussian_train_block(normalized_gram, train_indices, hyper.sigma);

    FitReport report;
    report.regressor = fit(method, hyper, train_gram, y_train, kind);
    report.mse_train =
        block_mse(report.regressor, normalized_gram, train_indices, train_indices,
                  targets);
    report.mse_test = block_mse(report.regressor, normalized_gram, test_indices,
                                train_indices, targets);
    return report;
}

SweepResult sweep_sigma(const GramMatrix& normalized_gram,
                        const std::vector<double>& targets, TargetKind kind,
                        const std::vector<std::size_t>& train_indices,
                        const std::vector<std::size_t>& test_indices,
                        RegressionMethod method, const RegressionHyper& base,
                        const std::vector<double>& sigma_grid) {
    SweepResult result;
    result.method = method;
    result.points.reserve(sigma_grid.size());
    for (double sigma : sigma_grid) {
        RegressionHyper hyper = base;
        hyper.sigma = sigma;
        SweepPoint point;
        point.sigma = sigma;
        try {
            const FitReport report =
                fit_on_split(normalized_gram, targets, kind, train_indices,
                             test_indices, method, hyper);
            point.mse_train = report.mse_train;
            point.mse_test = report.mse_test;
        } catch (const std::exception& e) {
            point.failed = true;
            point.error = e.what();
            point.mse_train = std::numeric_limits<double>::quiet_NaN();
            point.mse_test = std::numeric_limits<double>::quiet_NaN();
        }
        result.points.push_back(std::move(point));
    }
    return result;
}

double mean_predictor_mse(const std::vector<double>& targets,
                          const std::vector<std::size_t>& train_indices,
                          const std::vector<std::size_t>& test_indices) {
    if (train_indices.empty() || test_indices.empty()) {
        throw std::invalid_argument("mean_predictor_mse: empty split");
    }
    double mean = 0.0;
    for (std::size_t idx : train_indices) mean += targets[idx];
    mean /= static_cast<double>(train_indices.size());
    double sum = 0.0;
    for (std::size_t idx : test_indices) {
        const double err = mean - targets[idx];
        sum += err * err;
    }
    return sum / static_cast<double>(test_indices.size());
}

std::uint64_t ExperimentConfig::seed_for(SeedRole role) const {
    return derive_seed(master_seed, role);
}

}  // namespace stlkern
