// stlkern — command-line frontend for trajectory sampling, formula
// generation, kernel Gram computation, target estimation and kernel
// regression.  Every artifact is reproducible from its sidecar: one seed
// per command pins all derived randomness, and emitters are byte-stable.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stlkern/experiment.hpp"
#include "stlkern/formula_gen.hpp"
#include "stlkern/io.hpp"
#include "stlkern/parser.hpp"
#include "stlkern/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stlkern;

namespace {

// ── config file support: flat key=value lines or a flat JSON object ─────────
//
// "--config FILE" expands, right after the subcommand name, into one
// "--key=value" token per entry.  Options use a take-last policy, so
// anything typed explicitly on the command line still wins.

std::vector<std::string> config_file_tokens(const std::string& path) {
    const std::string body = read_text_file(path);
    std::vector<std::string> tokens;
    const std::size_t first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && body[first] == '{') {
        const json parsed = json::parse(body);
        for (const auto& [key, value] : parsed.items()) {
            std::string text;
            if (value.is_string()) text = value.get<std::string>();
            else if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
            else text = value.dump();
            tokens.push_back("--" + key + "=" + text);
        }
        return tokens;
    }
    std::istringstream lines(body);
    std::string line;
    while (std::getline(lines, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error(path + ": malformed config line '" + line + "'");
        }
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            break;
        }
        constexpr std::string_view prefix = "--config=";
        if (args[i].rfind(prefix, 0) == 0) {
            config_path = args[i].substr(prefix.size());
            break;
        }
    }
    if (config_path.empty()) return args;

    const std::vector<std::string> tokens = config_file_tokens(config_path);
    // insert after the subcommand name so explicit flags stay later and win
    std::size_t insert_at = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-') {
            insert_at = i + 1;
            break;
        }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at),
                tokens.begin(), tokens.end());
    return args;
}

// ── shared measure options ──────────────────────────────────────────────────

struct MeasureOptions {
    std::string measure = "mu0";
    std::string model;  // shorthand: --model X == --measure model:X
    Mu0Config mu0;
    SSAConfig ssa;
    std::string mu0_config_path;
    bool normalize = false;
    bool no_normalize = false;

    CLI::Option* opt_a = nullptr;
    CLI::Option* opt_b = nullptr;
    CLI::Option* opt_h = nullptr;
    CLI::Option* opt_sigma_start = nullptr;
    CLI::Option* opt_sigma_tv = nullptr;
    CLI::Option* opt_q = nullptr;

    MeasureSpec build() const {
        MeasureSpec spec =
            parse_measure(model.empty() ? measure : "model:" + model);
        if (spec.kind == MeasureSpec::Kind::Mu0) {
            Mu0Config cfg;
            if (!mu0_config_path.empty()) cfg = read_mu0_config(mu0_config_path);
            // explicit flags win over the config file
            if (mu0_config_path.empty() || opt_a->count()) cfg.a = mu0.a;
            if (mu0_config_path.empty() || opt_b->count()) cfg.b = mu0.b;
            if (mu0_config_path.empty() || opt_h->count()) cfg.h = mu0.h;
            if (mu0_config_path.empty() || opt_sigma_start->count()) {
                cfg.sigma_start = mu0.sigma_start;
            }
            if (mu0_config_path.empty() || opt_sigma_tv->count()) {
                cfg.sigma_tv = mu0.sigma_tv;
            }
            if (mu0_config_path.empty() || opt_q->count()) cfg.q = mu0.q;
            spec.mu0 = cfg;
        } else {
            spec.ssa = ssa;
        }
        if (normalize) spec.normalize = true;
        if (no_normalize) spec.normalize = false;
        return spec;
    }
};

void add_measure_options(CLI::App* cmd, MeasureOptions& m) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the grid step
    cmd->add_option("--measure", m.measure,
                    "mu0 | model:immigration | model:isomerization | "
                    "model:polymerase | model:file:<network.json>")
        ->capture_default_str();
    cmd->add_option("--model", m.model,
                    "immigration | isomerization | polymerase | file:<path> "
                    "(shorthand for --measure model:<value>)");
    m.opt_a = cmd->add_option("--a", m.mu0.a, "mu0 interval start")
                  ->capture_default_str();
    m.opt_b = cmd->add_option("--b", m.mu0.b, "mu0 interval end")
                  ->capture_default_str();
    m.opt_h = cmd->add_option("--h", m.mu0.h, "mu0 grid step")
                  ->capture_default_str();
    m.opt_sigma_start =
        cmd->add_option("--sigma-start", m.mu0.sigma_start,
                        "stddev of the mu0 start level")
            ->capture_default_str();
    m.opt_sigma_tv = cmd->add_option("--sigma-tv", m.mu0.sigma_tv,
                                     "stddev of the mu0 TV budget root")
                         ->capture_default_str();
    m.opt_q = cmd->add_option("--q", m.mu0.q, "mu0 sign-flip probability")
                  ->capture_default_str();
    cmd->add_option("--mu0-config", m.mu0_config_path,
                    "base mu0 parameters from a key=value file");
    cmd->add_option("--t-end", m.ssa.t_end, "SSA horizon")->capture_default_str();
    cmd->add_option("--grid-t0", m.ssa.grid_t0, "SSA output grid start")
        ->capture_default_str();
    cmd->add_option("--grid-h", m.ssa.grid_h, "SSA output grid step")
        ->capture_default_str();
    cmd->add_option("--grid-n", m.ssa.grid_segments, "SSA output grid segments")
        ->capture_default_str();
    cmd->add_flag("--normalize", m.normalize,
                  "z-normalize the batch (default for model measures)");
    cmd->add_flag("--no-normalize", m.no_normalize,
                  "disable z-normalization even for model measures");
}

json measure_provenance(const MeasureSpec& spec, std::size_t count,
                        std::uint64_t seed) {
    return {{"measure", spec.to_json()}, {"count", count}, {"seed", seed}};
}

void write_meta(const fs::path& path, const std::string& command, json options) {
    json j = {{"command", command}, {"options", std::move(options)}};
    write_text_file(path, j.dump(2) + "\n");
}

std::vector<double> parse_sigma_grid(const std::string& text) {
    if (text == "default") return default_sigma_grid();
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("--sigma-grid wants lo:hi:n, got '" + text + "'");
    }
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(text.substr(c2 + 1));
    if (!(lo > 0.0) || !(hi > lo) || n < 1) {
        throw std::invalid_argument("--sigma-grid wants 0 < lo < hi and n >= 1");
    }
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] =
            n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    }
    return grid;
}

// Corpus + aligned targets from the two artifact files.
std::pair<std::vector<FormulaPtr>, std::vector<double>> load_corpus_targets(
    const std::string& corpus_path, const std::string& targets_path) {
    std::vector<FormulaPtr> corpus = read_corpus(corpus_path);
    const std::vector<TargetRow> rows = read_targets_csv(targets_path);
    if (rows.size() != corpus.size()) {
        throw std::runtime_error("corpus and targets disagree on size (" +
                                 std::to_string(corpus.size()) + " vs " +
                                 std::to_string(rows.size()) + ")");
    }
    std::vector<double> targets;
    targets.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!equal(parse_formula(rows[i].formula), corpus[i])) {
            throw std::runtime_error("targets row " + std::to_string(i) +
                                     " does not match the corpus formula");
        }
        targets.push_back(rows[i].target);
    }
    return {std::move(corpus), std::move(targets)};
}

MetricsRow metrics_row(RegressionMethod method, const RegressionHyper& hyper,
                       double mse_train, double mse_test) {
    MetricsRow row;
    row.method = to_string(method);
    row.sigma = hyper.sigma;
    row.lambda = hyper.ridge_lambda;
    row.c = hyper.svr_c;
    row.epsilon = hyper.svr_epsilon;
    row.neighbors = hyper.neighbors;
    row.mse_train = mse_train;
    row.mse_test = mse_test;
    return row;
}

// ── subcommands ─────────────────────────────────────────────────────────────

void cmd_sample_traj(const MeasureOptions& m, std::size_t count,
                     std::uint64_t seed, const std::string& out_dir,
                     bool single_file) {
    const MeasureSpec spec = m.build();
    const std::vector<Trajectory> batch = sample_measure(spec, count, seed);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    if (single_file) {
        write_trajectory_batch_csv(dir / "trajectories.csv", batch);
    } else {
        write_trajectory_batch_dir(dir, batch);
    }
    if (spec.kind == MeasureSpec::Kind::Mu0) {
        Mu0Config cfg = spec.mu0;
        cfg.seed = seed;
        write_mu0_config(dir / "mu0.config", cfg);
    }
    write_meta(dir / "meta.json", "sample-traj",
               {{"measure", spec.to_json()},
                {"count", count},
                {"seed", seed},
                {"single_file", single_file}});
}

void cmd_sample_formulas(const FormulaGenConfig& cfg, std::size_t count,
                         const std::string& out) {
    const std::vector<FormulaPtr> corpus = sample_corpus(cfg, count);
    write_corpus(out, corpus);
    write_meta(fs::path(out).string() + ".meta.json", "sample-formulas",
               {{"count", count},
                {"seed", cfg.seed},
                {"max_atoms", cfg.max_atoms},
                {"threshold_lo", cfg.threshold_lo},
                {"threshold_hi", cfg.threshold_hi}});
}

void cmd_gram(const std::string& corpus_path, const MeasureOptions& m,
              std::size_t count, std::uint64_t seed, const std::string& kind_text,
              double sigma, const std::string& out_dir) {
    const std::vector<FormulaPtr> corpus = read_corpus(corpus_path);
    const MeasureSpec spec = m.build();
    const GramKind kind = gram_kind_from_string(kind_text);
    KernelSample sample = make_kernel_sample(spec, count, seed);
    const GramMatrix g = gram(corpus, sample, kind, sigma);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_gram_csv(dir / "gram.csv", g);
    json provenance = measure_provenance(spec, count, seed);
    provenance["corpus_file"] = corpus_path;
    write_gram_sidecar(dir / "gram.json", g, provenance);
}

void cmd_estimate(const std::string& corpus_path, const std::string& formula_text,
                  const MeasureOptions& m, std::size_t count, std::uint64_t seed,
                  const std::string& target_text, std::size_t t_index,
                  const std::string& out) {
    std::vector<FormulaPtr> corpus;
    if (!formula_text.empty()) {
        corpus.push_back(parse_formula(formula_text));
    } else if (!corpus_path.empty()) {
        corpus = read_corpus(corpus_path);
    } else {
        throw std::invalid_argument("estimate needs --corpus or --formula");
    }
    const TargetKind kind = target_kind_from_string(target_text);
    const MeasureSpec spec = m.build();
    KernelSample sample = make_kernel_sample(spec, count, seed);
    const std::vector<Estimate> estimates =
        estimate_targets(corpus, sample, kind, t_index);
    write_targets_csv(out, corpus, estimates);
    json options = measure_provenance(spec, count, seed);
    options["target"] = target_text;
    options["t_index"] = t_index;
    if (!corpus_path.empty()) options["corpus_file"] = corpus_path;
    if (!formula_text.empty()) options["formula"] = formula_text;
    write_meta(fs::path(out).string() + ".meta.json", "estimate",
               std::move(options));
}

struct FitArgs {
    std::string corpus_path;
    std::string targets_path;
    std::string method_text = "krr";
    std::string target_text = "exprob";
    RegressionHyper hyper;
    double split_fraction = 0.75;
    std::size_t count = 1000;
    std::uint64_t master_seed = 0;
};

void cmd_fit(const FitArgs& args, const MeasureOptions& m,
             const std::string& out_dir) {
    auto [corpus, targets] =
        load_corpus_targets(args.corpus_path, args.targets_path);
    const TargetKind kind = target_kind_from_string(args.target_text);
    const RegressionMethod method =
        regression_method_from_string(args.method_text);
    const MeasureSpec spec = m.build();

    const std::uint64_t sample_seed =
        derive_seed(args.master_seed, SeedRole::KernelSample);
    const std::uint64_t split_seed = derive_seed(args.master_seed, SeedRole::Split);
    KernelSample sample = make_kernel_sample(spec, args.count, sample_seed);
    const GramMatrix normalized = gram(corpus, sample, GramKind::Normalized);
    const auto [train_idx, test_idx] =
        split_indices(corpus.size(), args.split_fraction, split_seed);

    const FitReport report = fit_on_split(normalized, targets, kind, train_idx,
                                          test_idx, method, args.hyper);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    json provenance = measure_provenance(spec, args.count, sample_seed);
    provenance["master_seed"] = args.master_seed;
    provenance["split_seed"] = split_seed;
    provenance["split_fraction"] = args.split_fraction;
    provenance["mse_train"] = report.mse_train;
    provenance["mse_test"] = report.mse_test;
    write_model_file(dir / "model.json", report.regressor, provenance);
    write_metrics_csv(dir / "metrics.csv",
                      {metrics_row(method, report.regressor.hyper,
                                   report.mse_train, report.mse_test)});
    write_meta(dir / "meta.json", "fit",
               {{"corpus_file", args.corpus_path},
                {"targets_file", args.targets_path},
                {"method", args.method_text},
                {"target", args.target_text},
                {"sigma", args.hyper.sigma},
                {"lambda", args.hyper.ridge_lambda},
                {"C", args.hyper.svr_c},
                {"epsilon", args.hyper.svr_epsilon},
                {"k_neighbors", args.hyper.neighbors},
                {"split", args.split_fraction},
                {"count", args.count},
                {"seed", args.master_seed},
                {"measure", spec.to_json()}});
}

void cmd_eval(const std::string& model_path, const std::string& corpus_path,
              const std::string& targets_path, const std::string& out) {
    json provenance;
    Regressor reg = read_model_file(model_path, &provenance);
    auto [corpus, targets] = load_corpus_targets(corpus_path, targets_path);

    if (!provenance.contains("measure")) {
        throw std::runtime_error(
            "model file lacks measure provenance; cannot rebuild its sample");
    }
    const MeasureSpec spec = measure_spec_from_json(provenance["measure"]);
    KernelSample sample = make_kernel_sample(spec, provenance["count"],
                                             provenance["seed"]);
    if (sample.fingerprint() != reg.gram_fingerprint) {
        throw std::runtime_error(
            "rebuilt kernel sample does not match the model's gram fingerprint");
    }

    TrainingSet test{corpus, targets, reg.target_kind};
    const double mse = evaluate_mse(reg, test, sample);
    const double mse_train = provenance.value("mse_train",
                                              std::numeric_limits<double>::quiet_NaN());
    write_metrics_csv(out, {metrics_row(reg.method, reg.hyper, mse_train, mse)});
    write_meta(fs::path(out).string() + ".meta.json", "eval",
               {{"model_file", model_path},
                {"corpus_file", corpus_path},
                {"targets_file", targets_path},
                {"mse_test", mse}});
}

void cmd_sweep(const FitArgs& args, const MeasureOptions& m,
               const std::string& grid_text, const std::string& out) {
    auto [corpus, targets] =
        load_corpus_targets(args.corpus_path, args.targets_path);
    const TargetKind kind = target_kind_from_string(args.target_text);
    const RegressionMethod method =
        regression_method_from_string(args.method_text);
    const MeasureSpec spec = m.build();
    const std::vector<double> grid = parse_sigma_grid(grid_text);

    const std::uint64_t sample_seed =
        derive_seed(args.master_seed, SeedRole::KernelSample);
    const std::uint64_t split_seed = derive_seed(args.master_seed, SeedRole::Split);
    KernelSample sample = make_kernel_sample(spec, args.count, sample_seed);
    const GramMatrix normalized = gram(corpus, sample, GramKind::Normalized);
    const auto [train_idx, test_idx] =
        split_indices(corpus.size(), args.split_fraction, split_seed);

    const SweepResult sweep = sweep_sigma(normalized, targets, kind, train_idx,
                                          test_idx, method, args.hyper, grid);
    std::vector<MetricsRow> rows;
    rows.reserve(sweep.points.size());
    for (const SweepPoint& p : sweep.points) {
        RegressionHyper hyper = args.hyper;
        hyper.sigma = p.sigma;
        rows.push_back(metrics_row(method, hyper, p.mse_train, p.mse_test));
    }
    write_metrics_csv(out, rows);
    json options = {{"corpus_file", args.corpus_path},
                    {"targets_file", args.targets_path},
                    {"method", args.method_text},
                    {"target", args.target_text},
                    {"sigma_grid", grid},
                    {"split", args.split_fraction},
                    {"count", args.count},
                    {"seed", args.master_seed},
                    {"split_seed", split_seed},
                    {"sample_seed", sample_seed},
                    {"measure", spec.to_json()}};
    if (const auto best = sweep.best_index()) {
        options["best_sigma"] = sweep.points[*best].sigma;
        options["best_mse_test"] = sweep.points[*best].mse_test;
    }
    write_meta(fs::path(out).string() + ".meta.json", "sweep", std::move(options));
}

void configure_subcommand(CLI::App* cmd) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    static std::string sink;  // path is consumed before CLI11 parses
    cmd->add_option("--config", sink,
                    "defaults from a flat key=value or JSON file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"formula-space kernels over stochastic trajectories"};
    app.require_subcommand(1);

    // sample-traj ────────────────────────────────────────────────────────────
    auto* traj = app.add_subcommand("sample-traj", "draw trajectories to CSV");
    configure_subcommand(traj);
    MeasureOptions traj_measure;
    add_measure_options(traj, traj_measure);
    std::size_t traj_count = 10;
    std::uint64_t traj_seed = 0;
    std::string traj_out;
    bool traj_single = false;
    traj->add_option("--count", traj_count, "trajectories to draw")
        ->capture_default_str();
    traj->add_option("--seed", traj_seed, "measure seed")->capture_default_str();
    traj->add_option("--out-dir", traj_out, "output directory")->required();
    traj->add_flag("--single-file", traj_single,
                   "one CSV with a traj_id column instead of one file each");
    traj->callback([&] {
        cmd_sample_traj(traj_measure, traj_count, traj_seed, traj_out, traj_single);
    });

    // sample-formulas ────────────────────────────────────────────────────────
    auto* formulas = app.add_subcommand("sample-formulas",
                                        "draw a random formula corpus");
    configure_subcommand(formulas);
    FormulaGenConfig gen_cfg;
    std::size_t formula_count = 400;
    std::string formula_out;
    formulas->add_option("--count", formula_count, "formulas to draw")
        ->capture_default_str();
    formulas->add_option("--seed", gen_cfg.seed, "generator seed")
        ->capture_default_str();
    formulas->add_option("--max-atoms", gen_cfg.max_atoms, "atom count upper bound")
        ->capture_default_str();
    formulas->add_option("--threshold-lo", gen_cfg.threshold_lo,
                         "atom threshold lower bound")
        ->capture_default_str();
    formulas->add_option("--threshold-hi", gen_cfg.threshold_hi,
                         "atom threshold upper bound")
        ->capture_default_str();
    formulas->add_option("--out", formula_out, "corpus file")->required();
    formulas->callback(
        [&] { cmd_sample_formulas(gen_cfg, formula_count, formula_out); });

    // gram ───────────────────────────────────────────────────────────────────
    auto* gram_cmd = app.add_subcommand("gram", "kernel Gram matrix over a corpus");
    configure_subcommand(gram_cmd);
    MeasureOptions gram_measure;
    add_measure_options(gram_cmd, gram_measure);
    std::string gram_corpus;
    std::size_t gram_count = 1000;
    std::uint64_t gram_seed = 0;
    std::string gram_kind = "normalized";
    double gram_sigma = 0.22;
    std::string gram_out;
    gram_cmd->add_option("--corpus", gram_corpus, "corpus file")->required();
    gram_cmd->add_option("--count", gram_count, "Monte-Carlo trajectories")
        ->capture_default_str();
    gram_cmd->add_option("--seed", gram_seed, "sample seed")->capture_default_str();
    gram_cmd->add_option("--kind", gram_kind, "raw | normalized | gaussian")
        ->capture_default_str();
    gram_cmd->add_option("--sigma", gram_sigma, "gaussian bandwidth")
        ->capture_default_str();
    gram_cmd->add_option("--out-dir", gram_out, "output directory")->required();
    gram_cmd->callback([&] {
        cmd_gram(gram_corpus, gram_measure, gram_count, gram_seed, gram_kind,
                 gram_sigma, gram_out);
    });

    // estimate ───────────────────────────────────────────────────────────────
    auto* est = app.add_subcommand(
        "estimate", "Monte-Carlo expected robustness / satisfaction probability");
    configure_subcommand(est);
    MeasureOptions est_measure;
    add_measure_options(est, est_measure);
    std::string est_corpus;
    std::string est_formula;
    std::size_t est_count = 10000;
    std::uint64_t est_seed = 0;
    std::string est_target = "exprob";
    std::size_t est_t_index = 0;
    std::string est_out;
    est->add_option("--corpus", est_corpus, "corpus file");
    est->add_option("--formula", est_formula, "single formula text");
    est->add_option("--count", est_count, "Monte-Carlo trajectories")
        ->capture_default_str();
    est->add_option("--seed", est_seed, "sample seed")->capture_default_str();
    est->add_option("--target", est_target, "exprob | satprob")
        ->capture_default_str();
    est->add_option("--t-index", est_t_index, "grid index of the estimate")
        ->capture_default_str();
    est->add_option("--out", est_out, "targets CSV")->required();
    est->callback([&] {
        cmd_estimate(est_corpus, est_formula, est_measure, est_count, est_seed,
                     est_target, est_t_index, est_out);
    });

    // fit ────────────────────────────────────────────────────────────────────
    auto* fit_cmd = app.add_subcommand("fit", "train one regressor on a split");
    configure_subcommand(fit_cmd);
    MeasureOptions fit_measure;
    add_measure_options(fit_cmd, fit_measure);
    FitArgs fit_args;
    std::string fit_out;
    fit_cmd->add_option("--corpus", fit_args.corpus_path, "corpus file")->required();
    fit_cmd->add_option("--targets", fit_args.targets_path, "targets CSV")
        ->required();
    fit_cmd->add_option("--method", fit_args.method_text, "nw | knn | krr | svr")
        ->capture_default_str();
    fit_cmd->add_option("--target", fit_args.target_text, "exprob | satprob")
        ->capture_default_str();
    fit_cmd->add_option("--sigma", fit_args.hyper.sigma, "gaussian bandwidth")
        ->capture_default_str();
    fit_cmd->add_option("--lambda", fit_args.hyper.ridge_lambda, "ridge lambda")
        ->capture_default_str();
    fit_cmd->add_option("--C", fit_args.hyper.svr_c, "SVR box constraint")
        ->capture_default_str();
    fit_cmd->add_option("--epsilon", fit_args.hyper.svr_epsilon,
                        "SVR insensitive tube")
        ->capture_default_str();
    fit_cmd->add_option("--k-neighbors", fit_args.hyper.neighbors, "KNN k")
        ->capture_default_str();
    fit_cmd->add_option("--split", fit_args.split_fraction, "train fraction")
        ->capture_default_str();
    fit_cmd->add_option("--count", fit_args.count, "kernel trajectories")
        ->capture_default_str();
    fit_cmd->add_option("--seed", fit_args.master_seed,
                        "master seed (derives sample and split seeds)")
        ->capture_default_str();
    fit_cmd->add_option("--out-dir", fit_out, "output directory")->required();
    fit_cmd->callback([&] { cmd_fit(fit_args, fit_measure, fit_out); });

    // eval ───────────────────────────────────────────────────────────────────
    auto* eval_cmd = app.add_subcommand("eval", "score a saved model on a corpus");
    configure_subcommand(eval_cmd);
    std::string eval_model;
    std::string eval_corpus;
    std::string eval_targets;
    std::string eval_out;
    eval_cmd->add_option("--model", eval_model, "model JSON")->required();
    eval_cmd->add_option("--corpus", eval_corpus, "test corpus file")->required();
    eval_cmd->add_option("--targets", eval_targets, "test targets CSV")->required();
    eval_cmd->add_option("--out", eval_out, "metrics CSV")->required();
    eval_cmd->callback(
        [&] { cmd_eval(eval_model, eval_corpus, eval_targets, eval_out); });

    // sweep ──────────────────────────────────────────────────────────────────
    auto* sweep_cmd =
        app.add_subcommand("sweep", "bandwidth sweep, one metrics row per sigma");
    configure_subcommand(sweep_cmd);
    MeasureOptions sweep_measure;
    add_measure_options(sweep_cmd, sweep_measure);
    FitArgs sweep_args;
    std::string sweep_grid = "default";
    std::string sweep_out;
    sweep_cmd->add_option("--corpus", sweep_args.corpus_path, "corpus file")
        ->required();
    sweep_cmd->add_option("--targets", sweep_args.targets_path, "targets CSV")
        ->required();
    sweep_cmd->add_option("--method", sweep_args.method_text,
                          "nw | knn | krr | svr")
        ->capture_default_str();
    sweep_cmd->add_option("--target", sweep_args.target_text, "exprob | satprob")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--sigma-grid", sweep_grid,
                     "lo:hi:n log-spaced, or 'default' (0.05:5:25)")
        ->capture_default_str();
    sweep_cmd->add_option("--lambda", sweep_args.hyper.ridge_lambda, "ridge lambda")
        ->capture_default_str();
    sweep_cmd->add_option("--C", sweep_args.hyper.svr_c, "SVR box constraint")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--epsilon", sweep_args.hyper.svr_epsilon,
                     "SVR insensitive tube")
        ->capture_default_str();
    sweep_cmd->add_option("--k-neighbors", sweep_args.hyper.neighbors, "KNN k")
        ->capture_default_str();
    sweep_cmd->add_option("--split", sweep_args.split_fraction, "train fraction")
        ->capture_default_str();
    sweep_cmd->add_option("--count", sweep_args.count, "kernel trajectories")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_args.master_seed,
                          "master seed (derives sample and split seeds)")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "sweep metrics CSV")->required();
    sweep_cmd->callback(
        [&] { cmd_sweep(sweep_args, sweep_measure, sweep_grid, sweep_out); });

    try {
        std::vector<std::string> args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes back to front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << json({{"error", e.what()}}).dump() << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << json({{"error", e.what()}}).dump() << "\n";
        return 1;
    }
    return 0;
}
