#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "stlkern/experiment.hpp"
#include "stlkern/formula_gen.hpp"
#include "stlkern/io.hpp"
#include "stlkern/parser.hpp"

using namespace stlkern;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("stlkern_io_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.0, 1.5, -1.4, 0.7, 1e-17, 3.141592653589793, -7.25e88}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.5) == "1.5");
}

TEST_CASE("trajectory csv round trip is bit exact") {
    TempDir tmp;
    Mu0Config cfg;
    cfg.seed = 4;
    const Trajectory xi = sample_mu0_one(cfg, 0);
    write_trajectory_csv(tmp.path / "t.csv", xi);
    const Trajectory back = read_trajectory_csv(tmp.path / "t.csv");
    CHECK(back.t0() == xi.t0());
    CHECK(back.step() == xi.step());
    CHECK(back.values() == xi.values());
}

TEST_CASE("batch round trips through both layouts") {
    TempDir tmp;
    Mu0Config cfg;
    cfg.seed = 12;
    const std::vector<Trajectory> batch = sample_mu0(cfg, 4);

    write_trajectory_batch_dir(tmp.path / "dir", batch);
    const std::vector<Trajectory> from_dir =
        read_trajectory_batch(tmp.path / "dir");
    REQUIRE(from_dir.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(from_dir[i].values() == batch[i].values());
    }

    write_trajectory_batch_csv(tmp.path / "batch.csv", batch);
    const std::vector<Trajectory> from_csv =
        read_trajectory_batch(tmp.path / "batch.csv");
    REQUIRE(from_csv.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(from_csv[i].values() == batch[i].values());
    }
}

TEST_CASE("mu0 config round trip") {
    TempDir tmp;
    Mu0Config cfg;
    cfg.a = 0.0;
    cfg.b = 10.0;
    cfg.h = 0.5;
    cfg.sigma_start = 2.0;
    cfg.sigma_tv = 0.25;
    cfg.q = 0.05;
    cfg.seed = 31337;
    write_mu0_config(tmp.path / "mu0.config", cfg);
    const Mu0Config back = read_mu0_config(tmp.path / "mu0.config");
    CHECK(back.a == cfg.a);
    CHECK(back.b == cfg.b);
    CHECK(back.h == cfg.h);
    CHECK(back.sigma_start == cfg.sigma_start);
    CHECK(back.sigma_tv == cfg.sigma_tv);
    CHECK(back.q == cfg.q);
    CHECK(back.seed == cfg.seed);
}

TEST_CASE("network json round trip and validation") {
    TempDir tmp;
    const ReactionNetwork net = builtin_model("isomerization");
    write_network_file(tmp.path / "net.json", net);
    const ReactionNetwork back = read_network_file(tmp.path / "net.json");
    CHECK(back.species == net.species);
    CHECK(back.initial_counts == net.initial_counts);
    CHECK(back.observed_species == net.observed_species);
    REQUIRE(back.reactions.size() == net.reactions.size());
    CHECK(back.reactions[0].change == net.reactions[0].change);
    CHECK(back.reactions[0].rate == net.reactions[0].rate);

    write_text_file(tmp.path / "bad.json", "{\"species\": [\"A\"]}");
    CHECK_THROWS(read_network_file(tmp.path / "bad.json"));
    write_text_file(tmp.path / "notjson.json", "species: A");
    CHECK_THROWS(read_network_file(tmp.path / "notjson.json"));
}

TEST_CASE("corpus files skip comments and round trip") {
    TempDir tmp;
    FormulaGenConfig gen;
    gen.seed = 3;
    const std::vector<FormulaPtr> corpus = sample_corpus(gen, 25);
    write_corpus(tmp.path / "corpus.txt", corpus);
    std::string body = read_text_file(tmp.path / "corpus.txt");
    body = "# a comment line\n\n" + body + "# trailing comment\n";
    write_text_file(tmp.path / "with_comments.txt", body);
    const std::vector<FormulaPtr> back = read_corpus(tmp.path / "with_comments.txt");
    REQUIRE(back.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(equal(back[i], corpus[i]));
    }
    CHECK_THROWS(read_corpus(tmp.path / "missing.txt"));
}

TEST_CASE("targets csv quotes formulas containing commas") {
    TempDir tmp;
    const std::vector<FormulaPtr> corpus = {
        parse_formula("(x >= -1.4) U[0,5] (x <= 2)"),  // comma inside the window
        parse_formula("x >= 1"),
    };
    const std::vector<Estimate> estimates = {{0.25, 0.01}, {-3.0, 0.5}};
    write_targets_csv(tmp.path / "targets.csv", corpus, estimates);
    const std::vector<TargetRow> rows = read_targets_csv(tmp.path / "targets.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].formula == "(x >= -1.4) U[0,5] (x <= 2)");
    CHECK(rows[0].target == 0.25);
    CHECK(rows[0].stderr_ == 0.01);
    CHECK(equal(parse_formula(rows[0].formula), corpus[0]));
    CHECK(rows[1].target == -3.0);
}

TEST_CASE("gram csv round trips entries") {
    TempDir tmp;
    FormulaGenConfig gen;
    gen.seed = 21;
    const std::vector<FormulaPtr> corpus = sample_corpus(gen, 8);
    KernelSample sample = make_kernel_sample(parse_measure("mu0"), 60, 2);
    const GramMatrix g = gram(corpus, sample, GramKind::Normalized);
    write_gram_csv(tmp.path / "gram.csv", g);
    const SymMatrix back = read_gram_csv(tmp.path / "gram.csv");
    REQUIRE(back.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            CHECK(back.at(i, j) == g.at(i, j));
        }
    }
    write_gram_sidecar(tmp.path / "gram.json", g, {{"note", "test"}});
    const nlohmann::json side =
        nlohmann::json::parse(read_text_file(tmp.path / "gram.json"));
    CHECK(side["kind"] == "normalized");
    CHECK(side["corpus"].size() == corpus.size());
}

TEST_CASE("model json round trip preserves the fitted state") {
    TempDir tmp;
    Regressor reg;
    reg.method = RegressionMethod::SupportVectorRegression;
    reg.hyper.sigma = 0.22;
    reg.hyper.svr_c = 10.0;
    reg.hyper.svr_epsilon = 0.01;
    reg.target_kind = TargetKind::SatisfactionProbability;
    reg.train_formulas = {parse_formula("F (x >= 1.5)"),
                          parse_formula("not (x <= 0.7)")};
    reg.targets = {0.25, 0.75};
    reg.coefficients = {1.25, -1.25};
    reg.bias = 0.125;
    reg.gram_fingerprint = 0xabcdef;

    write_model_file(tmp.path / "model.json", reg, {{"count", 100}});
    nlohmann::json prov;
    const Regressor back = read_model_file(tmp.path / "model.json", &prov);
    CHECK(back.method == reg.method);
    CHECK(back.target_kind == reg.target_kind);
    CHECK(back.hyper.sigma == reg.hyper.sigma);
    CHECK(back.targets == reg.targets);
    CHECK(back.coefficients == reg.coefficients);
    CHECK(back.bias == reg.bias);
    CHECK(back.gram_fingerprint == reg.gram_fingerprint);
    CHECK(equal(back.train_formulas[0], reg.train_formulas[0]));
    CHECK(prov["count"] == 100);
}

TEST_CASE("metrics csv layout") {
    TempDir tmp;
    MetricsRow row;
    row.method = "krr";
    row.sigma = 0.22;
    row.lambda = 1e-6;
    row.c = 10.0;
    row.epsilon = 0.01;
    row.neighbors = 5;
    row.mse_train = 0.001;
    row.mse_test = 0.29;
    write_metrics_csv(tmp.path / "metrics.csv", {row});
    const std::string body = read_text_file(tmp.path / "metrics.csv");
    CHECK(body ==
          "method,sigma,lambda,C,epsilon,k,mse_train,mse_test\n"
          "krr,0.22,1e-06,10,0.01,5,0.001,0.29\n");
}

TEST_CASE("emitters are byte-stable across calls") {
    TempDir tmp;
    Mu0Config cfg;
    cfg.seed = 5;
    const std::vector<Trajectory> batch = sample_mu0(cfg, 3);
    write_trajectory_batch_csv(tmp.path / "a.csv", batch);
    write_trajectory_batch_csv(tmp.path / "b.csv", batch);
    CHECK(read_text_file(tmp.path / "a.csv") == read_text_file(tmp.path / "b.csv"));
}

}  // TEST_SUITE
