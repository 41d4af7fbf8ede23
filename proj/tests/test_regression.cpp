#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "stlkern/formula_gen.hpp"
#include "stlkern/kernel.hpp"
#include "stlkern/mu0.hpp"
#include "stlkern/parser.hpp"
#include "stlkern/regression.hpp"

using namespace stlkern;

namespace {

// Synthetic gaussian-kind gram with given entries (for solver-level tests).
GramMatrix synthetic_gram(const std::vector<std::vector<double>>& rows,
                          double sigma = 1.0) {
    GramMatrix g;
    g.kind = GramKind::Gaussian;
    g.sigma = sigma;
    const std::size_t n = rows.size();
    g.entries = SymMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) g.entries.at(i, j) = rows[i][j];
        g.formulas.push_back(
            make_atom(AtomPolarity::GreaterEqual, static_cast<double>(i)));
    }
    return g;
}

GramMatrix identity_gram(std::size_t n) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
    return synthetic_gram(rows);
}

// Real corpus + gram over a mu0 draw, for end-to-end regression tests.
struct Fixture {
    std::vector<FormulaPtr> corpus;
    KernelSample sample;
    GramMatrix normalized;
    std::vector<double> targets;
};

Fixture make_fixture(std::size_t corpus_size, std::size_t traj_count,
                     std::uint64_t seed) {
    FormulaGenConfig gen;
    gen.seed = seed;
    std::vector<FormulaPtr> corpus = sample_corpus(gen, corpus_size);
    Mu0Config mu0;
    mu0.seed = seed + 1;
    KernelSample sample(sample_mu0(mu0, traj_count), seed + 1);
    GramMatrix normalized = gram(corpus, sample, GramKind::Normalized);
    std::vector<double> targets;
    for (const FormulaPtr& f : corpus) {
        targets.push_back(expected_robustness(*f, sample, 0).value);
    }
    return {std::move(corpus), std::move(sample), std::move(normalized),
            std::move(targets)};
}

GramMatrix gaussianize(const GramMatrix& normalized, double sigma) {
    GramMatrix g = normalized;
    g.kind = GramKind::Gaussian;
    g.sigma = sigma;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            g.entries.at(i, j) = gaussian_from_normalized(normalized.at(i, j), sigma);
        }
    }
    return g;
}

}  // namespace

TEST_SUITE("regression") {

TEST_CASE("krr with an identity gram") {
    const std::vector<double> y = {1.0, -2.0, 3.0};
    RegressionHyper hyper;

    hyper.ridge_lambda = 0.0;
    Regressor exact = fit(RegressionMethod::KernelRidge, hyper, identity_gram(3),
                          y, TargetKind::ExpectedRobustness);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(exact.coefficients[i] == doctest::Approx(y[i]).epsilon(1e-12));
    }

    hyper.ridge_lambda = 1.0;
    Regressor damped = fit(RegressionMethod::KernelRidge, hyper, identity_gram(3),
                           y, TargetKind::ExpectedRobustness);
    // (I + I) alpha = y, and training predictions G alpha = y / 2
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(damped.coefficients[i] == doctest::Approx(y[i] / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("krr residual bound on a real gram") {
    Fixture fx = make_fixture(40, 100, 11);
    const GramMatrix g = gaussianize(fx.normalized, 0.5);
    RegressionHyper hyper;
    hyper.ridge_lambda = 1e-6;
    const Regressor reg = fit(RegressionMethod::KernelRidge, hyper, g, fx.targets,
                              TargetKind::ExpectedRobustness);

    SymMatrix system = g.entries;
    system.add_diagonal(hyper.ridge_lambda + reg.jitter_applied);
    const std::vector<double> back = mat_vec(system, reg.coefficients);
    double y_max = 0.0;
    for (double y : fx.targets) y_max = std::max(y_max, std::fabs(y));
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(std::fabs(back[i] - fx.targets[i]) <= 1e-8 * y_max);
    }
}

TEST_CASE("larger ridge never enlarges the coefficient norm") {
    Fixture fx = make_fixture(30, 80, 21);
    const GramMatrix g = gaussianize(fx.normalized, 0.7);
    double last_norm = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-8, 1e-4, 1e-2, 1.0, 100.0}) {
        RegressionHyper hyper;
        hyper.ridge_lambda = lambda;
        const Regressor reg = fit(RegressionMethod::KernelRidge, hyper, g,
                                  fx.targets, TargetKind::ExpectedRobustness);
        double norm = 0.0;
        for (double a : reg.coefficients) norm += a * a;
        norm = std::sqrt(norm);
        CHECK(norm <= last_norm + 1e-9);
        last_norm = norm;
    }
}

TEST_CASE("svr with a huge tube degenerates to a constant in range") {
    const std::vector<double> y = {1.0, 2.0, 4.0};
    RegressionHyper hyper;
    hyper.svr_epsilon = 3.0;  // >= max |y - mean(y)|
    const Regressor reg =
        fit(RegressionMethod::SupportVectorRegression, hyper, identity_gram(3), y,
            TargetKind::ExpectedRobustness);
    for (double beta : reg.coefficients) CHECK(beta == 0.0);
    CHECK(reg.bias >= 1.0);
    CHECK(reg.bias <= 4.0);
}

TEST_CASE("svr satisfies its KKT conditions at convergence") {
    Fixture fx = make_fixture(30, 80, 31);
    const GramMatrix g = gaussianize(fx.normalized, 0.5);
    RegressionHyper hyper;  // C = 10, epsilon = 0.01
    const Regressor reg =
        fit(RegressionMethod::SupportVectorRegression, hyper, g, fx.targets,
            TargetKind::ExpectedRobustness);

    constexpr double tol = 2e-4;  // solver tolerance plus slack
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::fabs(reg.coefficients[i]) <= hyper.svr_c + 1e-12);
        double f_i = reg.bias;
        for (std::size_t j = 0; j < n; ++j) {
            f_i += reg.coefficients[j] * g.at(i, j);
        }
        const double r = fx.targets[i] - f_i;
        const double beta = reg.coefficients[i];
        if (std::fabs(beta) <= 1e-10) {
            CHECK(std::fabs(r) <= hyper.svr_epsilon + tol);
        } else if (beta > 0.0 && beta < hyper.svr_c - 1e-10) {
            CHECK(std::fabs(r - hyper.svr_epsilon) <= tol);
        } else if (beta < 0.0 && beta > -hyper.svr_c + 1e-10) {
            CHECK(std::fabs(r + hyper.svr_epsilon) <= tol);
        } else if (beta >= hyper.svr_c - 1e-10) {
            CHECK(r >= hyper.svr_epsilon - tol);
        } else {
            CHECK(r <= -hyper.svr_epsilon + tol);
        }
    }
}

TEST_CASE("nadaraya-watson with one training point returns its target") {
    Fixture fx = make_fixture(8, 60, 41);
    GramMatrix one;
    one.kind = GramKind::Gaussian;
    one.sigma = 0.5;
    one.entries = SymMatrix(1);
    one.entries.at(0, 0) = 1.0;
    one.formulas = {fx.corpus[0]};
    const Regressor reg = fit(RegressionMethod::NadarayaWatson, RegressionHyper{},
                              one, {3.25}, TargetKind::ExpectedRobustness);
    for (const FormulaPtr& f : fx.corpus) {
        // (w * y) / w re-rounds for w != 1
        CHECK(predict(reg, *f, fx.sample) == doctest::Approx(3.25).epsilon(1e-15));
    }
}

TEST_CASE("nadaraya-watson stays inside the target hull") {
    Fixture fx = make_fixture(25, 60, 51);
    const GramMatrix g = gaussianize(fx.normalized, 0.4);
    const Regressor reg = fit(RegressionMethod::NadarayaWatson, RegressionHyper{},
                              g, fx.targets, TargetKind::ExpectedRobustness);
    double lo = fx.targets[0];
    double hi = fx.targets[0];
    for (double y : fx.targets) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const FormulaPtr f = testing::random_formula(rng, 3, false, false);
        const double p = predict(reg, *f, fx.sample);
        CHECK(p >= lo - 1e-12);
        CHECK(p <= hi + 1e-12);
    }
}

TEST_CASE("knn with k=1 recalls a training formula's own target") {
    Fixture fx = make_fixture(20, 60, 61);
    RegressionHyper hyper;
    hyper.neighbors = 1;
    const Regressor reg = fit(RegressionMethod::KNearestNeighbors, hyper,
                              fx.normalized, fx.targets,
                              TargetKind::ExpectedRobustness);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(predict(reg, *fx.corpus[i], fx.sample) ==
              doctest::Approx(fx.targets[i]));
    }
}

TEST_CASE("knn averages the k nearest with index tie-breaking") {
    Regressor reg;
    reg.method = RegressionMethod::KNearestNeighbors;
    reg.hyper.neighbors = 2;
    reg.target_kind = TargetKind::ExpectedRobustness;
    reg.train_formulas = {make_atom(AtomPolarity::GreaterEqual, 0),
                          make_atom(AtomPolarity::GreaterEqual, 1),
                          make_atom(AtomPolarity::GreaterEqual, 2)};
    reg.targets = {10.0, 20.0, 40.0};
    // distances: entries 0 and 1 tie at k = 0.5; ties resolve to index 0, 1
    CHECK(predict_from_normalized(reg, std::vector<double>{0.5, 0.5, 0.5}) == 15.0);
    // clear ordering picks the two closest
    CHECK(predict_from_normalized(reg, std::vector<double>{0.9, 0.1, 0.8}) == 25.0);
}

TEST_CASE("knn prediction is invariant under training permutation") {
    Fixture fx = make_fixture(20, 60, 65);
    RegressionHyper hyper;
    hyper.neighbors = 3;
    const Regressor reg = fit(RegressionMethod::KNearestNeighbors, hyper,
                              fx.normalized, fx.targets,
                              TargetKind::ExpectedRobustness);

    // reversed training order (targets stay aligned with formulas)
    GramMatrix reversed = fx.normalized;
    std::reverse(reversed.formulas.begin(), reversed.formulas.end());
    const std::size_t n = fx.normalized.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            reversed.entries.at(i, j) =
                fx.normalized.at(n - 1 - i, n - 1 - j);
        }
    }
    std::vector<double> reversed_targets(fx.targets.rbegin(), fx.targets.rend());
    const Regressor reg_rev = fit(RegressionMethod::KNearestNeighbors, hyper,
                                  reversed, reversed_targets,
                                  TargetKind::ExpectedRobustness);

    Rng rng(12);
    for (int rep = 0; rep < 10; ++rep) {
        const FormulaPtr f = testing::random_formula(rng, 3, false, false);
        CHECK(predict(reg, *f, fx.sample) == predict(reg_rev, *f, fx.sample));
    }
}

TEST_CASE("satisfaction-probability predictions are clamped") {
    Regressor reg;
    reg.method = RegressionMethod::KernelRidge;
    reg.hyper.sigma = 0.5;
    reg.target_kind = TargetKind::SatisfactionProbability;
    reg.train_formulas = {make_atom(AtomPolarity::GreaterEqual, 0)};
    reg.targets = {1.0};
    reg.coefficients = {5.0};  // would predict 5 unclamped
    CHECK(predict_from_normalized(reg, std::vector<double>{1.0}) == 1.0);
    reg.coefficients = {-5.0};
    CHECK(predict_from_normalized(reg, std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("training-set predictions reproduce the solved system") {
    Fixture fx = make_fixture(30, 80, 71);
    const GramMatrix g = gaussianize(fx.normalized, 0.6);
    RegressionHyper hyper;
    const Regressor reg = fit(RegressionMethod::KernelRidge, hyper, g, fx.targets,
                              TargetKind::ExpectedRobustness);
    // predict() on a training formula must reproduce sum_j alpha_j G_ij
    for (std::size_t i = 0; i < 5; ++i) {
        double expected = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            expected += reg.coefficients[j] * g.at(i, j);
        }
        CHECK(predict(reg, *fx.corpus[i], fx.sample) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("mse of a perfect and a constant predictor") {
    Fixture fx = make_fixture(15, 60, 81);
    RegressionHyper hyper;
    hyper.neighbors = 1;
    const Regressor reg = fit(RegressionMethod::KNearestNeighbors, hyper,
                              fx.normalized, fx.targets,
                              TargetKind::ExpectedRobustness);
    TrainingSet own{fx.corpus, fx.targets, TargetKind::ExpectedRobustness};
    CHECK(evaluate_mse(reg, own, fx.sample) == 0.0);

    // constant predictor at 1 against targets {0, 2} scores 1
    Regressor constant;
    constant.method = RegressionMethod::NadarayaWatson;
    constant.hyper.sigma = 1.0;
    constant.target_kind = TargetKind::ExpectedRobustness;
    constant.train_formulas = {make_atom(AtomPolarity::GreaterEqual, 0)};
    constant.targets = {1.0};
    TrainingSet two{{parse_formula("x >= 1"), parse_formula("x >= 2")},
                    {0.0, 2.0},
                    TargetKind::ExpectedRobustness};
    CHECK(evaluate_mse(constant, two, fx.sample) == 1.0);
}

TEST_CASE("fit validates its inputs") {
    Fixture fx = make_fixture(10, 40, 91);
    RegressionHyper hyper;
    CHECK_THROWS_AS(fit(RegressionMethod::KernelRidge, hyper, fx.normalized,
                        fx.targets, TargetKind::ExpectedRobustness),
                    std::invalid_argument);  // needs gaussian kind
    const GramMatrix g = gaussianize(fx.normalized, 0.5);
    CHECK_THROWS_AS(fit(RegressionMethod::KernelRidge, hyper, g, {1.0},
                        TargetKind::ExpectedRobustness),
                    std::invalid_argument);  // size mismatch
}

TEST_CASE("split is deterministic, disjoint and sized by rounding") {
    TrainingSet set;
    set.kind = TargetKind::ExpectedRobustness;
    for (int i = 0; i < 400; ++i) {
        set.formulas.push_back(
            make_atom(AtomPolarity::GreaterEqual, static_cast<double>(i)));
        set.targets.push_back(static_cast<double>(i));
    }
    const auto [train, test] = split(set, 0.8, 17);
    CHECK(train.size() == 320);
    CHECK(test.size() == 80);

    std::vector<bool> seen(400, false);
    for (double y : train.targets) seen[static_cast<std::size_t>(y)] = true;
    for (double y : test.targets) {
        CHECK_FALSE(seen[static_cast<std::size_t>(y)]);
        seen[static_cast<std::size_t>(y)] = true;
    }
    for (bool s : seen) CHECK(s);

    const auto [train2, test2] = split(set, 0.8, 17);
    CHECK(train2.targets == train.targets);
    const auto [train3, test3] = split(set, 0.8, 18);
    CHECK(train3.targets != train.targets);
}

}  // TEST_SUITE
