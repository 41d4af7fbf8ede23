#include "stlkern/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stlkern/rng.hpp"

namespace stlkern {

std::string to_string(RegressionMethod m) {
    switch (m) {
        case RegressionMethod::NadarayaWatson: return "nw";
        case RegressionMethod::KNearestNeighbors: return "knn";
        case RegressionMethod::KernelRidge: return "krr";
        case RegressionMethod::SupportVectorRegression: return "svr";
    }
    return "?";
}

RegressionMethod regression_method_from_string(const std::string& s) {
    if (s == "nw") return RegressionMethod::NadarayaWatson;
    if (s == "knn") return RegressionMethod::KNearestNeighbors;
    if (s == "krr") return RegressionMethod::KernelRidge;
    if (s == "svr") return RegressionMethod::SupportVectorRegression;
    throw std::invalid_argument("unknown regression method '" + s + "'");
}

std::string to_string(TargetKind k) {
    return k == TargetKind::ExpectedRobustness ? "exprob" : "satprob";
}

TargetKind target_kind_from_string(const std::string& s) {
    if (s == "exprob") return TargetKind::ExpectedRobustness;
    if (s == "satprob") return TargetKind::SatisfactionProbability;
    throw std::invalid_argument("unknown target kind '" + s + "'");
}

void TrainingSet::validate() const {
    if (formulas.size() != targets.size()) {
        throw std::invalid_argument("training set: formula/target count mismatch");
    }
    if (formulas.empty()) {
        throw std::invalid_argument("training set: empty");
    }
    for (double y : targets) {
        if (!std::isfinite(y)) {
            throw std::invalid_argument("training set: non-finite target");
        }
        if (kind == TargetKind::SatisfactionProbability && !(y >= 0.0 && y <= 1.0)) {
            throw std::invalid_argument(
                "training set: satisfaction probability target outside [0, 1]");
        }
    }
}

namespace {

void fit_kernel_ridge(const GramMatrix& gram, const std::vector<double>& y,
                      double lambda, Regressor& reg) {
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("krr: lambda must be >= 0");
    }
    SymMatrix system = gram.entries;
    system.add_diagonal(lambda);

    SymMatrix factor = system;
    if (!cholesky(factor)) {
        const double jitter = pd_jitter(gram.entries);
        system.add_diagonal(jitter);
        factor = system;
        if (!cholesky(factor)) {
            throw std::domain_error("krr: system not positive definite after jitter");
        }
        reg.jitter_applied = jitter;
    }
    reg.coefficients = cholesky_solve(factor, y);
}

// ── epsilon-SVR dual, two-variable coordinate ascent ───────────────────────
//
// Variables beta_i = alpha_i - alpha*_i in [-C, C] with sum beta = 0;
// maximize -1/2 b^T K b + y^T b - eps * sum |b_i|.  Each step picks the
// maximally violating pair under the current bias window and solves the
// piecewise-quadratic two-variable problem exactly.

struct SvrState {
    const SymMatrix& k;
    const std::vector<double>& y;
    double c;
    double eps;
    std::vector<double> beta;
    std::vector<double> k_beta;  // (K beta)_i, maintained incrementally

    double e(std::size_t i) const { return y[i] - k_beta[i]; }
};

// Bias window [lo, hi] implied by the KKT conditions; converged when
// lo - hi <= 2 * tol, with b = (lo + hi) / 2 as the working bias.
struct BiasWindow {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    std::size_t arg_lo = 0;
    std::size_t arg_hi = 0;
};

BiasWindow bias_window(const SvrState& s) {
    BiasWindow w;
    const double bound_slack = 1e-12 * s.c;
    for (std::size_t i = 0; i < s.beta.size(); ++i) {
        const double e = s.e(i);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        if (std::fabs(s.beta[i]) <= bound_slack) {
            lo = e - s.eps;
            hi = e + s.eps;
        } else if (s.beta[i] >= s.c - bound_slack) {
            hi = e - s.eps;
        } else if (s.beta[i] <= -s.c + bound_slack) {
            lo = e + s.eps;
        } else if (s.beta[i] > 0.0) {
            lo = hi = e - s.eps;
        } else {
            lo = hi = e + s.eps;
        }
        if (lo > w.lo) { w.lo = lo; w.arg_lo = i; }
        if (hi < w.hi) { w.hi = hi; w.arg_hi = i; }
    }
    return w;
}

// Exact objective change for beta_i += delta, beta_j -= delta.
double svr_gain(const SvrState& s, std::size_t i, std::size_t j, double delta,
                double eta) {
    const double gi = s.e(i);
    const double gj = s.e(j);
    return -0.5 * eta * delta * delta + delta * (gi - gj) -
           s.eps * (std::fabs(s.beta[i] + delta) - std::fabs(s.beta[i])) -
           s.eps * (std::fabs(s.beta[j] - delta) - std::fabs(s.beta[j]));
}

// Best feasible delta for the pair; piecewise-quadratic maximization over
// the box with breakpoints where beta_i + delta or beta_j - delta cross 0.
double svr_best_delta(const SvrState& s, std::size_t i, std::size_t j) {
    const double eta = s.k.at(i, i) + s.k.at(j, j) - 2.0 * s.k.at(i, j);
    const double lo = std::max(-s.c - s.beta[i], s.beta[j] - s.c);
    const double hi = std::min(s.c - s.beta[i], s.beta[j] + s.c);
    if (!(lo < hi)) return 0.0;

    std::vector<double> cuts = {lo, hi};
    const double cross_i = -s.beta[i];
    const double cross_j = s.beta[j];
    if (cross_i > lo && cross_i < hi) cuts.push_back(cross_i);
    if (cross_j > lo && cross_j < hi) cuts.push_back(cross_j);
    std::sort(cuts.begin(), cuts.end());

    const double gi = s.e(i);
    const double gj = s.e(j);

    double best_delta = 0.0;
    double best_gain = 0.0;
    auto consider = [&](double delta) {
        const double gain = svr_gain(s, i, j, delta, eta);
        if (gain > best_gain) {
            best_gain = gain;
            best_delta = delta;
        }
    };
    for (double cut : cuts) consider(cut);
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double mid = 0.5 * (cuts[seg] + cuts[seg + 1]);
        const double sign_i = (s.beta[i] + mid) >= 0.0 ? 1.0 : -1.0;
        const double sign_j = (s.beta[j] - mid) >= 0.0 ? 1.0 : -1.0;
        if (eta > 1e-300) {
            const double stationary =
                (gi - gj - s.eps * sign_i + s.eps * sign_j) / eta;
            if (stationary > cuts[seg] && stationary < cuts[seg + 1]) {
                consider(stationary);
            }
        }
    }
    return best_delta;
}

void fit_svr(const GramMatrix& gram, const std::vector<double>& y,
             const RegressionHyper& hyper, Regressor& reg) {
    if (!(hyper.svr_c > 0.0)) throw std::invalid_argument("svr: C must be > 0");
    if (!(hyper.svr_epsilon >= 0.0)) {
        throw std::invalid_argument("svr: epsilon must be >= 0");
    }
    const std::size_t n = gram.size();
    SvrState s{gram.entries, y, hyper.svr_c, hyper.svr_epsilon,
               std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

    constexpr double kTol = 1e-4;
    constexpr std::size_t kMaxIter = 100000;
    Rng rng(0x5f3759df);  // fallback pair scrambling only; fit stays deterministic

    BiasWindow w = bias_window(s);
    std::size_t iter = 0;
    for (; iter < kMaxIter; ++iter) {
        if (w.lo - w.hi <= 2.0 * kTol) break;

        std::size_t i = w.arg_lo;
        std::size_t j = w.arg_hi;
        double delta = svr_best_delta(s, i, j);
        if (delta == 0.0) {
            // degenerate pair (eta ~ 0 and no linear gain): try random pairs
            bool moved = false;
            for (int attempt = 0; attempt < 32 && !moved; ++attempt) {
                i = static_cast<std::size_t>(rng.next_below(n));
                j = static_cast<std::size_t>(rng.next_below(n));
                if (i == j) continue;
                delta = svr_best_delta(s, i, j);
                moved = delta != 0.0;
            }
            if (!moved) break;  // numerical optimum; violation checked below
        }
        s.beta[i] += delta;
        s.beta[j] -= delta;
        for (std::size_t k = 0; k < n; ++k) {
            s.k_beta[k] += delta * (s.k.at(k, i) - s.k.at(k, j));
        }
        w = bias_window(s);
    }

    const double violation = std::max(0.0, 0.5 * (w.lo - w.hi));
    if (violation > kTol) {
        throw SvrConvergenceError(
            "svr: no convergence within " + std::to_string(kMaxIter) +
                " iterations (KKT violation " + std::to_string(violation) + ")",
            violation);
    }

    double b;
    if (std::isfinite(w.lo) && std::isfinite(w.hi)) {
        b = 0.5 * (w.lo + w.hi);
    } else if (std::isfinite(w.lo)) {
        b = w.lo;
    } else if (std::isfinite(w.hi)) {
        b = w.hi;
    } else {
        b = 0.0;
    }
    reg.coefficients = std::move(s.beta);
    reg.bias = b;
}

}  // namespace

Regressor fit(RegressionMethod method, const RegressionHyper& hyper,
              const GramMatrix& gram, const std::vector<double>& targets,
              TargetKind target_kind) {
    if (gram.size() == 0) throw std::invalid_argument("fit: empty gram matrix");
    if (targets.size() != gram.size()) {
        throw std::invalid_argument("fit: target count does not match gram size");
    }
    const bool needs_gaussian = method != RegressionMethod::KNearestNeighbors;
    if (needs_gaussian && gram.kind != GramKind::Gaussian) {
        throw std::invalid_argument("fit: " + to_string(method) +
                                    " requires a gaussian-kind gram matrix");
    }

    Regressor reg;
    reg.method = method;
    reg.hyper = hyper;
    if (gram.kind == GramKind::Gaussian) reg.hyper.sigma = gram.sigma;
    reg.target_kind = target_kind;
    reg.train_formulas = gram.formulas;
    reg.targets = targets;
    reg.gram_fingerprint = gram.sample_fingerprint;

    switch (method) {
        case RegressionMethod::NadarayaWatson:
        case RegressionMethod::KNearestNeighbors:
            break;  // lazy predictors: stored targets are the whole fit
        case RegressionMethod::KernelRidge:
            fit_kernel_ridge(gram, targets, hyper.ridge_lambda, reg);
            break;
        case RegressionMethod::SupportVectorRegression:
            fit_svr(gram, targets, hyper, reg);
            break;
    }
    return reg;
}

double predict_from_normalized(const Regressor& reg,
                               std::span<const double> k_normalized) {
    const std::size_t n = reg.train_formulas.size();
    if (k_normalized.size() != n) {
        throw std::invalid_argument("predict: kernel row size mismatch");
    }
    double value = 0.0;
    switch (reg.method) {
        case RegressionMethod::NadarayaWatson: {
            double num = 0.0;
            double den = 0.0;
            std::size_t nearest = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double w =
                    gaussian_from_normalized(k_normalized[i], reg.hyper.sigma);
                num += w * reg.targets[i];
                den += w;
                if (k_normalized[i] > k_normalized[nearest]) nearest = i;
            }
            // all weights can underflow at tiny sigma; degrade to the
            // nearest neighbor (the sigma -> 0 limit)
            value = den > 0.0 ? num / den : reg.targets[nearest];
            break;
        }
        case RegressionMethod::KNearestNeighbors: {
            std::vector<std::pair<double, std::size_t>> order(n);
            for (std::size_t i = 0; i < n; ++i) {
                order[i] = {2.0 - 2.0 * k_normalized[i], i};  // ties: lower index
            }
            std::sort(order.begin(), order.end());
            const std::size_t k = std::min<std::size_t>(
                std::max<std::size_t>(reg.hyper.neighbors, 1), n);
            double sum = 0.0;
            for (std::size_t r = 0; r < k; ++r) sum += reg.targets[order[r].second];
            value = sum / static_cast<double>(k);
            break;
        }
        case RegressionMethod::KernelRidge: {
            for (std::size_t i = 0; i < n; ++i) {
                value += reg.coefficients[i] *
                         gaussian_from_normalized(k_normalized[i], reg.hyper.sigma);
            }
            break;
        }
        case RegressionMethod::SupportVectorRegression: {
            for (std::size_t i = 0; i < n; ++i) {
                value += reg.coefficients[i] *
                         gaussian_from_normalized(k_normalized[i], reg.hyper.sigma);
            }
            value += reg.bias;
            break;
        }
    }
    if (reg.target_kind == TargetKind::SatisfactionProbability) {
        value = std::clamp(value, 0.0, 1.0);
    }
    return value;
}

double predict(const Regressor& reg, const Formula& phi, KernelSample& sample) {
    const std::size_t n = reg.train_formulas.size();
    const double self_phi = sample.self_kernel(phi);
    if (!(self_phi > kDegenerateSelfKernel)) {
        throw DegenerateFormulaError(
            "predict: query formula robustness vanishes on the sample", {0});
    }
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        row[i] = normalized_kernel(phi, *reg.train_formulas[i], sample);
    }
    return predict_from_normalized(reg, row);
}

double evaluate_mse(const Regressor& reg, const TrainingSet& test,
                    KernelSample& sample) {
    test.validate();
    double sum = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const double err = predict(reg, *test.formulas[i], sample) - test.targets[i];
        sum += err * err;
    }
    return sum / static_cast<double>(test.size());
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double fraction, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("split: need at least two entries");
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("split: fraction must lie in (0, 1)");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(order[i], order[j]);
    }
    std::size_t train_n = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(n)));
    train_n = std::clamp<std::size_t>(train_n, 1, n - 1);
    const auto cut = order.begin() + static_cast<std::ptrdiff_t>(train_n);
    return {std::vector<std::size_t>(order.begin(), cut),
            std::vector<std::size_t>(cut, order.end())};
}

std::pair<TrainingSet, TrainingSet> split(const TrainingSet& set, double fraction,
                                          std::uint64_t seed) {
    set.validate();
    const auto [train_idx, test_idx] = split_indices(set.size(), fraction, seed);
    TrainingSet train{{}, {}, set.kind};
    TrainingSet test{{}, {}, set.kind};
    for (std::size_t idx : train_idx) {
        train.formulas.push_back(set.formulas[idx]);
        train.targets.push_back(set.targets[idx]);
    }
    for (std::size_t idx : test_idx) {
        test.formulas.push_back(set.formulas[idx]);
        test.targets.push_back(set.targets[idx]);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace stlkern
