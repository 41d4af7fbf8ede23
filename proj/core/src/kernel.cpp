#include "stlkern/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "stlkern/robustness.hpp"

namespace stlkern {

KernelSample::KernelSample(std::vector<Trajectory> trajectories,
                           std::uint64_t fingerprint)
    : trajectories_(std::move(trajectories)), fingerprint_(fingerprint) {
    if (trajectories_.empty()) {
        throw std::invalid_argument("kernel sample: needs at least one trajectory");
    }
    grid_size_ = trajectories_.front().size();
    grid_step_ = trajectories_.front().step();
    const double t0 = trajectories_.front().t0();
    for (const Trajectory& xi : trajectories_) {
        if (xi.size() != grid_size_ || xi.step() != grid_step_ || xi.t0() != t0) {
            throw std::invalid_argument("kernel sample: trajectories must share one grid");
        }
    }
}

const std::vector<double>& KernelSample::signals(const Formula& f) {
    const std::string key = print_formula(f);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    std::vector<double> flat;
    flat.reserve(trajectories_.size() * grid_size_);
    for (const Trajectory& xi : trajectories_) {
        const std::vector<double> sig = robustness_signal(f, xi);
        flat.insert(flat.end(), sig.begin(), sig.end());
    }
    return cache_.emplace(key, std::move(flat)).first->second;
}

namespace detail {

// (1/M) sum_m [ h * sum_t a*b ]; the one accumulation routine behind every
// kernel entry point, so cached and uncached paths agree bit for bit.
double inner_product(const std::vector<double>& a, const std::vector<double>& b,
                     std::size_t traj_count, std::size_t grid, double h) {
    double total = 0.0;
    std::size_t base = 0;
    for (std::size_t m = 0; m < traj_count; ++m) {
        double time_sum = 0.0;
        for (std::size_t t = 0; t < grid; ++t) {
            time_sum += a[base + t] * b[base + t];
        }
        total += h * time_sum;
        base += grid;
    }
    return total / static_cast<double>(traj_count);
}

}  // namespace detail

double KernelSample::self_kernel(const Formula& f) {
    const std::string key = print_formula(f);
    auto it = self_cache_.find(key);
    if (it != self_cache_.end()) return it->second;
    const std::vector<double>& sig = signals(f);
    const double k =
        detail::inner_product(sig, sig, trajectories_.size(), grid_size_, grid_step_);
    return self_cache_.emplace(key, k).first->second;
}

std::string to_string(GramKind kind) {
    switch (kind) {
        case GramKind::Raw: return "raw";
        case GramKind::Normalized: return "normalized";
        case GramKind::Gaussian: return "gaussian";
    }
    return "?";
}

GramKind gram_kind_from_string(const std::string& s) {
    if (s == "raw") return GramKind::Raw;
    if (s == "normalized") return GramKind::Normalized;
    if (s == "gaussian") return GramKind::Gaussian;
    throw std::invalid_argument("unknown gram kind '" + s + "'");
}

namespace {

double normalized_from_raw(double kpp, double kss, double kps,
                           const char* degenerate_what) {
    if (!(kpp > kDegenerateSelfKernel) || !(kss > kDegenerateSelfKernel)) {
        std::vector<std::size_t> which;
        if (!(kpp > kDegenerateSelfKernel)) which.push_back(0);
        if (!(kss > kDegenerateSelfKernel)) which.push_back(1);
        throw DegenerateFormulaError(degenerate_what, std::move(which));
    }
    return kps / std::sqrt(kpp * kss);
}

}  // namespace

double raw_kernel(const Formula& phi, const Formula& psi, KernelSample& sample) {
    const std::vector<double>& a = sample.signals(phi);
    const std::vector<double>& b = sample.signals(psi);
    return detail::inner_product(a, b, sample.trajectory_count(),
                                 sample.grid_size(), sample.grid_step());
}

double normalized_kernel(const Formula& phi, const Formula& psi,
                         KernelSample& sample) {
    const double kpp = sample.self_kernel(phi);
    const double kss = sample.self_kernel(psi);
    const double kps = raw_kernel(phi, psi, sample);
    const double k = normalized_from_raw(
        kpp, kss, kps,
        "normalized kernel: formula robustness vanishes on the whole sample");
    // x / sqrt(x * x) can land one ulp off; pin the self-similarity anchor
    if (equal(phi, psi)) return 1.0;
    return k;
}

double gaussian_from_normalized(double k_normalized, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("gaussian kernel: sigma must be positive");
    }
    const double d2 = 2.0 - 2.0 * k_normalized;
    return std::exp(-d2 / (2.0 * sigma * sigma));
}

double gaussian_kernel(const Formula& phi, const Formula& psi,
                       KernelSample& sample, double sigma) {
    return gaussian_from_normalized(normalized_kernel(phi, psi, sample), sigma);
}

GramMatrix gram(const std::vector<FormulaPtr>& corpus, KernelSample& sample,
                GramKind kind, double sigma) {
    if (corpus.empty()) {
        throw std::invalid_argument("gram: empty corpus");
    }
    if (kind == GramKind::Gaussian && !(sigma > 0.0)) {
        throw std::invalid_argument("gram: gaussian kind needs sigma > 0");
    }
    const std::size_t n = corpus.size();
    for (const FormulaPtr& f : corpus) {
        if (!f) throw std::invalid_argument("gram: null formula in corpus");
    }

    // self-kernels first; report every degenerate index at once
    std::vector<double> self(n);
    std::vector<std::size_t> degenerate;
    for (std::size_t i = 0; i < n; ++i) {
        self[i] = sample.self_kernel(*corpus[i]);
        if (kind != GramKind::Raw && !(self[i] > kDegenerateSelfKernel)) {
            degenerate.push_back(i);
        }
    }
    if (!degenerate.empty()) {
        std::string msg = "gram: degenerate formulas at corpus indices";
        for (std::size_t idx : degenerate) msg += " " + std::to_string(idx);
        throw DegenerateFormulaError(std::move(msg), std::move(degenerate));
    }

    GramMatrix g;
    g.formulas = corpus;
    g.kind = kind;
    g.sigma = (kind == GramKind::Gaussian) ? sigma : 0.0;
    g.sample_fingerprint = sample.fingerprint();
    g.entries = SymMatrix(n);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = (i == j) ? self[i]
                                : raw_kernel(*corpus[i], *corpus[j], sample);
            if (kind != GramKind::Raw) {
                v = (i == j) ? 1.0 : v / std::sqrt(self[i] * self[j]);
            }
            if (kind == GramKind::Gaussian) {
                v = gaussian_from_normalized(v, sigma);
            }
            g.entries.at(i, j) = v;
            g.entries.at(j, i) = v;
        }
    }
    return g;
}

double pd_jitter(const SymMatrix& g) {
    if (g.size() == 0) return 0.0;
    return 1e-8 * g.trace() / static_cast<double>(g.size());
}

Estimate expected_robustness(const Formula& phi, KernelSample& sample,
                             std::size_t t_index) {
    if (t_index >= sample.grid_size()) {
        throw std::out_of_range("expected_robustness: t_index outside grid");
    }
    const std::vector<double>& sig = sample.signals(phi);
    const std::size_t m = sample.trajectory_count();
    const std::size_t grid = sample.grid_size();

    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += sig[i * grid + t_index];
    const double mean = sum / static_cast<double>(m);

    double se = 0.0;
    if (m > 1) {
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = sig[i * grid + t_index] - mean;
            ss += d * d;
        }
        se = std::sqrt(ss / static_cast<double>(m - 1)) /
             std::sqrt(static_cast<double>(m));
    }
    return {mean, se};
}

Estimate satisfaction_probability(const Formula& phi, KernelSample& sample,
                                  std::size_t t_index) {
    if (t_index >= sample.grid_size()) {
        throw std::out_of_range("satisfaction_probability: t_index outside grid");
    }
    const std::size_t m = sample.trajectory_count();
    std::size_t hits = 0;
    for (const Trajectory& xi : sample.trajectories()) {
        if (boolean_sat(phi, xi, t_index)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(m);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(m));
    return {p, se};
}

}  // namespace stlkern
