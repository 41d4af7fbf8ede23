#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "stlkern/mu0.hpp"
#include "stlkern/rng.hpp"
#include "stlkern/trajectory.hpp"

using namespace stlkern;

TEST_SUITE("trajectory") {

TEST_CASE("construction validates the grid") {
    CHECK_THROWS_AS(Trajectory(0.0, 0.0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory(0.0, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory(0.0, 1.0, {std::nan("")}), std::invalid_argument);
}

TEST_CASE("total variation of simple shapes") {
    CHECK(total_variation(Trajectory(0, 1, {0.0, 5.0})) == 5.0);
    CHECK(total_variation(Trajectory(0, 1, {0.0, 2.0, 0.0})) == 4.0);
    CHECK(total_variation(Trajectory(0, 1, {3.0})) == 0.0);
}

TEST_CASE("monotonicity change counting") {
    CHECK(monotonicity_changes(Trajectory(0, 1, {0, 1, 2, 3})) == 0);
    CHECK(monotonicity_changes(Trajectory(0, 1, {0, 2, 0, 2})) == 2);
    CHECK(monotonicity_changes(Trajectory(0, 1, {0, 1, 1, 0})) == 1);
    CHECK(monotonicity_changes(Trajectory(0, 1, {5})) == 0);
}

TEST_CASE("znormalize basics") {
    const std::vector<Trajectory> out =
        znormalize({Trajectory(0, 1, {0.0, 2.0})});
    CHECK(out[0][0] == doctest::Approx(-1.0));
    CHECK(out[0][1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(znormalize({Trajectory(0, 1, {3.0, 3.0, 3.0})}),
                    std::domain_error);
    CHECK_THROWS_AS(znormalize({}), std::invalid_argument);
}

TEST_CASE("znormalize zeroes the pooled moments") {
    Rng rng(17);
    std::vector<Trajectory> batch;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> v(21);
        for (double& x : v) x = rng.next_uniform(-3.0, 9.0);
        batch.emplace_back(0.0, 1.0, std::move(v));
    }
    const std::vector<Trajectory> out = znormalize(batch);
    double sum = 0.0;
    double ss = 0.0;
    std::size_t count = 0;
    for (const Trajectory& xi : out) {
        for (double v : xi.values()) {
            sum += v;
            ss += v * v;
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    const double var = ss / static_cast<double>(count) - mean * mean;
    CHECK(std::fabs(mean) < 1e-12);
    CHECK(std::fabs(std::sqrt(var) - 1.0) < 1e-12);
}

TEST_CASE("resample halves the step with midpoints") {
    const Trajectory out = resample(Trajectory(0, 1, {0.0, 2.0}), 0.5);
    CHECK(out.values() == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(out.step() == 0.5);
}

TEST_CASE("resample to the same step is the identity") {
    const Trajectory xi(0, 1, {1.0, -2.0, 0.5, 3.0});
    const Trajectory out = resample(xi, 1.0);
    CHECK(out.values() == xi.values());
}

TEST_CASE("resampling never increases total variation") {
    Rng rng(23);
    Mu0Config cfg;
    cfg.seed = 71;
    for (std::size_t i = 0; i < 50; ++i) {
        const Trajectory xi = sample_mu0_one(cfg, i);
        const double tv = total_variation(xi);
        const double step = rng.next_uniform(0.2, 3.0);
        CHECK(total_variation(resample(xi, step)) <= tv + 1e-12);
    }
}

TEST_CASE("interpolation clamps outside the grid") {
    const Trajectory xi(0, 1, {0.0, 2.0});
    CHECK(xi.value_at(-1.0) == 0.0);
    CHECK(xi.value_at(5.0) == 2.0);
    CHECK(xi.value_at(0.25) == doctest::Approx(0.5));
}

}  // TEST_SUITE

TEST_SUITE("mu0") {

TEST_CASE("default parameters give 21 grid points") {
    Mu0Config cfg;
    cfg.seed = 1;
    const std::vector<Trajectory> batch = sample_mu0(cfg, 1);
    CHECK(batch.size() == 1);
    CHECK(batch[0].size() == 21);
    CHECK(batch[0].t0() == 0.0);
    CHECK(batch[0].step() == 1.0);
}

TEST_CASE("config validation") {
    Mu0Config cfg;
    cfg.h = 0.3;  // 20 / 0.3 is not integral
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = Mu0Config{};
    cfg.q = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = Mu0Config{};
    cfg.b = cfg.a;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(sample_mu0(Mu0Config{}, 0), std::invalid_argument);
}

TEST_CASE("total variation telescopes back to the drawn budget") {
    // replicate the documented draw order: start level, then the TV root
    Mu0Config cfg;
    cfg.seed = 2718;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        Rng rng(derive_stream(cfg.seed, i));
        rng.next_normal(0.0, cfg.sigma_start);
        const double z = rng.next_normal(0.0, cfg.sigma_tv);
        const double budget = z * z;
        const Trajectory xi = sample_mu0_one(cfg, i);
        CHECK(std::fabs(total_variation(xi) - budget) <= 1e-9);
    }
}

TEST_CASE("start level is standard normal") {
    Mu0Config cfg;
    cfg.seed = 31415;
    const std::vector<Trajectory> batch = sample_mu0(cfg, 10000);
    double sum = 0.0;
    double ss = 0.0;
    for (const Trajectory& xi : batch) {
        sum += xi[0];
        ss += xi[0] * xi[0];
    }
    const double mean = sum / 10000.0;
    const double var = ss / 10000.0 - mean * mean;
    CHECK(std::fabs(mean) <= 0.05);
    CHECK(var >= 0.9);
    CHECK(var <= 1.1);
}

TEST_CASE("q = 0 keeps every sample monotone") {
    Mu0Config cfg;
    cfg.q = 0.0;
    cfg.seed = 5;
    for (const Trajectory& xi : sample_mu0(cfg, 200)) {
        CHECK(monotonicity_changes(xi) == 0);
    }
}

TEST_CASE("q = 1 alternates the increment sign at every step") {
    Mu0Config cfg;
    cfg.q = 1.0;
    cfg.seed = 6;
    for (const Trajectory& xi : sample_mu0(cfg, 50)) {
        int last = 0;
        for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
            const double d = xi[i + 1] - xi[i];
            if (d == 0.0) continue;  // zero-width gap keeps no sign information
            const int sign = d > 0 ? 1 : -1;
            if (last != 0) CHECK(sign == -last);
            last = sign;
        }
    }
}

TEST_CASE("identical seeds give bit-identical batches") {
    Mu0Config cfg;
    cfg.seed = 99;
    const std::vector<Trajectory> a = sample_mu0(cfg, 10);
    const std::vector<Trajectory> b = sample_mu0(cfg, 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].values() == b[i].values());
    }
}

TEST_CASE("trajectory i does not depend on the batch size") {
    Mu0Config cfg;
    cfg.seed = 123;
    const std::vector<Trajectory> small = sample_mu0(cfg, 3);
    const std::vector<Trajectory> large = sample_mu0(cfg, 8);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(small[i].values() == large[i].values());
    }
}

}  // TEST_SUITE
