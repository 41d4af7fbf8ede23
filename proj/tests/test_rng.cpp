#include <doctest.h>

#include <cmath>
#include <set>

#include "stlkern/rng.hpp"

using namespace stlkern;

TEST_SUITE("rng") {

TEST_CASE("same seed, same stream") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("u01 stays in [0, 1)") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("open-zero variant stays in (0, 1]") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_u01_open_zero();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("next_below respects the bound and hits every value") {
    Rng rng(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t v = rng.next_below(6);
        CHECK(v < 6);
        seen.insert(v);
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("normal draws have the requested moments") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal(0.0, 1.0);
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("derived streams are independent of sibling count") {
    // stream i depends only on (seed, i)
    CHECK(derive_stream(99, 3) == derive_stream(99, 3));
    CHECK(derive_stream(99, 3) != derive_stream(99, 4));
    CHECK(derive_stream(99, 3) != derive_stream(100, 3));
}

TEST_CASE("role seeds differ per role and per master") {
    CHECK(derive_seed(1, SeedRole::Trajectories) != derive_seed(1, SeedRole::Formulas));
    CHECK(derive_seed(1, SeedRole::Split) != derive_seed(2, SeedRole::Split));
}

TEST_CASE("sign flips with the requested probability") {
    Rng rng(5);
    int minus = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        if (rng.next_sign(0.1) == -1) ++minus;
    }
    CHECK(std::fabs(minus / static_cast<double>(n) - 0.1) < 0.01);
}

}  // TEST_SUITE
