#include <doctest.h>

#include <cmath>
#include <random>

#include "lseq/constants.hpp"
#include "lseq/error.hpp"

using namespace lseq;

TEST_CASE("two-dimensional norm") {
    CHECK(norm2d({2 / std::sqrt(5.0), 0.0}, 1, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm2d({0.0, 2.0}, 1, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm2d({0.0, 0.0}, 1, 2, 2) == 0.0);
    CHECK(norm2d({1.0, 1.0}, 1, 2, kInfinity) == 1.0);
    CHECK_THROWS_AS(norm2d({1, 1}, 2, 1, 2), Error);
    CHECK_THROWS_AS(norm2d({1, 1}, 0, 1, 2), Error);
    CHECK_THROWS_AS(norm2d({1, 1}, 1, 1, 2), Error);
}

TEST_CASE("unit sphere points match the closed-form parametrization") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (double l1 : {2.0, 3.0, 5.0}) {
            for (int i = 0; i <= 20; ++i) {
                const auto pt = unit_sphere_point(i / 20.0, 1.0, l1, p);
                CHECK(norm2d(pt, 1.0, l1, p) == doctest::Approx(1.0).epsilon(1e-12));
                if (pt.u >= 0 && pt.v >= 0) {
                    // first quadrant: ‖(u,v)‖ = 1 solves to v = (λ1 (1 - u^p)^{1/p} - λ0 u) / (λ1 - λ0)
                    const double v = (l1 * std::pow(1 - std::pow(pt.u, p), 1 / p) - pt.u) / (l1 - 1.0);
                    CHECK(pt.v == doctest::Approx(v).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("closed forms") {
    CHECK(cnj2_exact(1, 2).value == doctest::Approx(1 + 1 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(james2_exact(1, 2).value == doctest::Approx(std::sqrt(2 + 2 / std::sqrt(5.0))).epsilon(1e-15));
    for (double q0 : {0.5, 1.0, 2.0}) {
        for (double q1 : {0.25, 1.0, 3.0}) {
            const double expect = 1 + q0 / std::sqrt(2 * q0 * q0 + 2 * q0 * q1 + q1 * q1);
            CHECK(cnj2_exact(q0, q0 + q1).value == doctest::Approx(expect).epsilon(1e-14));
            const double j = james2_exact(q0, q0 + q1).value;
            CHECK(j * j == doctest::Approx(2 * cnj2_exact(q0, q0 + q1).value).epsilon(1e-14));
        }
    }
    CHECK(cnj2_exact(1e-8, 1).value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_THROWS_AS(cnj2_exact(2, 1), Error);
    CHECK_THROWS_AS(james2_exact(-1, 1), Error);
}

TEST_CASE("numeric estimates are lower bounds near the closed forms") {
    const auto c = cnj2_numeric(1, 2, 2);
    CHECK(c.value >= 1.4452);
    CHECK(c.value <= cnj2_exact(1, 2).value + 1e-12);
    CHECK(c.certify.lo <= c.certify.hi);
    const auto j = james2_numeric(1, 2, 2);
    CHECK(j.value >= james2_exact(1, 2).value - 2e-3);
    CHECK(j.value <= james2_exact(1, 2).value + 1e-12);
    CHECK(james2_numeric(1, 3, 3).value <= 2.0);
    CHECK(cnj2_numeric(1, 3, 1.5).value <= 2.0);
    CHECK(james2_objective({2 / std::sqrt(5.0), 0}, {0, 2}, 1, 2, 2) ==
          doctest::Approx(james2_exact(1, 2).value).epsilon(1e-14));
}

TEST_CASE("numeric estimates are deterministic and grow with the grid") {
    OptimizerConfig cfg;
    cfg.grid = 16;
    cfg.refine = 0;
    cfg.restarts = 0;
    double prev = 0.0;
    for (std::size_t g : {8u, 16u, 32u, 64u}) {
        cfg.grid = g;
        const double v = cnj2_numeric(1, 2, 3, cfg).value;
        CHECK(v >= prev);
        prev = v;
    }
    OptimizerConfig seeded;
    seeded.grid = 32;
    seeded.seed = 42;
    const auto a = james2_numeric(1, 2.5, 1.7, seeded);
    const auto b = james2_numeric(1, 2.5, 1.7, seeded);
    CHECK(a.value == b.value);
    CHECK(a.argmax == b.argmax);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("objective symmetry") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double p = 1.2 + 3 * t(rng);
        const auto x = unit_sphere_point(t(rng), 1, 2.5, p);
        const auto y = unit_sphere_point(t(rng), 1, 2.5, p);
        const TwoDimPoint ny{-y.u, -y.v};
        const TwoDimPoint nx{-x.u, -x.v};
        const double j = james2_objective(x, y, 1, 2.5, p);
        CHECK(james2_objective(y, x, 1, 2.5, p) == doctest::Approx(j).epsilon(1e-14));
        CHECK(james2_objective(x, ny, 1, 2.5, p) == doctest::Approx(j).epsilon(1e-14));
        CHECK(james2_objective(nx, y, 1, 2.5, p) == doctest::Approx(j).epsilon(1e-14));
        const double c = cnj2_objective(x, y, 1, 2.5, p);
        CHECK(cnj2_objective(y, x, 1, 2.5, p) == doctest::Approx(c).epsilon(1e-14));
        CHECK(cnj2_objective(x, ny, 1, 2.5, p) == doctest::Approx(c).epsilon(1e-14));
        CHECK(j <= 2.0 + 1e-12);
        CHECK(c <= 2.0 + 1e-12);
    }
}

TEST_CASE("psi route") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double l0 = 0.1 + u(rng);
        const double l1 = l0 + 0.1 + 3 * u(rng);
        const double p = 1.05 + 0.95 * u(rng);
        CHECK(psi(0.0, l0, l1, p) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(psi(1.0, l0, l1, p) == doctest::Approx(1.0).epsilon(1e-14));
        for (int i = 0; i <= 10000; i += 7) {
            const double t = i / 10000.0;
            CHECK(psi(t, l0, l1, p) >= std::pow(std::pow(1 - t, p) + std::pow(t, p), 1 / p) - 1e-14);
        }
    }
    CHECK(psi2(0.5) == doctest::Approx(std::sqrt(0.5)));
    CHECK(cnj_from_psi(1, 2, 2).value == doctest::Approx(1 + 1 / std::sqrt(5.0)).epsilon(1e-6));
    CHECK(cnj_from_psi(1, 3, 2).value == doctest::Approx(1 + 1 / std::sqrt(10.0)).epsilon(1e-6));
    CHECK_FALSE(cnj_from_psi(1, 2, 1.5).out_of_hypothesis);
    CHECK(cnj_from_psi(1, 2, 3).out_of_hypothesis);
    CHECK_THROWS_AS(psi(1.5, 1, 2, 2), Error);
    CHECK_THROWS_AS(psi(-0.1, 1, 2, 2), Error);
}

TEST_CASE("sup-norm constructions") {
    const auto c = LambdaWeights::cesaro();
    const auto j = james_inf_pair(c, 98);
    CHECK(j.value == 1.99);
    CHECK(j.supnorm_sum == 1.99);
    CHECK(j.supnorm_alternating == 1.99);
    for (double s : j.unit_supnorms) CHECK(s == 1.0);
    const auto n = jns_inf(c, 3, 997);
    CHECK(n.value == 2.997);
    CHECK(n.supnorm_sum == doctest::Approx(2.997).epsilon(1e-15));
    CHECK(jns_inf(c, 2, 98).value == j.value);
    double prev = 0;
    for (std::size_t m : {1u, 10u, 100u, 1000u, 100000u}) {
        const double v = jns_inf(LambdaWeights::power(1.5), 4, m).value;
        CHECK(v > prev);
        CHECK(v <= 4.0);
        prev = v;
    }
    CHECK(prev > 3.99);
}

TEST_CASE("finite-p constructions") {
    const auto c = LambdaWeights::cesaro();
    double prev = 0.0;
    for (std::size_t m : {10u, 100u, 1000u, 10000u}) {
        const auto b = james_pair_construction(c, 2.0, m);
        CHECK(b.lower_bound >= prev);
        CHECK(b.lower_bound <= 2.0);
        CHECK(b.direct.hi <= 2.0);
        CHECK(b.direct.lo >= b.lower_bound - 1e-9);
        prev = b.lower_bound;
    }
    CHECK(prev >= 1.999);
    const auto n = jns_construction(c, 2.0, 3, 10000);
    CHECK(n.lower_bound >= 2.99);
    CHECK(n.lower_bound <= 3.0);
    CHECK(james_pair_construction(LambdaWeights::power(1.5), 3.0, 500).lower_bound <= 2.0);
    CHECK_THROWS_AS(james_pair_construction(LambdaWeights::custom({1, 2, 3, 4}), 2.0, 1), Error);
    CHECK_THROWS_AS(jns_construction(c, 2.0, 1, 10), Error);
}
