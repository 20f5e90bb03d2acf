#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lseq/error.hpp"
#include "lseq/extreme.hpp"

using namespace lseq;

namespace {

const double kUnit = std::sqrt(6.0) / std::numbers::pi;

FiniteSequence random_x(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> v(-10.0, 10.0);
    std::uniform_int_distribution<std::size_t> idx(0, 25);
    FiniteSequence x;
    const std::size_t count = 2 + rng() % 10;
    while (x.support_size() < count) x.set(idx(rng), v(rng));
    return x;
}

ExponentSeq random_p(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> e(1.1, 4.0);
    std::vector<double> pre(rng() % 8);
    for (auto& q : pre) q = e(rng);
    return ExponentSeq(pre, e(rng));
}

void check_witness(const Witness& wit, const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p) {
    CHECK(wit.y + wit.z == x.scaled(2.0));
    CHECK(x.scaled(2.0) - wit.y == wit.z);
    CHECK_FALSE(wit.y == wit.z);
    CHECK(modular(wit.y, w, p).bracket.hi < 1.0);
    CHECK(modular(wit.z, w, p).bracket.hi < 1.0);
}

} // namespace

TEST_CASE("unit basis vector is extreme") {
    const auto c = LambdaWeights::cesaro();
    const auto two = ExponentSeq::constant(2.0);
    const auto v = extreme_check(FiniteSequence::basis(0, kUnit), c, two);
    CHECK(v.verdict == Verdict::Extreme);
    CHECK(v.on_sphere_modular);
    CHECK(v.affine_card == 0);
    CHECK(v.modular.contains(1.0));
}

TEST_CASE("points off the sphere") {
    const auto c = LambdaWeights::cesaro();
    const auto two = ExponentSeq::constant(2.0);
    try {
        (void)extreme_check(FiniteSequence{}, c, two);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotOnSphere);
    }
    CHECK_THROWS_AS(extreme_check(FiniteSequence::basis(0, 0.5), c, two), Error);
    // inside the norm tolerance but outside the modular band
    const auto v = extreme_check(FiniteSequence::basis(0, kUnit * (1 - 1e-6)), c, two, 1e-5, 1e-8);
    CHECK(v.verdict == Verdict::NotExtremeModular);
    CHECK_FALSE(v.on_sphere_modular);
}

TEST_CASE("affine intervals") {
    CHECK_FALSE(in_affine_interior(0.5, 2.0));
    CHECK(in_affine_interior(0.5, 1.0));
    CHECK_FALSE(in_affine_interior(0.0, 1.0));
    const auto c = LambdaWeights::cesaro();
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const auto x = random_x(rng);
        CHECK(affine_interval_card(x, c, ExponentSeq::constant(2.0)) == 0);
        CHECK(affine_interval_card(x, c, random_p(rng)) == 0);
    }
    CHECK(affine_interval_card(FiniteSequence{}, c, ExponentSeq::constant(2.0)) == 0);
    // exponent one on every index: each support point except the last is counted
    const auto x = FiniteSequence::parse("0:1,3:1,7:2");
    CHECK(affine_interval_card(x, c, [](std::size_t) { return 1.0; }) == 2);
    CHECK(affine_interval_card(x, c, [](std::size_t n) { return n < 3 ? 1.0 : 2.0; }) == 1);
}

TEST_CASE("witness for a point inside the ball") {
    const auto c = LambdaWeights::cesaro();
    const auto two = ExponentSeq::constant(2.0);
    FiniteSequence x = FiniteSequence::basis(0, 0.5 * kUnit);
    x.set(3, 0.1);
    const auto wit = non_extreme_witness(x, c, two);
    check_witness(wit, x, c, two);
    CHECK(wit.method == WitnessMethod::TailCutoff);
    CHECK(wit.cutoff <= 2);

    try {
        (void)non_extreme_witness(FiniteSequence::basis(0, 0.5), c, two);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WitnessUnavailable);
    }
    // on the sphere there is no modular budget to spend
    const auto y = FiniteSequence::parse("0:1,2:1");
    const auto u = y.scaled(1.0 / luxemburg(y, c, two, 1e-12).mid());
    CHECK_THROWS_AS(non_extreme_witness(u, c, two), Error);
}

TEST_CASE("witnesses are sound and consistent with the verdict") {
    std::mt19937_64 rng(32);
    const LambdaWeights fams[] = {LambdaWeights::cesaro(), LambdaWeights::power(1.5)};
    for (int i = 0; i < 40; ++i) {
        const auto& w = fams[i % 2];
        const auto p = random_p(rng);
        const auto raw = random_x(rng);
        const double r = luxemburg(raw, w, p, 1e-12).mid();
        const auto x = raw.scaled(0.8 / r);
        const auto wit = non_extreme_witness(x, w, p);
        check_witness(wit, x, w, p);
        const auto v = extreme_check(x, w, p, 0.25);
        CHECK(v.verdict != Verdict::Extreme);
        CHECK(extreme_check(raw.scaled(1.0 / r), w, p).verdict == Verdict::Extreme);
    }
}

TEST_CASE("uniform Kadec-Klee arithmetic") {
    const auto d = ukk_delta(0.4, 2.0);
    CHECK(d.eta == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(d.delta == doctest::Approx(1 - std::sqrt(0.99)).epsilon(1e-14));
    CHECK((1 - d.delta) * (1 - d.delta) == doctest::Approx(0.99).epsilon(1e-15));
    for (double eps : {1e-6, 0.1, 0.5, 0.999}) {
        for (double ps : {1.001, 2.0, 6.0}) {
            const auto u = ukk_delta(eps, ps);
            CHECK(0.0 < u.delta);
            CHECK(u.delta < u.eta);
            CHECK(std::fabs(std::pow(1 - u.delta, ps) - (1 - u.eta)) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(ukk_delta(0.0, 2.0), Error);
    CHECK_THROWS_AS(ukk_delta(1.0, 2.0), Error);
    CHECK_THROWS_AS(ukk_delta(0.5, 1.0), Error);
    CHECK(superadditivity_check(1, 1, 2));
    CHECK(superadditivity_check(0, 3, 2.5));
    CHECK(superadditivity_check(2, 0, 1));
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> uv(0.0, 50.0), pe(1.0, 8.0);
    for (int i = 0; i < 10000; ++i) CHECK(superadditivity_check(uv(rng), uv(rng), pe(rng)));
}
