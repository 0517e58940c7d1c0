#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fgp/errors.hpp"
#include "fgp/genfn.hpp"

#include "support.hpp"

using namespace fgp;
using testsupport::random_simplex;

TEST_CASE("entropy: uniform point") {
    const std::vector<double> x(4, 0.25);
    const GenFnEval e = evaluate(GenFnSpec{GenFnKind::entropy, 1.0}, x);
    CHECK(e.value == doctest::Approx(1.3862943611198906).epsilon(1e-15)); // log 4
    for (const double g : e.grad) CHECK(g == doctest::Approx(0.3862943611198906).epsilon(1e-15)); // log 4 - 1
}

TEST_CASE("entropy: spot value") {
    const std::vector<double> x{0.5, 0.3, 0.2};
    const GenFnEval e = evaluate(GenFnSpec{GenFnKind::entropy, 1.0}, x);
    CHECK(e.value == doctest::Approx(1.0296530140645735).epsilon(1e-15));
    CHECK(e.grad[0] == doctest::Approx(-std::log(0.5) - 1.0).epsilon(1e-15));
}

TEST_CASE("quadratic: spot values") {
    const GenFnEval e = evaluate(GenFnSpec{GenFnKind::quadratic, 1.0}, std::vector<double>{0.5, 0.5});
    CHECK(e.value == 0.75); // 1 - 0.5 * 0.5, exact in binary
    CHECK(e.grad[0] == -0.5);
    CHECK(e.grad[1] == -0.5);
}

TEST_CASE("calibration pins the initial value to 1") {
    SUBCASE("uniform point, known constant") {
        const std::vector<double> x(4, 0.25);
        const GenFnSpec cal = calibrate_normalization(GenFnSpec{GenFnKind::entropy, 1.0}, x);
        CHECK(cal.normalization == doctest::Approx(1.3862943611198906).epsilon(1e-15));
        CHECK(evaluate(cal, x).value == 1.0); // g / g is exactly 1
    }
    SUBCASE("100 random points, both kinds") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            const std::vector<double> x = random_simplex(rng, 2 + trial % 7);
            for (const GenFnKind kind : {GenFnKind::entropy, GenFnKind::quadratic}) {
                const GenFnSpec cal = calibrate_normalization(GenFnSpec{kind, 1.0}, x);
                CHECK(evaluate(cal, x).value == doctest::Approx(1.0).epsilon(1e-14));
                // oracle: recompute the unnormalized value independently
                const double raw = kind == GenFnKind::entropy ? static_cast<double>(testsupport::entropy_ld(x))
                                                              : static_cast<double>(testsupport::quadratic_ld(x));
                CHECK(cal.normalization == doctest::Approx(raw).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("normalization divides value and gradient linearly") {
    std::mt19937_64 rng(7);
    const std::vector<double> x = random_simplex(rng, 5);
    for (const GenFnKind kind : {GenFnKind::entropy, GenFnKind::quadratic}) {
        const GenFnEval base = evaluate(GenFnSpec{kind, 1.0}, x);
        const GenFnEval scaled = evaluate(GenFnSpec{kind, 2.0}, x);
        CHECK(scaled.value == base.value / 2.0); // power-of-two division, exact
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(scaled.grad[i] == base.grad[i] / 2.0);

        const GenFnEval scaled3 = evaluate(GenFnSpec{kind, 3.0}, x);
        CHECK(scaled3.value == doctest::Approx(base.value / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("gradient matches central finite differences along simplex tangents") {
    // Perturbing along e_i - e_j keeps the point on the simplex, so the
    // public evaluate() can serve as its own finite-difference oracle:
    // [G(x + h(e_i - e_j)) - G(x - h(e_i - e_j))] / 2h ~ grad_i - grad_j.
    // Interior points (floored simplex draws) keep entropy's truncation
    // error well below the tolerance.
    std::mt19937_64 rng(2718);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 3 + trial % 6;
        const std::vector<double> x = random_simplex(rng, k, 0.3); // components >= ~0.3/(k*1.3)
        for (const GenFnKind kind : {GenFnKind::entropy, GenFnKind::quadratic}) {
            const GenFnSpec spec{kind, 1.7};
            const GenFnEval e = evaluate(spec, x);
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = (i + 1 + rng() % (k - 1)) % k; // any j != i
                std::vector<double> xp = x, xm = x;
                xp[i] += h, xp[j] -= h;
                xm[i] -= h, xm[j] += h;
                const double fd = (evaluate(spec, xp).value - evaluate(spec, xm).value) / (2.0 * h);
                REQUIRE(std::abs((e.grad[i] - e.grad[j]) - fd) <= 1e-6);
            }
        }
    }
}

TEST_CASE("concavity along random chords") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 2 + trial % 8;
        const std::vector<double> x = random_simplex(rng, k);
        const std::vector<double> y = random_simplex(rng, k);
        const double lambda = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::vector<double> mid(k);
        for (std::size_t i = 0; i < k; ++i) mid[i] = lambda * x[i] + (1.0 - lambda) * y[i];
        for (const GenFnKind kind : {GenFnKind::entropy, GenFnKind::quadratic}) {
            const GenFnSpec spec{kind, 1.0};
            const double lhs = evaluate(spec, mid).value;
            const double rhs = lambda * evaluate(spec, x).value + (1.0 - lambda) * evaluate(spec, y).value;
            CHECK(lhs >= rhs - 1e-12);
        }
    }
}

TEST_CASE("positivity on the open simplex") {
    std::mt19937_64 rng(161803);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> x = random_simplex(rng, 2 + trial % 10);
        CHECK(evaluate(GenFnSpec{GenFnKind::entropy, 1.0}, x).value > 0.0);
        const double q = evaluate(GenFnSpec{GenFnKind::quadratic, 1.0}, x).value;
        CHECK(q > 0.5 - 1e-12);
        CHECK(q < 1.0);
    }
}

TEST_CASE("domain errors") {
    const GenFnSpec spec{GenFnKind::entropy, 1.0};
    CHECK_THROWS_AS(evaluate(spec, std::vector<double>{}), NumericError);
    CHECK_THROWS_AS(evaluate(spec, std::vector<double>{0.5, 0.5, 0.0}), NumericError);
    CHECK_THROWS_AS(evaluate(spec, std::vector<double>{0.7, -0.2, 0.5}), NumericError);
    CHECK_THROWS_AS(evaluate(spec, std::vector<double>{0.5, 0.4}), NumericError); // sums to 0.9
    CHECK_THROWS_AS(evaluate(GenFnSpec{GenFnKind::entropy, 0.0}, std::vector<double>{0.5, 0.5}), NumericError);
    CHECK_THROWS_AS(evaluate(GenFnSpec{GenFnKind::entropy, -1.0}, std::vector<double>{0.5, 0.5}), NumericError);
}

TEST_CASE("kind parsing round-trips") {
    CHECK(parse_genfn_kind("entropy") == GenFnKind::entropy);
    CHECK(parse_genfn_kind("quadratic") == GenFnKind::quadratic);
    CHECK_FALSE(parse_genfn_kind("geometric").has_value());
    CHECK(to_string(GenFnKind::entropy) == "entropy");
    CHECK(to_string(GenFnKind::quadratic) == "quadratic");
}
