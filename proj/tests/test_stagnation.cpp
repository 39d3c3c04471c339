#include <cmath>
#include <random>

#include <doctest.h>

#include "support.hpp"
#include "wavescope/stagnation.hpp"

using namespace wavescope;
using testsupport::kPi;

TEST_CASE("reference stagnation levels at alpha0 = -20, lambda = 4.39") {
    const auto p = WaveParameters::make(-20.0, 4.39, 0.05);
    const auto levels = stagnation_levels(p);
    REQUIRE(levels.size() == 2);
    // Frozen roots of U0 on [0, 1] (bisection against the closed form).
    CHECK(levels[0].y0 == doctest::Approx(0.018366157877592323).epsilon(1e-12));
    CHECK(levels[1].y0 == doctest::Approx(0.7208476309816649).epsilon(1e-12));
    CHECK(levels[0].multiplicity_index == 0);
    CHECK(levels[1].multiplicity_index == 1);
    CHECK(levels[0].feasible);
    CHECK(levels[1].feasible);
    CHECK(zero_count(p) == 2);
}

TEST_CASE("the lower level leaves the domain for lambda > theta0") {
    const auto p = WaveParameters::make(-20.0, 4.60, 0.05);
    const auto levels = stagnation_levels(p);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].y0 == doctest::Approx(1.0 + (kPi - 4.60) / std::sqrt(20.0))
                              .epsilon(1e-12));
}

TEST_CASE("closed-form levels are genuine zeros of U0 (property)") {
    std::mt19937 rng(101);
    for (auto cls : testsupport::kAllClasses) {
        for (int i = 0; i < 10; ++i) {
            const auto p = testsupport::random_params(cls, rng);
            const auto levels = stagnation_levels(p);
            for (const auto& level : levels) {
                CHECK(level.y0 >= -1e-12);
                CHECK(level.y0 <= 1.0 + 1e-12);
                const double scale = std::max(1.0, std::abs(p.amplitude()));
                CHECK(std::abs(p.background_current(level.y0)) / scale < 1e-10);
            }
        }
    }
}

TEST_CASE("zero count matches a sign-change scan of U0 (oracle)") {
    std::mt19937 rng(202);
    for (auto cls : testsupport::kAllClasses) {
        for (int i = 0; i < 10; ++i) {
            const auto p = testsupport::random_params(cls, rng);
            int changes = 0;
            const int n = 20000;
            double prev = p.background_current(0.0);
            for (int k = 1; k <= n; ++k) {
                const double cur = p.background_current(static_cast<double>(k) / n);
                if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) ++changes;
                prev = cur;
            }
            // The scan can only miss tangential zeros; the closed form cannot.
            CHECK(zero_count(p) >= changes);
            CHECK(zero_count(p) <= changes + 1);
        }
    }
}

TEST_CASE("W4 threshold puts the single zero exactly on the bed") {
    const double alpha0 = 4.0;
    const double lmin = class4_lambda_threshold(alpha0);
    CHECK(lmin == doctest::Approx(2.1661797072993003).epsilon(1e-12));

    const auto at = WaveParameters::make(alpha0, lmin, 0.0);
    CHECK(std::abs(at.background_current(0.0)) < 1e-9);
    const auto levels = stagnation_levels(at);
    REQUIRE(levels.size() == 1);
    CHECK(std::abs(levels[0].y0) < 1e-10);

    const auto below = WaveParameters::make(alpha0, lmin - 1e-3, 0.0);
    CHECK(stagnation_levels(below).empty());
    CHECK_THROWS_AS(class4_lambda_threshold(-2.0), ValidationError);
}

TEST_CASE("W4 zero height is monotone in lambda^2 and bounded by the closure") {
    for (double alpha0 : {0.5, 4.0, 25.0}) {
        const double t0 = std::sqrt(alpha0);
        const double t1 = std::sqrt(alpha0 + 1.0);
        const double bound =
            1.0 - std::atanh(t0 / (t1 * (std::cosh(t1) / std::sinh(t1)))) / t0;
        const double lmin = class4_lambda_threshold(alpha0);
        double prev = -1.0;
        for (int i = 0; i < 100; ++i) {
            const double lambda = lmin * std::pow(10.0, 3.0 * i / 99.0);
            const auto levels =
                stagnation_levels(WaveParameters::make(alpha0, lambda, 0.0));
            REQUIRE(levels.size() == 1);
            CHECK(levels[0].y0 >= prev - 1e-14);
            CHECK(levels[0].y0 < bound);
            prev = levels[0].y0;
        }
    }
}

TEST_CASE("W2 feasible band is [0, 1 - pi/4]") {
    const auto bands = feasible_region_sample({-1.0}, 64);
    REQUIRE(bands.size() == 1);
    CHECK(!bands[0].empty);
    CHECK(std::abs(bands[0].y0_min) < 1e-10);
    CHECK(bands[0].y0_max == doctest::Approx(1.0 - kPi / 4).epsilon(1e-10));
}

TEST_CASE("region samples carry valid lambda certificates") {
    const auto bands = feasible_region_sample({-5.0, -1.0, 1.0, 10.0, 100.0}, 48);
    REQUIRE(bands.size() == 5);
    double prev_max = -1.0;
    for (const auto& b : bands) {
        CHECK(!b.empty);
        CHECK(b.y0_max > prev_max);
        prev_max = b.y0_max;
        CHECK(!b.samples.empty());
        for (const auto& s : b.samples) {
            const auto p = WaveParameters::make(b.alpha0, s.lambda, 0.0);
            const double scale = std::max(1.0, std::abs(p.amplitude()));
            CHECK(std::abs(p.background_current(s.y0)) / scale < 1e-10);
        }
    }
    CHECK(bands.back().y0_max > 0.69); // alpha0 = 100 already well on its way to 1
}

TEST_CASE("deep W1 band reports multiple zeros per lambda") {
    const auto bands = feasible_region_sample({-20.0}, 32);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].multi_zero);
    CHECK(!bands[0].empty);
    for (const auto& s : bands[0].samples) {
        const auto p = WaveParameters::make(-20.0, s.lambda, 0.0);
        const double scale = std::max(1.0, std::abs(p.amplitude()));
        CHECK(std::abs(p.background_current(s.y0)) / scale < 1e-10);
    }
}
