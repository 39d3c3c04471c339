#include <cmath>
#include <random>

#include <doctest.h>

#include "wavescope/numerics.hpp"

using namespace wavescope;
using namespace wavescope::num;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("cot and coth agree with the naive formulas away from poles") {
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> dist(0.2, 2.9);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng);
        CHECK(cot(x) == doctest::Approx(std::cos(x) / std::sin(x)).epsilon(1e-14));
        CHECK(coth(x) == doctest::Approx(std::cosh(x) / std::sinh(x)).epsilon(1e-14));
    }
}

TEST_CASE("cot stays finite at poles") {
    CHECK(std::isfinite(cot(0.0)));
    CHECK(std::isfinite(cot(kPi)));
    CHECK(std::isfinite(coth(0.0)));
    CHECK(std::abs(cot(1e-320)) >= 1e250);
}

TEST_CASE("arccot has range (0, pi) and inverts cot") {
    CHECK(arccot(0.0) == doctest::Approx(kPi / 2));
    CHECK(arccot(1.0) == doctest::Approx(kPi / 4));
    CHECK(arccot(-1.0) == doctest::Approx(3 * kPi / 4));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        const double t = arccot(x);
        CHECK(t > 0.0);
        CHECK(t < kPi);
        CHECK(cot(t) == doctest::Approx(x).epsilon(1e-9));
    }
}

TEST_CASE("bisection finds the cosine root") {
    auto r = bracket_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-12);
    CHECK(r.x == doctest::Approx(kPi / 2).epsilon(1e-11));
    CHECK(std::abs(r.residual) <= 1e-12);
}

TEST_CASE("bisection rejects a bracket without a sign change") {
    CHECK_THROWS_AS(bracket_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    NumericalError);
}

TEST_CASE("safeguarded Newton beats plain bisection on iterations") {
    auto f = [](double x) { return x * x * x - 2.0; };
    auto df = [](double x) { return 3.0 * x * x; };
    auto newton = bracket_root(f, df, 1.0, 2.0, 1e-14);
    auto bisect = bracket_root(f, 1.0, 2.0, 1e-14);
    CHECK(newton.x == doctest::Approx(std::cbrt(2.0)).epsilon(1e-13));
    CHECK(newton.iterations < bisect.iterations);
}

TEST_CASE("safeguarded Newton survives a bad derivative by falling back") {
    // Derivative lies: Newton steps shoot out of the bracket every time.
    auto f = [](double x) { return std::cos(x); };
    auto df = [](double) { return 1e-9; };
    auto r = bracket_root(f, df, 1.0, 2.0, 1e-10);
    CHECK(r.x == doctest::Approx(kPi / 2).epsilon(1e-9));
}

TEST_CASE("random quadratics: bracketed root matches the closed form") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(0.5, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double r0 = dist(rng);
        auto f = [&](double x) { return (x - r0) * (x + 3.0); };
        auto r = bracket_root(f, 0.0, 5.0, 1e-13);
        CHECK(r.x == doctest::Approx(r0).epsilon(1e-10));
    }
}

TEST_CASE("newton_2d solves an intersection of circle and line") {
    auto f = [](Vec2 p) -> Vec2 {
        return {p.x * p.x + p.y * p.y - 4.0, p.y - p.x};
    };
    auto jac = [](Vec2 p) -> Mat2 {
        return {2.0 * p.x, 2.0 * p.y, -1.0, 1.0};
    };
    auto r = newton_2d(f, jac, {1.0, 0.5}, 1e-13, 50);
    CHECK(r.p.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.p.y == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.residual <= 1e-13);
}

TEST_CASE("newton_2d throws on a singular Jacobian") {
    auto f = [](Vec2 p) -> Vec2 { return {p.x * p.x, p.y * p.y}; };
    auto jac = [](Vec2) -> Mat2 { return {0.0, 0.0, 0.0, 0.0}; };
    CHECK_THROWS_AS(newton_2d(f, jac, {1.0, 1.0}, 1e-13, 50), NumericalError);
}

TEST_CASE("adaptive step integrates the harmonic oscillator accurately") {
    auto rhs = [](Vec2 s) -> Vec2 { return {s.y, -s.x}; };
    Vec2 state{1.0, 0.0};
    double t = 0.0;
    double dt = 0.1;
    while (t < 2.0 * kPi) {
        dt = std::min(dt, 2.0 * kPi - t);
        auto step = adaptive_ode_step(rhs, state, dt, 1e-12);
        state = step.state;
        t += step.dt_taken;
        dt = step.dt_next;
    }
    CHECK(state.x == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(state.y) <= 1e-8);
}

TEST_CASE("adaptive step growth and shrink are bounded") {
    auto rhs = [](Vec2 s) -> Vec2 { return {s.y, -s.x}; };
    auto step = adaptive_ode_step(rhs, {1.0, 0.0}, 1e-6, 1e-3); // easy: wants growth
    CHECK(step.dt_next <= 5.0 * 1e-6 + 1e-18);
    CHECK(step.dt_next >= 1e-6 / 10.0 - 1e-18);
}

TEST_CASE("adaptive step throws on underflow") {
    // Wildly oscillatory right-hand side: the error estimate never drops
    // below tol no matter how far the step is halved.
    auto rhs = [](Vec2 s) -> Vec2 {
        return {1e6 * std::sin(1e14 * s.x + s.y), 1.0};
    };
    CHECK_THROWS_WITH_AS(adaptive_ode_step(rhs, {1.0, 0.0}, 1e-2, 1e-12),
                         doctest::Contains("step underflow"), NumericalError);
}

namespace {

Grid2D circle_grid(int n) {
    Grid2D g;
    g.nx = g.ny = n;
    g.x0 = g.y0 = -2.0;
    g.dx = g.dy = 4.0 / (n - 1);
    g.values.resize(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double x = g.x(i), y = g.y(j);
            g.values[static_cast<size_t>(j) * n + i] = x * x + y * y;
        }
    }
    return g;
}

} // namespace

TEST_CASE("marching squares extracts one closed loop from a circle field") {
    const auto g = circle_grid(201);
    const auto c = marching_squares(g, 1.0);
    REQUIRE(c.polylines.size() == 1);
    const auto& loop = c.polylines.front();
    CHECK(loop.size() > 100);
    CHECK(loop.front().x == loop.back().x);
    CHECK(loop.front().y == loop.back().y);
    for (const auto& p : loop) {
        CHECK(std::sqrt(p.x * p.x + p.y * p.y) == doctest::Approx(1.0).epsilon(2e-4));
    }
}

TEST_CASE("marching squares is exact on fields linear along grid lines") {
    Grid2D g;
    g.nx = g.ny = 33;
    g.x0 = g.y0 = 0.0;
    g.dx = g.dy = 1.0 / 32;
    g.values.resize(33 * 33);
    for (int j = 0; j < 33; ++j) {
        for (int i = 0; i < 33; ++i) {
            g.values[static_cast<size_t>(j) * 33 + i] = g.x(i) + 2.0 * g.y(j);
        }
    }
    const auto c = marching_squares(g, 0.7);
    REQUIRE(!c.polylines.empty());
    size_t total = 0;
    for (const auto& poly : c.polylines) {
        total += poly.size();
        for (const auto& p : poly) {
            CHECK(p.x + 2.0 * p.y == doctest::Approx(0.7).epsilon(1e-12));
        }
    }
    CHECK(total > 30);
}

TEST_CASE("marching squares misses nothing: empty off-range, present in-range") {
    const auto g = circle_grid(64);
    CHECK(marching_squares(g, -1.0).polylines.empty());
    CHECK(marching_squares(g, 100.0).polylines.empty());
    CHECK(!marching_squares(g, 2.0).polylines.empty());
}

TEST_CASE("marching squares output is deterministic") {
    const auto g = circle_grid(101);
    const auto a = marching_squares(g, 1.5);
    const auto b = marching_squares(g, 1.5);
    REQUIRE(a.polylines.size() == b.polylines.size());
    for (size_t k = 0; k < a.polylines.size(); ++k) {
        REQUIRE(a.polylines[k].size() == b.polylines[k].size());
        for (size_t i = 0; i < a.polylines[k].size(); ++i) {
            CHECK(a.polylines[k][i].x == b.polylines[k][i].x);
            CHECK(a.polylines[k][i].y == b.polylines[k][i].y);
        }
    }
}
