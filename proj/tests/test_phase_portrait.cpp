#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "support.hpp"
#include "wavescope/phase_portrait.hpp"

using namespace wavescope;
using testsupport::kPi;

namespace {

HamiltonianField reference_field(double lambda = 4.39) {
    return HamiltonianField(WaveParameters::make(-20.0, lambda, 0.05));
}

} // namespace

TEST_CASE("Hamiltonian gradient reproduces the velocity field (property)") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    std::uniform_real_distribution<double> ys(0.05, 0.95);
    const double h = 1e-4;
    for (auto cls : testsupport::kAllClasses) {
        for (int i = 0; i < 5; ++i) {
            const HamiltonianField f(testsupport::random_params(cls, rng));
            for (int k = 0; k < 100; ++k) {
                const double x = xs(rng), y = ys(rng);
                const auto v = f.velocity(x, y);
                const double hy =
                    (f.hamiltonian(x, y + h) - f.hamiltonian(x, y - h)) / (2.0 * h);
                const double hx =
                    (f.hamiltonian(x + h, y) - f.hamiltonian(x - h, y)) / (2.0 * h);
                CHECK(std::abs(hy - v.x) < 1e-6);
                CHECK(std::abs(-hx - v.y) < 1e-6);
            }
        }
    }
}

TEST_CASE("analytic Hessian matches finite differences") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    std::uniform_real_distribution<double> ys(0.05, 0.95);
    const double h = 1e-4;
    for (auto cls : testsupport::kAllClasses) {
        const HamiltonianField f(testsupport::random_params(cls, rng));
        for (int k = 0; k < 50; ++k) {
            const double x = xs(rng), y = ys(rng);
            const auto m = f.hessian(x, y);
            const double hxx = (f.hamiltonian(x + h, y) - 2.0 * f.hamiltonian(x, y) +
                                f.hamiltonian(x - h, y)) /
                               (h * h);
            const double hyy = (f.hamiltonian(x, y + h) - 2.0 * f.hamiltonian(x, y) +
                                f.hamiltonian(x, y - h)) /
                               (h * h);
            const double hxy = (f.hamiltonian(x + h, y + h) - f.hamiltonian(x + h, y - h) -
                                f.hamiltonian(x - h, y + h) + f.hamiltonian(x - h, y - h)) /
                               (4.0 * h * h);
            const double scale = std::max(1.0, f.hamiltonian_range());
            CHECK(std::abs(m.xx - hxx) / scale < 1e-5);
            CHECK(std::abs(m.yy - hyy) / scale < 1e-5);
            CHECK(std::abs(m.xy - hxy) / scale < 1e-5);
            CHECK(m.xy == m.yx);
        }
    }
}

TEST_CASE("layer decomposition for the reference wave") {
    const auto layers = decompose_layers(reference_field());
    REQUIRE(layers.size() == 2);
    const double y_star = kPi / std::sqrt(19.0);
    CHECK(layers[0].y_low == 0.0);
    CHECK(layers[0].y_high == doctest::Approx(y_star).epsilon(1e-14));
    CHECK(layers[1].y_low == doctest::Approx(y_star).epsilon(1e-14));
    CHECK(layers[1].y_high == 1.0);
}

TEST_CASE("non-oscillatory classes have a single layer") {
    std::mt19937 rng(44);
    for (auto cls : {WaveClass::W2, WaveClass::W3, WaveClass::W4}) {
        const HamiltonianField f(testsupport::random_params(cls, rng));
        const auto layers = decompose_layers(f);
        REQUIRE(layers.size() == 1);
        CHECK(layers[0].y_low == 0.0);
        CHECK(layers[0].y_high == 1.0);
    }
}

TEST_CASE("infinity isocline passes through (pi/2, y*) and satisfies U = 0") {
    const auto field = reference_field();
    const double y_star = 0.7208476309816649;
    const auto branch = trace_infinity_isocline(field, y_star);
    REQUIRE(branch.samples.size() > 100);
    CHECK(branch.kind == IsoclineKind::Infinity);
    CHECK(branch.anchor_level == y_star);

    bool hits_half_pi = false;
    for (const auto& p : branch.samples) {
        CHECK(std::abs(field.velocity(p.x, p.y).x) < 1e-9);
        CHECK(std::abs(p.y - y_star) <= branch.max_deviation + 1e-12);
        if (std::abs(p.x - kPi / 2) < 1e-9) {
            hits_half_pi = true;
            CHECK(p.y == doctest::Approx(y_star).epsilon(1e-9));
        }
    }
    CHECK(hits_half_pi);
    CHECK(branch.max_deviation > 0.0);
    CHECK(branch.max_deviation < 0.1);
    CHECK(!branch.crosses_bed);
}

TEST_CASE("the lower isocline oscillates between the X = 0 and X = pi zeros") {
    const auto field = reference_field();
    const auto branch = trace_infinity_isocline(field, 0.018366157877592323);
    CHECK(!branch.crosses_bed);
    // Extremes sit at the critical-point heights on the two axis lines.
    double lo = 1e300, hi = -1e300;
    for (const auto& p : branch.samples) {
        lo = std::min(lo, p.y);
        hi = std::max(hi, p.y);
    }
    CHECK(lo == doctest::Approx(0.0027135774616006527).epsilon(1e-6));
    CHECK(hi == doctest::Approx(0.033849480181638497).epsilon(1e-6));
}

TEST_CASE("the lower infinity isocline dips below the bed at lambda = 4.45") {
    // Here |U0(0)| < eps theta1, so the isocline meets and crosses Y = 0.
    const auto field = reference_field(4.45);
    const double y_star = 1.0 - 4.45 / std::sqrt(20.0);
    const auto branch = trace_infinity_isocline(field, y_star);
    CHECK(branch.crosses_bed);
    const double y_min =
        std::min_element(branch.samples.begin(), branch.samples.end(),
                         [](const num::Vec2& a, const num::Vec2& b) { return a.y < b.y; })
            ->y;
    CHECK(y_min < 0.0);
}

TEST_CASE("critical points of the reference wave (fig. 3 left analogue)") {
    const auto set = find_critical_points(reference_field());
    REQUIRE(set.points.size() == 6);
    // Sorted by (y, x): bed-layer saddle and center, then the upper layer.
    const auto& p = set.points;
    CHECK(p[0].kind == CriticalKind::Saddle);
    CHECK(std::abs(p[0].x) < 1e-12);
    CHECK(p[1].kind == CriticalKind::Center);
    CHECK(p[1].x == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(p[2].kind == CriticalKind::Center);
    CHECK(std::abs(p[2].x) < 1e-12);

    // Saddles flanking the common-zero height, frozen coordinates.
    CHECK(p[3].kind == CriticalKind::Saddle);
    CHECK(p[4].kind == CriticalKind::Saddle);
    CHECK(p[3].x == doctest::Approx(-1.5633256596177754).epsilon(1e-9));
    CHECK(p[4].x == doctest::Approx(1.5633256596177754).epsilon(1e-9));
    CHECK(p[3].y == doctest::Approx(kPi / std::sqrt(19.0)).epsilon(1e-12));
    CHECK(p[3].provenance == CriticalProvenance::LayerBoundaryLine);

    CHECK(p[5].kind == CriticalKind::Center);
    CHECK(p[5].x == doctest::Approx(kPi).epsilon(1e-12));

    for (const auto& cp : set.points) {
        CHECK(num::norm({reference_field().velocity(cp.x, cp.y).x,
                         reference_field().velocity(cp.x, cp.y).y}) < 1e-9);
    }
}

TEST_CASE("critical point mirror symmetry in X") {
    std::mt19937 rng(45);
    for (auto cls : testsupport::kAllClasses) {
        const HamiltonianField f(testsupport::random_params(cls, rng));
        const auto set = find_critical_points(f);
        for (const auto& cp : set.points) {
            if (std::abs(cp.x) < 1e-9 || std::abs(cp.x - kPi) < 1e-9) continue;
            const bool mirrored =
                std::any_of(set.points.begin(), set.points.end(), [&](const auto& q) {
                    return std::abs(q.x + cp.x) < 1e-8 && std::abs(q.y - cp.y) < 1e-8;
                });
            CHECK(mirrored);
        }
    }
}

TEST_CASE("epsilon = 0 yields no isolated critical points, with a warning") {
    const HamiltonianField f(WaveParameters::make(-20.0, 4.39, 0.0));
    const auto set = find_critical_points(f);
    CHECK(set.points.empty());
    REQUIRE(!set.warnings.empty());
}

TEST_CASE("streamline closes around a center and conserves H") {
    const auto field = reference_field();
    // Next to the upper-layer center at (0, ~0.705).
    const auto sl = integrate_streamline(field, {0.15, 0.705}, 200.0, 1e-10);
    CHECK(sl.closed);
    CHECK(sl.h_drift < 1e-7);
    CHECK(sl.warning.empty());
    REQUIRE(sl.points.size() > 10);
}

TEST_CASE("fast streamlines in the bulk conserve H too") {
    std::mt19937 rng(46);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    for (auto cls : testsupport::kAllClasses) {
        const HamiltonianField f(testsupport::random_params(cls, rng));
        for (int k = 0; k < 3; ++k) {
            const auto sl = integrate_streamline(f, {xs(rng), 0.45}, 50.0, 1e-10, 1e9);
            CHECK(sl.h_drift < 1e-7);
        }
    }
}

TEST_CASE("merge sweep finds the saddle-center collision (frozen root)") {
    const auto result = sweep_merge_tracking(-20.0, 0.05, 4.30, 4.60, 31);
    CHECK(result.samples.size() == 31);
    REQUIRE(result.merge_lambdas.size() == 1);
    // The off-axis saddle is born at lambda = 4.369271219239735 when the
    // lower-layer saddle at X = 0 splits; bisection is to 1e-4.
    CHECK(std::abs(result.merge_lambdas[0] - 4.369271219239735) < 2e-4);
    REQUIRE(result.pi_half_saddle_lo.has_value());
    // The saddle crosses X = pi/2 at lambda = 4.390522554936490.
    CHECK(*result.pi_half_saddle_lo <= 4.390522554936490);
    CHECK(*result.pi_half_saddle_hi >= 4.390522554936490);
}

TEST_CASE("sweep samples below the feasibility boundary are flagged") {
    const auto result = sweep_merge_tracking(-20.0, 0.05, 4.30, 4.60, 31);
    for (const auto& s : result.samples) {
        CHECK(s.feasible == (bifurcation_rhs(-20.0, s.lambda) > 0.0));
        if (!s.feasible) CHECK(s.points.empty());
    }
}

TEST_CASE("hamiltonian_range bounds sampled values") {
    const auto field = reference_field();
    const double range = field.hamiltonian_range();
    CHECK(range > 0.0);
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    std::uniform_real_distribution<double> ys(0.0, 1.1);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 2000; ++i) {
        const double h = field.hamiltonian(xs(rng), ys(rng));
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    CHECK(hi - lo <= range * 1.001);
}
