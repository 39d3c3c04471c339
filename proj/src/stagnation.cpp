#include "wavescope/stagnation.hpp"

#include <algorithm>
#include <cmath>

#include "wavescope/numerics.hpp"

namespace wavescope {

namespace {
constexpr double kPi = 3.14159265358979323846;

// W4: height of the single zero, or nullopt-like flag through `ok`.
bool class4_zero(double theta0, double theta1, double lambda, double* y0) {
    const double denom = lambda * lambda * theta1 * num::coth(theta1) - 1.0;
    if (!(denom > 0.0)) return false;
    const double t = lambda * lambda * theta0 / denom;
    if (!(t < 1.0)) return false;
    const double y = 1.0 - std::atanh(t) / theta0;
    if (y < -1e-12 || y > 1.0) return false;
    *y0 = std::max(y, 0.0);
    return true;
}

} // namespace

std::vector<StagnationLevel> stagnation_levels(const WaveParameters& params) {
    std::vector<StagnationLevel> out;
    const double t0 = params.theta0();
    const double lam = params.lambda();
    const bool feasible = params.admissibility() != LambdaAdmissibility::Infeasible;

    if (params.wave_class() == WaveClass::W4) {
        double y0 = 0.0;
        if (class4_zero(t0, params.theta1(), lam, &y0)) {
            out.push_back({y0, lam, 0, feasible});
        }
        return out;
    }

    // W1-W3: U0 = a sin(t0 (y-1) + lambda) (t0 = 1 for W2), zeros at
    // y = 1 + (n pi - lambda)/t0.
    const int n_lo = static_cast<int>(std::ceil((lam - t0) / kPi - 1e-12));
    const int n_hi = static_cast<int>(std::floor(lam / kPi + 1e-12));
    int index = 0;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double y = 1.0 + (n * kPi - lam) / t0;
        if (y < -1e-12 || y > 1.0 + 1e-12) continue;
        out.push_back({std::clamp(y, 0.0, 1.0), lam, index++, feasible});
    }
    std::sort(out.begin(), out.end(),
              [](const StagnationLevel& a, const StagnationLevel& b) { return a.y0 < b.y0; });
    for (size_t i = 0; i < out.size(); ++i) {
        out[i].multiplicity_index = static_cast<int>(i);
    }
    return out;
}

int zero_count(const WaveParameters& params) {
    return static_cast<int>(stagnation_levels(params).size());
}

double class4_lambda_threshold(double alpha0) {
    if (!(alpha0 > 0.0)) {
        throw ValidationError("class4_lambda_threshold: alpha0 must be positive");
    }
    const double t0 = std::sqrt(alpha0);
    const double t1 = std::sqrt(alpha0 + 1.0);
    const double d = t1 * num::coth(t1) - t0 * num::coth(t0);
    return 1.0 / std::sqrt(d);
}

namespace {

RegionBand single_zero_band(double alpha0, int resolution) {
    // Classes with U0 = a sin(t0 (y-1) + lambda): the attainable heights
    // come from lambda in (lower bound, min(t0, pi)].
    RegionBand band;
    band.alpha0 = alpha0;
    const double t0 = std::sqrt(std::abs(alpha0));
    const double lo = lower_lambda_bound(alpha0);
    const double hi = std::min(t0, kPi);
    if (!(hi > lo)) {
        return band; // empty
    }
    band.empty = false;
    band.y0_min = 1.0 - hi / t0;
    band.y0_max = 1.0 - lo / t0;
    for (int i = 0; i < resolution; ++i) {
        const double lam = hi - (hi - lo) * i / resolution;
        double rhs = 0.0;
        try {
            rhs = bifurcation_rhs(alpha0, lam);
        } catch (const Error&) {
            continue;
        }
        if (!(rhs > 0.0)) continue;
        const double y0 = 1.0 - lam / t0;
        band.samples.push_back({lam, y0});
    }
    std::sort(band.samples.begin(), band.samples.end(),
              [](const RegionSample& a, const RegionSample& b) { return a.lambda < b.lambda; });
    return band;
}

RegionBand multi_zero_band(double alpha0, int resolution) {
    // alpha0 < -1 - pi^2: several zeros per lambda; enumerate numerically
    // over the positivity set without a single-zero certificate.
    RegionBand band;
    band.alpha0 = alpha0;
    band.multi_zero = true;
    const int n = resolution * 8;
    for (int i = 1; i < n; ++i) {
        const double lam = 2.0 * kPi * i / n;
        double rhs = 0.0;
        try {
            rhs = bifurcation_rhs(alpha0, lam);
        } catch (const Error&) {
            continue;
        }
        if (!(rhs > 0.0)) continue;
        const auto params = WaveParameters::make(alpha0, lam, 0.0);
        for (const auto& level : stagnation_levels(params)) {
            band.samples.push_back({lam, level.y0});
        }
    }
    if (!band.samples.empty()) {
        band.empty = false;
        auto [mn, mx] = std::minmax_element(
            band.samples.begin(), band.samples.end(),
            [](const RegionSample& a, const RegionSample& b) { return a.y0 < b.y0; });
        band.y0_min = mn->y0;
        band.y0_max = mx->y0;
    }
    return band;
}

RegionBand class4_band(double alpha0, int resolution) {
    RegionBand band;
    band.alpha0 = alpha0;
    const double t0 = std::sqrt(alpha0);
    const double t1 = std::sqrt(alpha0 + 1.0);
    const double lam_min = class4_lambda_threshold(alpha0);
    band.empty = false;
    band.y0_min = 0.0;
    // Supremum over lambda (approached, never attained): the closure bound.
    band.y0_max = 1.0 - std::atanh(t0 / (t1 * num::coth(t1))) / t0;
    for (int i = 0; i < resolution; ++i) {
        // Log sweep in lambda^2 from the threshold upward.
        const double lam =
            lam_min * std::pow(10.0, 4.0 * i / std::max(resolution - 1, 1));
        double y0 = 0.0;
        if (class4_zero(t0, t1, lam, &y0)) {
            band.samples.push_back({lam, y0});
        }
    }
    return band;
}

} // namespace

std::vector<RegionBand> feasible_region_sample(const std::vector<double>& alpha0_grid,
                                               int resolution) {
    if (resolution < 2) {
        throw ValidationError("feasible_region_sample: resolution must be >= 2");
    }
    std::vector<RegionBand> out;
    out.reserve(alpha0_grid.size());
    for (double alpha0 : alpha0_grid) {
        const WaveClass c = classify_regime(alpha0); // rejects alpha0 = 0
        if (c == WaveClass::W4) {
            out.push_back(class4_band(alpha0, resolution));
        } else if (alpha0 < -1.0 - kPi * kPi) {
            out.push_back(multi_zero_band(alpha0, resolution));
        } else {
            out.push_back(single_zero_band(alpha0, resolution));
        }
    }
    return out;
}

} // namespace wavescope
