#include "wavescope/phase_portrait.hpp"

#include <algorithm>
#include <cmath>

namespace wavescope {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroTol = 1e-10;      // |(U,V)| at reported critical points
constexpr double kDegenerateTol = 1e-12; // |det Hessian|
} // namespace

const char* to_string(CriticalKind k) {
    switch (k) {
        case CriticalKind::Center: return "center";
        case CriticalKind::Saddle: return "saddle";
        case CriticalKind::Degenerate: return "degenerate";
    }
    return "?";
}

const char* to_string(CriticalProvenance p) {
    return p == CriticalProvenance::InfinityIsoclineAtNPi ? "on_infinity_isocline_at_n_pi"
                                                          : "common_zero_at_half_pi";
}

const char* to_string(IsoclineKind k) {
    switch (k) {
        case IsoclineKind::ZeroVertical: return "zero_isocline_vertical";
        case IsoclineKind::ZeroHorizontal: return "zero_isocline_horizontal";
        case IsoclineKind::Infinity: return "infinity_isocline";
    }
    return "?";
}

double HamiltonianField::hamiltonian(double x, double y) const {
    return params_.epsilon() * std::cos(x) * params_.shape(y) +
           params_.current_antiderivative(y);
}

num::Vec2 HamiltonianField::velocity(double x, double y) const {
    const VelocitySample s = params_.velocity(x, y);
    return {s.u, s.v};
}

num::Mat2 HamiltonianField::hessian(double x, double y) const {
    const double eps = params_.epsilon();
    num::Mat2 h;
    h.xx = -eps * std::cos(x) * params_.shape(y);
    h.xy = -eps * std::sin(x) * params_.shape_derivative(y);
    h.yx = h.xy;
    h.yy = eps * std::cos(x) * params_.shape_second_derivative(y) +
           params_.background_current_derivative(y);
    return h;
}

num::Mat2 HamiltonianField::velocity_jacobian(double x, double y) const {
    const double eps = params_.epsilon();
    num::Mat2 j;
    j.xx = -eps * std::sin(x) * params_.shape_derivative(y);                 // dU/dX
    j.xy = params_.background_current_derivative(y) +
           eps * std::cos(x) * params_.shape_second_derivative(y);           // dU/dY
    j.yx = eps * std::cos(x) * params_.shape(y);                             // dV/dX
    j.yy = eps * std::sin(x) * params_.shape_derivative(y);                  // dV/dY
    return j;
}

double HamiltonianField::hamiltonian_range() const {
    const double y_top = 1.0 + 2.0 * params_.epsilon();
    double lo = hamiltonian(-kPi, 0.0);
    double hi = lo;
    for (int j = 0; j <= 32; ++j) {
        const double y = y_top * j / 32.0;
        for (int i = 0; i <= 64; ++i) {
            const double x = -kPi + 2.0 * kPi * i / 64.0;
            const double h = hamiltonian(x, y);
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
    }
    return std::max(hi - lo, 1e-15);
}

std::vector<Layer> decompose_layers(const HamiltonianField& field) {
    const auto& p = field.params();
    std::vector<double> bounds;
    if (p.wave_class() == WaveClass::W1) {
        for (int m = 1;; ++m) {
            const double y = m * kPi / p.theta1();
            if (y >= 1.0) break;
            bounds.push_back(y);
        }
    }
    std::vector<Layer> layers;
    double prev = 0.0;
    for (double b : bounds) {
        layers.push_back({prev, b});
        prev = b;
    }
    layers.push_back({prev, 1.0});
    return layers;
}

IsoclineBranch trace_infinity_isocline(const HamiltonianField& field, double y_star,
                                       int n_samples) {
    const auto& p = field.params();
    if (std::abs(p.background_current(y_star)) > 1e-8) {
        throw ValidationError("trace_infinity_isocline: y_star is not a zero of U0");
    }
    if (n_samples < 5) n_samples = 5;
    while ((n_samples - 1) % 4 != 0) ++n_samples; // keep pi/2 on the grid

    IsoclineBranch branch;
    branch.kind = IsoclineKind::Infinity;
    branch.anchor_level = y_star;
    branch.samples.resize(n_samples);

    const double dx = 2.0 * kPi / (n_samples - 1);
    auto x_at = [&](int i) { return -kPi + i * dx; };

    const double eps = p.epsilon();
    if (eps == 0.0) {
        for (int i = 0; i < n_samples; ++i) {
            branch.samples[i] = {x_at(i), y_star};
        }
        return branch;
    }

    auto u = [&](double x, double y) { return field.velocity(x, y).x; };
    auto u_y = [&](double x, double y) {
        return p.background_current_derivative(y) +
               eps * std::cos(x) * p.shape_second_derivative(y);
    };
    auto slope = [&](double x, double y) {
        // dY_inf/dX = eps G'(Y) sin(X) / (U0'(Y) + eps cos(X) G''(Y)).
        return eps * p.shape_derivative(y) * std::sin(x) / u_y(x, y);
    };
    auto correct = [&](double x, double y) {
        for (int it = 0; it < 60; ++it) {
            const double r = u(x, y);
            if (std::abs(r) < 1e-13) {
                if (std::abs(p.background_current_derivative(y)) < 1e-8) {
                    throw NumericalError(
                        "continuation failed: U0' vanishes along the infinity isocline");
                }
                return y;
            }
            const double d = u_y(x, y);
            if (std::abs(d) < 1e-12) {
                throw NumericalError(
                    "continuation failed: implicit function theorem breakdown");
            }
            y -= r / d;
        }
        throw NumericalError("continuation failed: corrector diverged");
    };

    const int i0 = 3 * (n_samples - 1) / 4; // X = pi/2
    branch.samples[i0] = {x_at(i0), correct(x_at(i0), y_star)};
    for (int i = i0 + 1; i < n_samples; ++i) {
        const double yp = branch.samples[i - 1].y;
        const double y_pred = yp + slope(x_at(i - 1), yp) * dx;
        branch.samples[i] = {x_at(i), correct(x_at(i), y_pred)};
    }
    for (int i = i0 - 1; i >= 0; --i) {
        const double yp = branch.samples[i + 1].y;
        const double y_pred = yp - slope(x_at(i + 1), yp) * dx;
        branch.samples[i] = {x_at(i), correct(x_at(i), y_pred)};
    }

    for (const auto& s : branch.samples) {
        branch.max_deviation = std::max(branch.max_deviation, std::abs(s.y - y_star));
        if (s.y < 0.0) branch.crosses_bed = true;
    }
    return branch;
}

namespace {

CriticalKind classify(const num::Mat2& hessian) {
    const double det = hessian.det();
    if (std::abs(det) < kDegenerateTol) return CriticalKind::Degenerate;
    return det < 0.0 ? CriticalKind::Saddle : CriticalKind::Center;
}

// Heights where G vanishes in [0, y_top]: the bed plus, for W1, the layer
// boundaries m pi / theta1.
std::vector<double> shape_zero_levels(const WaveParameters& p, double y_top) {
    std::vector<double> levels{0.0};
    if (p.wave_class() == WaveClass::W1) {
        for (int m = 1;; ++m) {
            const double y = m * kPi / p.theta1();
            if (y > y_top) break;
            levels.push_back(y);
        }
    }
    return levels;
}

} // namespace

CriticalPointSet find_critical_points(const HamiltonianField& field) {
    const auto& p = field.params();
    CriticalPointSet result;
    if (p.epsilon() == 0.0) {
        result.warnings.push_back(
            "laminar flow; critical points are non-isolated lines Y = Y*");
        return result;
    }

    const double y_top = 1.0 + 2.0 * p.epsilon();
    auto add_point = [&](double x, double y, CriticalProvenance prov) {
        // Polish with Newton on (U, V) = 0 and the analytic Jacobian.
        try {
            const auto r = num::newton_2d(
                [&](num::Vec2 q) { return field.velocity(q.x, q.y); },
                [&](num::Vec2 q) { return field.velocity_jacobian(q.x, q.y); },
                {x, y}, 1e-12, 50);
            x = r.p.x;
            y = r.p.y;
        } catch (const NumericalError&) {
            if (num::norm(field.velocity(x, y)) > kZeroTol) {
                result.warnings.push_back("dropped candidate critical point (polish failed)");
                return;
            }
        }
        // Normalize to the window (-pi, pi]; the polisher can land on the
        // -pi alias of a point on X = pi.
        x = std::remainder(x, 2.0 * kPi);
        if (x <= -kPi + 1e-9) x = kPi;
        for (const auto& q : result.points) {
            double dx = std::abs(q.x - x);
            dx = std::min(dx, 2.0 * kPi - dx);
            if (dx < 1e-8 && std::abs(q.y - y) < 1e-8) return;
        }
        CriticalPoint cp;
        cp.x = x;
        cp.y = y;
        cp.hessian = field.hessian(x, y);
        cp.kind = classify(cp.hessian);
        cp.provenance = prov;
        if (cp.kind == CriticalKind::Degenerate) {
            result.warnings.push_back("degenerate critical point (|det Hessian| < 1e-12)");
        }
        result.points.push_back(cp);
    };

    // 1. Vertical 0-isocline lines X = 0 and X = pi: zeros of U(X, .).
    for (double x : {0.0, kPi}) {
        auto f = [&](double y) { return field.velocity(x, y).x; };
        const int n = 4000;
        double prev = f(0.0);
        for (int i = 1; i <= n; ++i) {
            const double y = y_top * i / n;
            const double cur = f(y);
            if (prev == 0.0) {
                add_point(x, y_top * (i - 1) / n, CriticalProvenance::InfinityIsoclineAtNPi);
            } else if (prev * cur < 0.0) {
                const auto root = num::bracket_root(f, y_top * (i - 1) / n, y, 1e-13);
                add_point(x, root.x, CriticalProvenance::InfinityIsoclineAtNPi);
            }
            prev = cur;
        }
    }

    // 2. Horizontal 0-isocline lines G(Y) = 0: U = 0 there requires
    // cos(X) = -U0(Ym) / (eps G'(Ym)).
    for (double ym : shape_zero_levels(p, y_top)) {
        const double gp = p.shape_derivative(ym);
        if (gp == 0.0) continue;
        const double c = -p.background_current(ym) / (p.epsilon() * gp);
        if (std::abs(c) > 1.0 - 1e-13) continue; // endpoint cases live on X = n pi
        const double xs = std::acos(c);
        add_point(xs, ym, CriticalProvenance::LayerBoundaryLine);
        add_point(-xs, ym, CriticalProvenance::LayerBoundaryLine);
    }

    // Safety net: coarse sweep for anything the structure theorem missed.
    {
        const int nx = 48, ny = 32;
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const double x = -kPi + 2.0 * kPi * (i + 0.5) / nx;
                const double y = y_top * (j + 0.5) / ny;
                const num::Vec2 v = field.velocity(x, y);
                if (num::norm(v) > 0.05) continue;
                num::Vec2 root;
                try {
                    root = num::newton_2d(
                               [&](num::Vec2 q) { return field.velocity(q.x, q.y); },
                               [&](num::Vec2 q) { return field.velocity_jacobian(q.x, q.y); },
                               {x, y}, 1e-12, 30)
                               .p;
                } catch (const NumericalError&) {
                    continue;
                }
                if (root.x <= -kPi || root.x > kPi || root.y < -1e-9 || root.y > y_top) {
                    continue;
                }
                bool known = false;
                for (const auto& q : result.points) {
                    double dx = std::abs(q.x - root.x);
                    dx = std::min(dx, 2.0 * kPi - dx);
                    if (dx < 1e-6 && std::abs(q.y - root.y) < 1e-6) {
                        known = true;
                        break;
                    }
                }
                if (!known) {
                    result.warnings.push_back(
                        "critical point not predicted by the structure theorem");
                    add_point(root.x, root.y, CriticalProvenance::InfinityIsoclineAtNPi);
                }
            }
        }
    }

    std::sort(result.points.begin(), result.points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) {
                  if (a.y != b.y) return a.y < b.y;
                  return a.x < b.x;
              });
    return result;
}

Streamline integrate_streamline(const HamiltonianField& field, num::Vec2 start,
                                double t_span, double tol, double max_arc) {
    if (!(tol > 0.0) || !(max_arc > 0.0)) {
        throw ValidationError("integrate_streamline: tol and max_arc must be positive");
    }
    if (!std::isfinite(start.x) || !std::isfinite(start.y)) {
        throw ValidationError("integrate_streamline: start must be finite");
    }
    auto rhs = [&](num::Vec2 s) { return field.velocity(s.x, s.y); };
    const double h0 = field.hamiltonian(start.x, start.y);
    const double scale = field.hamiltonian_range();

    Streamline line;
    line.points.push_back(start);

    num::Vec2 state = start;
    double t = 0.0;
    double dt = std::min(0.01, t_span);
    bool moved = false;
    constexpr double kClosureTol = 1e-6;
    const size_t max_points = 500000;

    while (t < t_span && line.points.size() < max_points) {
        const double speed =
            std::max(num::norm(field.velocity(state.x, state.y)), 1e-12);
        const double step = std::min({dt, t_span - t, max_arc / speed});
        num::OdeStepResult r;
        try {
            r = num::adaptive_ode_step(rhs, state, step, tol);
        } catch (const NumericalError&) {
            line.warning = "step underflow (slow dynamics near a saddle); partial result";
            break;
        }
        const double drift = std::abs(field.hamiltonian(r.state.x, r.state.y) - h0) / scale;
        if (drift > tol && step > 1e-12) {
            dt = step * 0.5; // reject on conservation, not only on local error
            if (dt < 1e-12) {
                line.warning = "step underflow (conservation rejection); partial result";
                break;
            }
            continue;
        }
        const num::Vec2 prev = state;
        t += r.dt_taken;
        state = r.state;
        dt = r.dt_next;
        line.points.push_back(state);
        line.h_drift = std::max(line.h_drift, drift);

        // Closed when the segment just traversed passes through the start
        // (up to the chord deviation of one capped step). Only meaningful
        // once the orbit has left the start and for short segments, and
        // never for the segment that itself begins at the start.
        const bool left_start = moved && num::norm(prev - start) > 100.0 * kClosureTol;
        if (num::norm(state - start) > 100.0 * kClosureTol) moved = true;
        const num::Vec2 d = state - prev;
        const double len2 = d.x * d.x + d.y * d.y;
        if (left_start && len2 > 0.0 && len2 < 0.0025) {
            const double u = std::clamp(
                ((start.x - prev.x) * d.x + (start.y - prev.y) * d.y) / len2, 0.0, 1.0);
            const num::Vec2 closest = prev + d * u;
            if (num::norm(start - closest) <
                std::max(kClosureTol, 0.1 * std::sqrt(len2))) {
                line.points.push_back(start);
                line.closed = true;
                break;
            }
        }
    }
    return line;
}

namespace {

bool is_off_axis_saddle(const CriticalPoint& cp) {
    if (cp.kind != CriticalKind::Saddle) return false;
    const double d = std::min({std::abs(cp.x), std::abs(cp.x - kPi), std::abs(cp.x + kPi)});
    return d > 0.02;
}

bool off_axis_saddle_exists(double alpha0, double epsilon, double lambda) {
    try {
        if (!(bifurcation_rhs(alpha0, lambda) > 0.0)) return false;
        const HamiltonianField field(WaveParameters::make(alpha0, lambda, epsilon));
        const auto set = find_critical_points(field);
        return std::any_of(set.points.begin(), set.points.end(), is_off_axis_saddle);
    } catch (const Error&) {
        return false;
    }
}

} // namespace

MergeSweepResult sweep_merge_tracking(double alpha0, double epsilon, double lambda_lo,
                                      double lambda_hi, int steps) {
    if (classify_regime(alpha0) != WaveClass::W1) {
        throw ValidationError("sweep_merge_tracking: requires class W1 (alpha0 < -1)");
    }
    if (steps < 2) {
        throw ValidationError("sweep_merge_tracking: steps must be >= 2");
    }
    MergeSweepResult result;
    result.samples.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        MergeSweepSample sample;
        sample.lambda = lambda_lo + (lambda_hi - lambda_lo) * i / (steps - 1);
        try {
            if (bifurcation_rhs(alpha0, sample.lambda) > 0.0) {
                const HamiltonianField field(
                    WaveParameters::make(alpha0, sample.lambda, epsilon));
                sample.feasible = true;
                sample.points = find_critical_points(field).points;
            }
        } catch (const Error&) {
            sample.feasible = false;
        }
        result.samples.push_back(std::move(sample));
    }

    for (const auto& s : result.samples) {
        const bool near_pi_half = std::any_of(
            s.points.begin(), s.points.end(), [](const CriticalPoint& cp) {
                return cp.kind == CriticalKind::Saddle &&
                       std::abs(std::abs(cp.x) - kPi / 2.0) < 0.05;
            });
        if (near_pi_half) {
            if (!result.pi_half_saddle_lo) result.pi_half_saddle_lo = s.lambda;
            result.pi_half_saddle_hi = s.lambda;
        }
    }

    // Refine every appearance/disappearance of the off-axis saddle: that is
    // the collision with a center (the classification flips there).
    for (size_t i = 1; i < result.samples.size(); ++i) {
        double lo = result.samples[i - 1].lambda;
        double hi = result.samples[i].lambda;
        const bool plo = off_axis_saddle_exists(alpha0, epsilon, lo);
        const bool phi = off_axis_saddle_exists(alpha0, epsilon, hi);
        if (plo == phi) continue;
        while (hi - lo > 1e-4) {
            const double mid = 0.5 * (lo + hi);
            if (off_axis_saddle_exists(alpha0, epsilon, mid) == plo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        result.merge_lambdas.push_back(0.5 * (lo + hi));
    }
    return result;
}

} // namespace wavescope
