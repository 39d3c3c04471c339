#include "wavescope/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>

namespace wavescope::num {

double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

namespace {
constexpr double kPoleGuard = 1e-300;
}

double cot(double x) {
    const double s = std::sin(x);
    if (std::abs(s) < kPoleGuard) {
        return std::copysign(1e300, std::cos(x) * (s >= 0.0 ? 1.0 : -1.0));
    }
    return std::cos(x) / s;
}

double coth(double x) {
    const double s = std::sinh(x);
    if (std::abs(s) < kPoleGuard) {
        return std::copysign(1e300, x);
    }
    return std::cosh(x) / s;
}

double arccot(double x) { return std::atan2(1.0, x); }

RootResult bracket_root(const std::function<double(double)>& f, double lo, double hi,
                        double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("bracket_root: tol must be positive");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0, RootMethod::Bisection};
    if (fhi == 0.0) return {hi, 0.0, 0, RootMethod::Bisection};
    if (flo * fhi > 0.0) {
        throw NumericalError("bracket_root: no sign change on the given interval");
    }
    int iter = 0;
    double mid = 0.5 * (lo + hi);
    double fmid = f(mid);
    while (hi - lo > tol && std::abs(fmid) > tol && iter < 200) {
        if (flo * fmid <= 0.0) {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
        mid = 0.5 * (lo + hi);
        fmid = f(mid);
        ++iter;
    }
    return {mid, fmid, iter, RootMethod::Bisection};
}

RootResult bracket_root(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo, double hi,
                        double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("bracket_root: tol must be positive");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0, RootMethod::Hybrid};
    if (fhi == 0.0) return {hi, 0.0, 0, RootMethod::Hybrid};
    if (flo * fhi > 0.0) {
        throw NumericalError("bracket_root: no sign change on the given interval");
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    int iter = 0;
    while (std::abs(fx) > tol && hi - lo > std::numeric_limits<double>::epsilon() *
                                              (std::abs(lo) + std::abs(hi) + 1.0) &&
           iter < 200) {
        // Keep the bracket current.
        if (flo * fx <= 0.0) {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        const double d = df(x);
        double next = (d != 0.0) ? x - fx / d : lo - 1.0;
        if (!(next > lo) || !(next < hi)) {
            next = 0.5 * (lo + hi); // Newton left the bracket
        }
        x = next;
        fx = f(x);
        ++iter;
    }
    return {x, fx, iter, RootMethod::Hybrid};
}

Root2dResult newton_2d(const std::function<Vec2(Vec2)>& f,
                       const std::function<Mat2(Vec2)>& jacobian, Vec2 seed, double tol,
                       int max_iter) {
    Vec2 p = seed;
    Vec2 r = f(p);
    double res = norm(r);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (res <= tol) {
            return {p, res, iter};
        }
        const Mat2 j = jacobian(p);
        const double det = j.det();
        if (std::abs(det) < 1e-14) {
            throw NumericalError("newton_2d: singular jacobian");
        }
        const Vec2 step{(j.yy * r.x - j.xy * r.y) / det, (j.xx * r.y - j.yx * r.x) / det};
        // Backtracking line search on the residual norm.
        double t = 1.0;
        Vec2 q;
        Vec2 fq;
        double qres = 0.0;
        bool improved = false;
        for (int ls = 0; ls < 8; ++ls) {
            q = p - step * t;
            fq = f(q);
            qres = norm(fq);
            if (qres < res) {
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved) {
            throw NumericalError("newton_2d: diverged");
        }
        p = q;
        r = fq;
        res = qres;
    }
    if (res <= tol) {
        return {p, res, max_iter};
    }
    throw NumericalError("newton_2d: diverged (max iterations)");
}

namespace {

// Cash-Karp tableau.
constexpr double kC[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double kA[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0},
    {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double kB5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
constexpr double kB4[6] = {2825.0 / 27648,  0, 18575.0 / 48384, 13525.0 / 55296,
                           277.0 / 14336, 1.0 / 4};

struct TrialStep {
    Vec2 state;
    double error;
};

TrialStep cash_karp_trial(const std::function<Vec2(Vec2)>& rhs, const Vec2& y, double dt) {
    std::array<Vec2, 6> k;
    k[0] = rhs(y);
    for (int i = 1; i < 6; ++i) {
        Vec2 arg = y;
        for (int j = 0; j < i; ++j) {
            arg = arg + k[j] * (dt * kA[i][j]);
        }
        k[i] = rhs(arg);
    }
    (void)kC;
    Vec2 y5 = y;
    Vec2 err{0.0, 0.0};
    for (int i = 0; i < 6; ++i) {
        y5 = y5 + k[i] * (dt * kB5[i]);
        err = err + k[i] * (dt * (kB5[i] - kB4[i]));
    }
    return {y5, norm(err)};
}

} // namespace

OdeStepResult adaptive_ode_step(const std::function<Vec2(Vec2)>& rhs, Vec2 state,
                                double dt, double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("adaptive_ode_step: tol must be positive");
    }
    constexpr double kDtMin = 1e-12;
    const double dt_in = dt;
    for (;;) {
        if (std::abs(dt) < kDtMin) {
            throw NumericalError("adaptive_ode_step: step underflow");
        }
        const TrialStep trial = cash_karp_trial(rhs, state, dt);
        if (trial.error <= tol) {
            double grow = (trial.error > 0.0)
                              ? 0.9 * std::pow(tol / trial.error, 0.2)
                              : 5.0;
            grow = std::clamp(grow, 0.1, 5.0);
            // dt_next keeps the sign of the incoming step and stays within
            // [|dt_in|/10, 5*|dt_in|].
            const double dt_next = std::copysign(
                std::clamp(std::abs(dt) * grow, std::abs(dt_in) / 10.0,
                           std::abs(dt_in) * 5.0),
                dt_in);
            return {trial.state, dt, dt_next, trial.error};
        }
        dt *= 0.5;
    }
}

namespace {

// A contour vertex lives on a grid edge; identify it by the edge so that
// chaining uses exact keys instead of floating-point coordinates.
// axis 0: edge from (i,j) to (i+1,j); axis 1: edge from (i,j) to (i,j+1).
struct EdgeKey {
    int i;
    int j;
    int axis;
    bool operator<(const EdgeKey& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        return axis < o.axis;
    }
    bool operator==(const EdgeKey& o) const {
        return i == o.i && j == o.j && axis == o.axis;
    }
};

Vec2 edge_point(const Grid2D& g, const EdgeKey& e, double level) {
    const double va = g.at(e.i, e.j);
    const double vb = (e.axis == 0) ? g.at(e.i + 1, e.j) : g.at(e.i, e.j + 1);
    double t = (vb != va) ? (level - va) / (vb - va) : 0.5;
    t = std::clamp(t, 0.0, 1.0);
    if (e.axis == 0) {
        return {g.x(e.i) + t * g.dx, g.y(e.j)};
    }
    return {g.x(e.i), g.y(e.j) + t * g.dy};
}

} // namespace

ContourSet marching_squares(const Grid2D& grid, double level) {
    if (grid.nx < 2 || grid.ny < 2) {
        throw ValidationError("marching_squares: grid must be at least 2x2");
    }
    ContourSet out;
    out.level = level;
    out.nx = grid.nx;
    out.ny = grid.ny;

    using Segment = std::pair<EdgeKey, EdgeKey>;
    std::vector<Segment> segments;

    auto above = [&](double v) { return v >= level; };

    for (int j = 0; j + 1 < grid.ny; ++j) {
        for (int i = 0; i + 1 < grid.nx; ++i) {
            const double v00 = grid.at(i, j);
            const double v10 = grid.at(i + 1, j);
            const double v01 = grid.at(i, j + 1);
            const double v11 = grid.at(i + 1, j + 1);
            int code = 0;
            if (above(v00)) code |= 1;
            if (above(v10)) code |= 2;
            if (above(v11)) code |= 4;
            if (above(v01)) code |= 8;
            if (code == 0 || code == 15) continue;

            const EdgeKey bottom{i, j, 0};
            const EdgeKey top{i, j + 1, 0};
            const EdgeKey left{i, j, 1};
            const EdgeKey right{i + 1, j, 1};

            auto emit = [&](EdgeKey a, EdgeKey b) { segments.emplace_back(a, b); };

            switch (code) {
                case 1: case 14: emit(left, bottom); break;
                case 2: case 13: emit(bottom, right); break;
                case 3: case 12: emit(left, right); break;
                case 4: case 11: emit(right, top); break;
                case 6: case 9:  emit(bottom, top); break;
                case 7: case 8:  emit(left, top); break;
                case 5: case 10: {
                    const double center = 0.25 * (v00 + v10 + v01 + v11);
                    const bool center_above = above(center);
                    // code 5: corners (0,0) and (1,1) above.
                    const bool diag = (code == 5);
                    if (diag == center_above) {
                        emit(left, top);
                        emit(bottom, right);
                    } else {
                        emit(left, bottom);
                        emit(right, top);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Chain segments into polylines via edge adjacency.
    std::multimap<EdgeKey, size_t> by_edge;
    for (size_t s = 0; s < segments.size(); ++s) {
        by_edge.emplace(segments[s].first, s);
        by_edge.emplace(segments[s].second, s);
    }
    std::vector<bool> used(segments.size(), false);

    auto take_next = [&](const EdgeKey& e, size_t skip) -> long {
        auto [lo, hi] = by_edge.equal_range(e);
        for (auto it = lo; it != hi; ++it) {
            if (!used[it->second] && it->second != skip) {
                return static_cast<long>(it->second);
            }
        }
        return -1;
    };

    for (size_t s = 0; s < segments.size(); ++s) {
        if (used[s]) continue;
        used[s] = true;
        std::vector<EdgeKey> chain{segments[s].first, segments[s].second};
        // Extend forward.
        for (;;) {
            long n = take_next(chain.back(), s);
            if (n < 0) break;
            used[n] = true;
            const auto& seg = segments[n];
            chain.push_back(seg.first == chain.back() ? seg.second : seg.first);
            if (chain.back() == chain.front()) break;
        }
        // Extend backward unless already closed.
        if (!(chain.back() == chain.front())) {
            for (;;) {
                long n = take_next(chain.front(), s);
                if (n < 0) break;
                used[n] = true;
                const auto& seg = segments[n];
                chain.insert(chain.begin(),
                             seg.first == chain.front() ? seg.second : seg.first);
                if (chain.back() == chain.front()) break;
            }
        }
        std::vector<Vec2> poly;
        poly.reserve(chain.size());
        for (const auto& e : chain) {
            poly.push_back(edge_point(grid, e, level));
        }
        out.polylines.push_back(std::move(poly));
    }
    return out;
}

} // namespace wavescope::num
