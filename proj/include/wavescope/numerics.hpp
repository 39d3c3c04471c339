#pragma once

#include <functional>
#include <vector>

#include "wavescope/errors.hpp"

namespace wavescope::num {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

double norm(const Vec2& v);

// Symmetric 2x2 matrices appear as Hessians; general ones as Jacobians.
struct Mat2 {
    double xx{0.0};
    double xy{0.0};
    double yx{0.0};
    double yy{0.0};

    double det() const { return xx * yy - xy * yx; }
};

// Trigonometric helpers with guarded evaluation near poles. cot and coth
// return huge finite values instead of inf when the denominator underflows,
// which keeps feasibility scans total.
double cot(double x);
double coth(double x);

// Principal branch with range (0, pi).
double arccot(double x);

enum class RootMethod { Bisection, Newton, Hybrid };

struct RootResult {
    double x{0.0};
    double residual{0.0};
    int iterations{0};
    RootMethod method{RootMethod::Bisection};
};

// Bisection on [lo, hi]. Requires a sign change; throws NumericalError
// ("no sign change") otherwise. Stops when |f(x)| <= tol or the bracket
// width contracts below tol.
RootResult bracket_root(const std::function<double(double)>& f, double lo, double hi,
                        double tol);

// Newton iteration safeguarded by the bracket: any iterate leaving [lo, hi]
// falls back to bisection. The bifurcation and stagnation functions are
// smooth but have poles (cot), so brackets are mandatory.
RootResult bracket_root(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo, double hi,
                        double tol);

struct Root2dResult {
    Vec2 p;
    double residual{0.0};
    int iterations{0};
};

// Damped Newton on F(p) = 0 with an analytic Jacobian. Throws
// NumericalError on a singular Jacobian (|det J| < 1e-14) or divergence.
Root2dResult newton_2d(const std::function<Vec2(Vec2)>& f,
                       const std::function<Mat2(Vec2)>& jacobian, Vec2 seed, double tol,
                       int max_iter);

struct OdeStepResult {
    Vec2 state;
    double dt_taken{0.0}; // may be smaller than requested after rejections
    double dt_next{0.0};
    double error{0.0};
};

// One accepted step of an embedded Cash-Karp 4(5) pair. Rejected trial
// steps are halved internally (so dt_taken <= dt); dt_next stays within
// [dt/10, 5*dt] of the requested step. Throws NumericalError
// ("step underflow") below dt_min = 1e-12.
OdeStepResult adaptive_ode_step(const std::function<Vec2(Vec2)>& rhs, Vec2 state,
                                double dt, double tol);

// Uniform scalar grid, row-major: values[j * nx + i] sampled at
// (x0 + i*dx, y0 + j*dy).
struct Grid2D {
    int nx{0};
    int ny{0};
    double x0{0.0};
    double y0{0.0};
    double dx{0.0};
    double dy{0.0};
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<size_t>(j) * nx + i]; }
    double x(int i) const { return x0 + i * dx; }
    double y(int j) const { return y0 + j * dy; }
};

struct ContourSet {
    double level{0.0};
    std::vector<std::vector<Vec2>> polylines;
    int nx{0};
    int ny{0};
};

// Linear-interpolation marching squares. The ambiguous saddle cell is
// resolved by the cell-center average. Output polylines are chained and
// deterministic; closed loops repeat their first vertex at the end.
ContourSet marching_squares(const Grid2D& grid, double level);

} // namespace wavescope::num
