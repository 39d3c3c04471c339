#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavescope/numerics.hpp"
#include "wavescope/stagnation.hpp"
#include "wavescope/wave_model.hpp"

namespace wavescope {

// H(X, Y) = eps cos(X) G(Y) + int_0^Y U0, with (U, V) = (H_Y, -H_X).
// Immutable after construction; every method is pure.
class HamiltonianField {
public:
    explicit HamiltonianField(WaveParameters params) : params_(std::move(params)) {}

    const WaveParameters& params() const { return params_; }

    double hamiltonian(double x, double y) const;
    num::Vec2 velocity(double x, double y) const; // (U, V)
    num::Mat2 hessian(double x, double y) const;
    num::Mat2 velocity_jacobian(double x, double y) const;

    // H span over the window [-pi, pi] x [0, 1 + 2 eps]; the scale for
    // relative drift measurements.
    double hamiltonian_range() const;

private:
    WaveParameters params_;
};

enum class CriticalKind { Center, Saddle, Degenerate };

enum class CriticalProvenance {
    InfinityIsoclineAtNPi, // on a vertical 0-isocline X = n pi
    LayerBoundaryLine      // on a horizontal 0-isocline G(Y) = 0
};

const char* to_string(CriticalKind k);
const char* to_string(CriticalProvenance p);

struct CriticalPoint {
    double x{0.0};
    double y{0.0};
    num::Mat2 hessian;
    CriticalKind kind{CriticalKind::Degenerate};
    CriticalProvenance provenance{CriticalProvenance::InfinityIsoclineAtNPi};
};

enum class IsoclineKind { ZeroVertical, ZeroHorizontal, Infinity };

const char* to_string(IsoclineKind k);

struct IsoclineBranch {
    IsoclineKind kind{IsoclineKind::Infinity};
    std::vector<num::Vec2> samples;
    double anchor_level{0.0};   // the Y* it tracks, for infinity branches
    double max_deviation{0.0};  // max |Y_inf - Y*|
    bool crosses_bed{false};    // dips below Y = 0 (clipped when rendered)
};

struct Layer {
    double y_low{0.0};
    double y_high{0.0};
};

// W1: strips between consecutive zeros of sin(t1 Y) in [0, 1], bed and
// surface included. Other classes: the single layer [0, 1].
std::vector<Layer> decompose_layers(const HamiltonianField& field);

// Predictor-corrector continuation of the infinity isocline U(X, .) = 0
// through (pi/2, y_star), sampled over X in [-pi, pi]. Throws
// NumericalError("continuation failed ...") when Newton diverges or
// |U0'(Y_inf)| < 1e-8 along the branch.
IsoclineBranch trace_infinity_isocline(const HamiltonianField& field, double y_star,
                                       int n_samples = 721);

struct CriticalPointSet {
    std::vector<CriticalPoint> points;
    std::vector<std::string> warnings;
};

// All critical points of one period, X in (-pi, pi]. Empty with a warning
// when epsilon = 0 (zeros are non-isolated lines).
CriticalPointSet find_critical_points(const HamiltonianField& field);

struct Streamline {
    std::vector<num::Vec2> points;
    bool closed{false};
    double h_drift{0.0}; // relative to the field's H range
    std::string warning; // "step underflow ..." on partial results
};

// max_arc caps the spatial length of each step; closed-orbit detection is
// reliable only at resolutions finer than the orbit, so pass a large cap
// when only the H-drift matters.
Streamline integrate_streamline(const HamiltonianField& field, num::Vec2 start,
                                double t_span, double tol, double max_arc = 0.02);

struct MergeSweepSample {
    double lambda{0.0};
    bool feasible{false};
    std::vector<CriticalPoint> points;
};

struct MergeSweepResult {
    std::vector<MergeSweepSample> samples;
    // lambdas where an off-axis saddle collides with a center (appears or
    // disappears), refined by bisection to 1e-4.
    std::vector<double> merge_lambdas;
    // lambda interval (within the sweep) where a saddle sits near X = pi/2.
    std::optional<double> pi_half_saddle_lo;
    std::optional<double> pi_half_saddle_hi;
};

// Tracks the upper-layer saddle across a lambda sweep (class W1).
MergeSweepResult sweep_merge_tracking(double alpha0, double epsilon, double lambda_lo,
                                      double lambda_hi, int steps);

} // namespace wavescope
