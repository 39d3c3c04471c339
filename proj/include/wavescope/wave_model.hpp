#pragma once

#include <string>

#include "wavescope/errors.hpp"

namespace wavescope {

// The four regimes of the laminar vorticity alpha0. alpha0 = 0 (constant
// vorticity) is out of scope and rejected everywhere.
enum class WaveClass { W1, W2, W3, W4 };

enum class AmplitudeSign { Positive, Negative };

enum class LambdaAdmissibility {
    PaperInterval,  // lambda lies in the class's stated interval
    PositivityOnly, // bifurcation rhs > 0 but lambda outside that interval
    Infeasible
};

const char* to_string(WaveClass c);
const char* to_string(AmplitudeSign s);
const char* to_string(LambdaAdmissibility a);

// W1 <=> alpha0 < -1, W2 <=> alpha0 = -1, W3 <=> -1 < alpha0 < 0,
// W4 <=> alpha0 > 0. Throws ValidationError for alpha0 = 0 or non-finite.
WaveClass classify_regime(double alpha0);

// Right-hand side of the amplitude condition a^{-2} = rhs for W1-W3:
//   W1: sin^2(l) (t1 cot(t1)  - t0 cot(l))
//   W2: sin^2(l) (1           -    cot(l))
//   W3: sin^2(l) (t1 coth(t1) - t0 cot(l))
// Throws ValidationError for W4 (its amplitude is a closed form, not an
// inverse square).
double bifurcation_rhs(double alpha0, double lambda);

// Amplitude a of the background current. W1-W3: sign * rhs^{-1/2}, throws
// NumericalError("infeasible lambda") when rhs <= 0. W4: the closed form
// (l^2 t1 coth(t1) - 1) / (l t0), sign ignored; throws for lambda = 0.
double bifurcation_amplitude(double alpha0, double lambda,
                             AmplitudeSign sign = AmplitudeSign::Positive);

double lower_lambda_bound(double alpha0); // interval left endpoint, W1-W3

LambdaAdmissibility admissible_lambda(double alpha0, double lambda);

struct VelocitySample {
    double x{0.0};
    double y{0.0};
    double u{0.0}; // U = u - c
    double v{0.0};
};

// One wave: (alpha0, lambda, epsilon) plus the derived quantities. The
// single source of truth consumed by everything downstream. Immutable.
class WaveParameters {
public:
    static WaveParameters make(double alpha0, double lambda, double epsilon,
                               AmplitudeSign sign = AmplitudeSign::Positive);

    double alpha0() const { return alpha0_; }
    double lambda() const { return lambda_; }
    double epsilon() const { return epsilon_; }
    double theta0() const { return theta0_; }
    double theta1() const { return theta1_; }
    double amplitude() const { return amplitude_; }
    WaveClass wave_class() const { return class_; }
    AmplitudeSign amplitude_sign() const { return sign_; }
    LambdaAdmissibility admissibility() const { return admissibility_; }

    // Background current U0 and its derivatives.
    double background_current(double y) const;
    double background_current_derivative(double y) const;
    double background_current_second_derivative(double y) const;

    // Antiderivative A(y) = int_0^y U0, A(0) = 0, in closed form.
    double current_antiderivative(double y) const;

    // Vertical shape G: sin(t1 y) | y | sinh(t1 y). Also the generator f
    // of the reduced second-order problem.
    double shape(double y) const;
    double shape_derivative(double y) const;
    double shape_second_derivative(double y) const;

    // First-order velocity field (U, V) at (x, y).
    VelocitySample velocity(double x, double y) const;

private:
    WaveParameters() = default;

    double alpha0_{0.0};
    double lambda_{0.0};
    double epsilon_{0.0};
    double theta0_{0.0};
    double theta1_{0.0};
    double amplitude_{0.0};
    WaveClass class_{WaveClass::W1};
    AmplitudeSign sign_{AmplitudeSign::Positive};
    LambdaAdmissibility admissibility_{LambdaAdmissibility::Infeasible};
};

// -f''(y) + (alpha0 + 1) f(y) for the class generator f, with f'' computed
// by fourth-order central differences (h = 1e-3). Vanishes analytically;
// the numerical value is a consistency probe.
double sturm_residual(const WaveParameters& params, double y);

} // namespace wavescope
