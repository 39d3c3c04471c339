#include "wavescope/wave_model.hpp"

#include <cmath>

#include "wavescope/numerics.hpp"

namespace wavescope {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(WaveClass c) {
    switch (c) {
        case WaveClass::W1: return "W1";
        case WaveClass::W2: return "W2";
        case WaveClass::W3: return "W3";
        case WaveClass::W4: return "W4";
    }
    return "?";
}

const char* to_string(AmplitudeSign s) {
    return s == AmplitudeSign::Positive ? "positive" : "negative";
}

const char* to_string(LambdaAdmissibility a) {
    switch (a) {
        case LambdaAdmissibility::PaperInterval: return "paper_interval";
        case LambdaAdmissibility::PositivityOnly: return "positivity_only";
        case LambdaAdmissibility::Infeasible: return "infeasible";
    }
    return "?";
}

WaveClass classify_regime(double alpha0) {
    if (!std::isfinite(alpha0)) {
        throw ValidationError("classify_regime: alpha0 must be finite");
    }
    if (alpha0 == 0.0) {
        throw ValidationError(
            "classify_regime: alpha0 = 0 is constant vorticity, out of scope");
    }
    if (alpha0 < -1.0) return WaveClass::W1;
    if (alpha0 == -1.0) return WaveClass::W2;
    if (alpha0 < 0.0) return WaveClass::W3;
    return WaveClass::W4;
}

double bifurcation_rhs(double alpha0, double lambda) {
    const WaveClass c = classify_regime(alpha0);
    const double t0 = std::sqrt(std::abs(alpha0));
    const double t1 = std::sqrt(std::abs(alpha0 + 1.0));
    const double s = std::sin(lambda);
    // sin^2(l) cot(l) = sin(l) cos(l): evaluate without the cot pole.
    switch (c) {
        case WaveClass::W1:
            return s * s * t1 * num::cot(t1) - t0 * s * std::cos(lambda);
        case WaveClass::W2:
            return s * s - s * std::cos(lambda);
        case WaveClass::W3:
            return s * s * t1 * num::coth(t1) - t0 * s * std::cos(lambda);
        case WaveClass::W4:
            throw ValidationError("bifurcation_rhs: W4 amplitude is a closed form");
    }
    return 0.0;
}

double bifurcation_amplitude(double alpha0, double lambda, AmplitudeSign sign) {
    const WaveClass c = classify_regime(alpha0);
    if (!std::isfinite(lambda)) {
        throw ValidationError("bifurcation_amplitude: lambda must be finite");
    }
    if (c == WaveClass::W4) {
        if (lambda == 0.0) {
            throw NumericalError("bifurcation_amplitude: lambda zero (class W4)");
        }
        const double t0 = std::sqrt(alpha0);
        const double t1 = std::sqrt(alpha0 + 1.0);
        return (lambda * lambda * t1 * num::coth(t1) - 1.0) / (lambda * t0);
    }
    const double rhs = bifurcation_rhs(alpha0, lambda);
    if (!(rhs > 0.0)) {
        throw NumericalError("bifurcation_amplitude: infeasible lambda (rhs <= 0)");
    }
    const double a = 1.0 / std::sqrt(rhs);
    return sign == AmplitudeSign::Positive ? a : -a;
}

double lower_lambda_bound(double alpha0) {
    const WaveClass c = classify_regime(alpha0);
    const double t0 = std::sqrt(std::abs(alpha0));
    const double t1 = std::sqrt(std::abs(alpha0 + 1.0));
    switch (c) {
        case WaveClass::W1: return num::arccot(t1 * num::cot(t1) / t0);
        case WaveClass::W2: return kPi / 4.0;
        case WaveClass::W3: return num::arccot(t1 * num::coth(t1) / t0);
        case WaveClass::W4:
            throw ValidationError("lower_lambda_bound: not defined for W4");
    }
    return 0.0;
}

LambdaAdmissibility admissible_lambda(double alpha0, double lambda) {
    const WaveClass c = classify_regime(alpha0);
    if (c == WaveClass::W4) {
        return lambda != 0.0 ? LambdaAdmissibility::PaperInterval
                             : LambdaAdmissibility::Infeasible;
    }
    const double rhs = bifurcation_rhs(alpha0, lambda);
    if (!(rhs > 0.0)) {
        return LambdaAdmissibility::Infeasible;
    }
    const double lo = lower_lambda_bound(alpha0);
    return (lambda > lo && lambda < kPi) ? LambdaAdmissibility::PaperInterval
                                         : LambdaAdmissibility::PositivityOnly;
}

WaveParameters WaveParameters::make(double alpha0, double lambda, double epsilon,
                                    AmplitudeSign sign) {
    const WaveClass c = classify_regime(alpha0);
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("WaveParameters: epsilon must be finite and >= 0");
    }
    WaveParameters p;
    p.alpha0_ = alpha0;
    p.lambda_ = lambda;
    p.epsilon_ = epsilon;
    p.theta0_ = std::sqrt(std::abs(alpha0));
    p.theta1_ = std::sqrt(std::abs(alpha0 + 1.0));
    p.class_ = c;
    p.sign_ = sign;
    p.amplitude_ = bifurcation_amplitude(alpha0, lambda, sign);
    p.admissibility_ = admissible_lambda(alpha0, lambda);
    return p;
}

double WaveParameters::background_current(double y) const {
    if (class_ == WaveClass::W4) {
        const double arg = theta0_ * (y - 1.0);
        return amplitude_ * std::sinh(arg) + lambda_ * std::cosh(arg);
    }
    return amplitude_ * std::sin(theta0_ * (y - 1.0) + lambda_);
}

double WaveParameters::background_current_derivative(double y) const {
    if (class_ == WaveClass::W4) {
        const double arg = theta0_ * (y - 1.0);
        return theta0_ * (amplitude_ * std::cosh(arg) + lambda_ * std::sinh(arg));
    }
    return amplitude_ * theta0_ * std::cos(theta0_ * (y - 1.0) + lambda_);
}

double WaveParameters::background_current_second_derivative(double y) const {
    // U0'' = alpha0 * U0 for every class.
    return alpha0_ * background_current(y);
}

double WaveParameters::current_antiderivative(double y) const {
    if (class_ == WaveClass::W4) {
        const double arg = theta0_ * (y - 1.0);
        return (amplitude_ * (std::cosh(arg) - std::cosh(theta0_)) +
                lambda_ * (std::sinh(arg) + std::sinh(theta0_))) /
               theta0_;
    }
    return amplitude_ *
           (std::cos(lambda_ - theta0_) - std::cos(theta0_ * (y - 1.0) + lambda_)) /
           theta0_;
}

double WaveParameters::shape(double y) const {
    switch (class_) {
        case WaveClass::W1: return std::sin(theta1_ * y);
        case WaveClass::W2: return y;
        default: return std::sinh(theta1_ * y);
    }
}

double WaveParameters::shape_derivative(double y) const {
    switch (class_) {
        case WaveClass::W1: return theta1_ * std::cos(theta1_ * y);
        case WaveClass::W2: return 1.0;
        default: return theta1_ * std::cosh(theta1_ * y);
    }
}

double WaveParameters::shape_second_derivative(double y) const {
    // G'' = (alpha0 + 1) G for every class.
    return (alpha0_ + 1.0) * shape(y);
}

VelocitySample WaveParameters::velocity(double x, double y) const {
    VelocitySample s;
    s.x = x;
    s.y = y;
    s.u = background_current(y) + epsilon_ * shape_derivative(y) * std::cos(x);
    s.v = epsilon_ * std::sin(x) * shape(y);
    return s;
}

double sturm_residual(const WaveParameters& params, double y) {
    const double h = 1e-3; // balances truncation against f/h^2 roundoff
    auto f = [&](double s) { return params.shape(s); };
    // Fourth-order central second difference.
    const double fpp = (-f(y + 2 * h) + 16 * f(y + h) - 30 * f(y) + 16 * f(y - h) -
                        f(y - 2 * h)) /
                       (12 * h * h);
    return -fpp + (params.alpha0() + 1.0) * f(y);
}

} // namespace wavescope
