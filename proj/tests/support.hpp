#pragma once

#include <random>
#include <vector>

#include "wavescope/wave_model.hpp"

namespace testsupport {

constexpr double kPi = 3.14159265358979323846;

// A lambda with strictly positive bifurcation rhs for the given alpha0,
// drawn from a fixed scan grid. rhs > 1e-3 keeps amplitudes moderate.
inline double random_feasible_lambda(double alpha0, std::mt19937& rng) {
    const auto cls = wavescope::classify_regime(alpha0);
    std::vector<double> ok;
    for (int i = 1; i < 1500; ++i) {
        const double l = 2.0 * kPi * i / 1500.0;
        if (cls == wavescope::WaveClass::W4) {
            ok.push_back(l);
        } else if (wavescope::bifurcation_rhs(alpha0, l) > 1e-3) {
            ok.push_back(l);
        }
    }
    std::uniform_int_distribution<size_t> pick(0, ok.size() - 1);
    return ok[pick(rng)];
}

inline double random_alpha0(wavescope::WaveClass cls, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (cls) {
        case wavescope::WaveClass::W1: return -1.5 - 28.5 * u(rng);
        case wavescope::WaveClass::W2: return -1.0;
        case wavescope::WaveClass::W3: return -0.95 + 0.9 * u(rng);
        case wavescope::WaveClass::W4: return 0.1 + 29.9 * u(rng);
    }
    return 1.0;
}

inline wavescope::WaveParameters random_params(wavescope::WaveClass cls,
                                               std::mt19937& rng,
                                               double epsilon = 0.05) {
    const double alpha0 = random_alpha0(cls, rng);
    const double lambda = random_feasible_lambda(alpha0, rng);
    return wavescope::WaveParameters::make(alpha0, lambda, epsilon);
}

inline const wavescope::WaveClass kAllClasses[] = {
    wavescope::WaveClass::W1, wavescope::WaveClass::W2, wavescope::WaveClass::W3,
    wavescope::WaveClass::W4};

} // namespace testsupport
