#pragma once

#include <vector>

#include "wavescope/wave_model.hpp"

namespace wavescope {

// A height where the background current vanishes: the limiting location of
// a critical layer as epsilon -> 0.
struct StagnationLevel {
    double y0{0.0};
    double lambda{0.0};          // the lambda producing it
    int multiplicity_index{0};   // which zero, ordered from the bed up
    bool feasible{false};        // bifurcation condition also satisfied
};

// All zeros of U0 in [0, 1], in closed form per class. Empty when there
// are none.
std::vector<StagnationLevel> stagnation_levels(const WaveParameters& params);

int zero_count(const WaveParameters& params);

// lambda_min = (t1 coth(t1) - t0 coth(t0))^{-1/2}; for |lambda| >= lambda_min
// class W4 has exactly one stagnation level. Throws for alpha0 <= 0.
double class4_lambda_threshold(double alpha0);

// One certificate: this lambda puts a U0 zero at y0.
struct RegionSample {
    double lambda{0.0};
    double y0{0.0};
};

// The feasible (alpha0, Y0) band for one alpha0. Endpoints are the closure
// of the attainable Y0 set; samples are interior lambda certificates.
struct RegionBand {
    double alpha0{0.0};
    double y0_min{0.0};
    double y0_max{0.0};
    bool empty{true};
    bool multi_zero{false}; // alpha0 < -1 - pi^2: several zeros per lambda
    std::vector<RegionSample> samples;
};

// Sweeps lambda per alpha0 and reports the attainable stagnation heights.
// resolution is the number of certificate samples per alpha0 (>= 2).
std::vector<RegionBand> feasible_region_sample(const std::vector<double>& alpha0_grid,
                                               int resolution);

} // namespace wavescope
