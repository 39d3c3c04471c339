#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wavescope/wave_model.hpp"

namespace wavescope {

struct SweepSpec {
    double lo{0.0};
    double hi{0.0};
    int steps{0};
};

// A run configuration: flat key=value text, '#' comments, one or more
// assignments per line. lambda accepts either a number or
// sweep(lo,hi,steps).
struct RunConfig {
    double alpha0{0.0};
    std::optional<double> lambda;
    std::optional<SweepSpec> lambda_sweep;
    double epsilon{0.0};
    int grid_nx{800};
    int grid_ny{400};
    std::set<std::string> outputs{"svg", "csv", "json"};
    std::string out_dir{"out"};
    int streamline_levels{24};
    AmplitudeSign amplitude_sign{AmplitudeSign::Positive};
    std::vector<std::pair<double, double>> seed_overrides;
};

// Parses and validates. Throws ValidationError with a line number for
// malformed input or unknown keys, and for domain violations (alpha0 = 0,
// epsilon < 0, grid < 16, empty outputs).
RunConfig parse_config(const std::string& text);

void validate_config(const RunConfig& config);

// The config re-serialized in canonical key order (used for echo fields).
std::string config_to_text(const RunConfig& config);

} // namespace wavescope
