#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wavescope/config.hpp"
#include "wavescope/phase_portrait.hpp"

namespace wavescope {

// Everything needed to re-render one portrait: re-rendering from the
// document alone reproduces the SVG byte for byte.
struct PortraitDocument {
    RunConfig config;

    std::string wave_class;
    double theta0{0.0};
    double theta1{0.0};
    double amplitude{0.0};
    std::string admissibility;

    std::vector<Layer> layers;
    std::vector<StagnationLevel> stagnation;
    std::vector<CriticalPoint> critical_points;
    std::vector<IsoclineBranch> isoclines;

    struct StreamlineLevel {
        double level{0.0};
        bool separatrix{false};
        std::vector<std::vector<num::Vec2>> polylines;
    };
    std::vector<StreamlineLevel> streamlines;

    // Surface curve Y = 1 + eps * eta_hat * cos(X) (rendering aid).
    double surface_eta_hat{0.0};

    // Coarse speed raster for the heat-map underlay, row-major.
    int heat_nx{0};
    int heat_ny{0};
    std::vector<double> speed;

    std::vector<std::string> warnings;
};

// Full pipeline: classify -> amplitude -> stagnation levels -> layers ->
// isoclines -> critical points -> streamline contours. Deterministic.
// Isocline tracing failures degrade to warnings with a partial document.
PortraitDocument run_portrait(const RunConfig& config);

nlohmann::ordered_json document_to_json(const PortraitDocument& doc);
PortraitDocument document_from_json(const nlohmann::ordered_json& j);

// Lambda-sweep document (merge tracking).
struct SweepDocument {
    RunConfig config;
    MergeSweepResult result;
};

SweepDocument run_sweep(const RunConfig& config);
nlohmann::ordered_json sweep_to_json(const SweepDocument& doc);

} // namespace wavescope
