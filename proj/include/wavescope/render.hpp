#pragma once

#include <string>

#include "wavescope/document.hpp"

namespace wavescope {

// Deterministic SVG 1.1 following the project's figure conventions:
// streamlines blue, infinity isocline green dotted, 0-isocline red dotted,
// centers red dots, saddles green dots, speed heat map as a coarse raster
// underlay. Same document in, same bytes out.
std::string render_svg(const PortraitDocument& doc);

} // namespace wavescope
