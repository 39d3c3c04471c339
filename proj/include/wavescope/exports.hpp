#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavescope/document.hpp"
#include "wavescope/render.hpp"
#include "wavescope/stagnation.hpp"

namespace wavescope {

// Throws IoError with the offending path on failure. Writes LF-only bytes.
void write_text_file(const std::filesystem::path& path, const std::string& text);

// critical_points.csv: x,y,kind,det_hessian,provenance
// stagnation.csv:      y0,lambda,feasible
void export_csv(const PortraitDocument& doc, const std::filesystem::path& dir);

// portrait.json, mirroring PortraitDocument.
void export_json(const PortraitDocument& doc, const std::filesystem::path& dir);

// portrait.svg.
void export_svg(const PortraitDocument& doc, const std::filesystem::path& dir);

// Everything listed in doc.config.outputs, into dir.
void export_portrait_outputs(const PortraitDocument& doc,
                             const std::filesystem::path& dir);

// region.csv: alpha0,y0_min,y0_max,empty,multi_zero,n_samples
// region_samples.csv: alpha0,lambda,y0 (one certificate per row)
void export_region_csv(const std::vector<RegionBand>& bands,
                       const std::filesystem::path& dir);

// Reference-figure bundle: the feasible-region sweep plus four portraits of
// the alpha0 = -20, epsilon = 0.05 family on either side of the
// saddle/center collision. Returns 0 when every structural assertion holds,
// nonzero otherwise; failures are listed on stderr.
int reproduce_figures(const std::filesystem::path& out_dir);

} // namespace wavescope
