#pragma once

// Emission of run results: boundary CSV, self-contained SVG overlay, and
// machine / human readable reports.  All writers are deterministic; the
// same RunResult renders to byte-identical text.

#include <string>

#include "heleshaw/scenario.hpp"

namespace heleshaw::output {

// Boundary samples of all solved items as CSV with columns
// phi,re_z,im_z.  One header line, 17 significant digits, LF endings;
// multi-item runs separate consecutive curves with one blank line, in
// sweep order (failed items contribute nothing).
std::string boundary_csv(const scenario::RunResult& result);

// Position / moment relation table with columns alpha,beta,x0,mu_over_alpha.
std::string relation_csv(const scenario::RunResult& result);

// Self-contained SVG: one path per solved item (dashed when the boundary
// self-intersects), one dot marker per field charge and per hydrodynamic
// singularity, viewBox fitted with a 5 percent margin.  Inline styling
// only, no external references.
std::string svg_overlay(const scenario::RunResult& result);

// Full run record as JSON: config echo plus per-item parameters, flags,
// thresholds, and verification numbers.
std::string report_json(const scenario::RunResult& result);

// One-line-per-item summary for the terminal.
std::string report_text(const scenario::RunResult& result);

// Write content to path byte for byte; throws ConfigError when the file
// cannot be created.
void write_file(const std::string& path, const std::string& content);

}  // namespace heleshaw::output
