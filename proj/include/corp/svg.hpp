#pragma once

#include <string>

#include "corp/diagram.hpp"

namespace corp {

/// Renders the diagram as a standalone SVG: a 600x600 unit-square panel with
/// the diagonal, band polygon, calibrated curve (dots in discrete mode) and
/// score annotation, above a 120-pixel marginal histogram strip. Output is a
/// pure function of the diagram.
std::string render_svg(const ReliabilityDiagram& diagram);

}  // namespace corp
