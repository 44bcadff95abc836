#pragma once

#include <string>

#include "beadsim/cuttimes.hpp"
#include "beadsim/path.hpp"

namespace beadsim {

// Renders a path as a standalone SVG document: the polyline over the region
// [min x, max x] x [0, max y] with 5% margins, the real axis drawn as a
// baseline, and the cut vertices as dots layered above the path. Pass an
// empty cut set to draw the bare path.
std::string render_path_svg(const Path& p, const CutSet& cuts, double width_px = 900.0);

}  // namespace beadsim
