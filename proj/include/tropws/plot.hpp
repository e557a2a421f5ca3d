#pragma once

#include "tropws/weierstrass.hpp"

#include <string>

namespace tropws {

// Static SVG drawing of the graph with the locus components highlighted and
// labelled by weight. Vertices sit on a circle in input order; parallel edges
// bend, loops are drawn as circles. Output depends only on the inputs.
std::string render_svg(const MetricGraph& g, const WLocus* l = nullptr);

}  // namespace tropws
