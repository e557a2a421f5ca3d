#pragma once

#include "tropws/clls.hpp"
#include "tropws/weierstrass.hpp"

#include <json.hpp>

#include <string>

namespace tropws::io {

using Json = nlohmann::ordered_json;

// Reads and parses a JSON file. Throws Error(ParseError).
Json read_json_file(const std::string& path);

GraphSpec graph_from_json(const Json& j);
Json graph_to_json(const GraphSpec& spec);
MetricGraph read_graph(const std::string& path);

// {vertex: id} or {edge: id, offset: "p/q"} in input coordinates.
Point point_from_json(const MetricGraph& g, const Json& j);
Json point_to_json(const MetricGraph& g, const Point& p);
// "ID" or "EDGE@p/q".
Point point_from_text(const MetricGraph& g, const std::string& text);

// [{at: point, coeff: n}, ...]
Divisor divisor_from_json(const MetricGraph& g, const Json& j);
Json divisor_to_json(const MetricGraph& g, const Divisor& d);

// {edge, sign} with sign +1 pointing along the input orientation of the edge.
Json direction_to_json(const MetricGraph& g, const Direction& d);

// {vertices: [...], intervals: [{edge, from, to}]}
ClosedSubset subset_from_json(const MetricGraph& g, const Json& j);
Json subset_to_json(const MetricGraph& g, const ClosedSubset& a, bool approx = false);

WLocus locus_from_json(const MetricGraph& g, const Json& j);
Json locus_to_json(const MetricGraph& g, const WLocus& l, bool approx = false);

SlopeStructureSpec slopes_from_json(const Json& j);
Json slopes_to_json(const SlopeStructureSpec& s);

}  // namespace tropws::io
