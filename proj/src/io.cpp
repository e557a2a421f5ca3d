#include "tropws/io.hpp"

#include "tropws/errors.hpp"

#include <fstream>
#include <sstream>

namespace tropws::io {

namespace {

[[noreturn]] void bad(const std::string& what) { input_error("ParseError", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

Id id_from_json(const Json& j) {
  if (j.is_string()) return {j.get<std::string>(), false};
  if (j.is_number_integer()) return {j.dump(), true};
  bad("identifiers must be strings or integers, got " + j.dump());
}

Json id_to_json(const Id& id) {
  if (id.numeric) return Json::parse(id.text);
  return id.text;
}

std::string id_text(const Json& j) { return id_from_json(j).text; }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  bad("expected a rational string, got " + j.dump());
}

long long integer_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer, got " + j.dump());
  return j.get<long long>();
}

int source_edge(const MetricGraph& g, const Json& j) {
  std::string id = id_text(j);
  auto s = g.find_source_edge(id);
  if (!s) input_error("UnknownEdge", "edge " + id);
  return *s;
}

int vertex(const MetricGraph& g, const Json& j) {
  std::string id = id_text(j);
  auto v = g.find_vertex(id);
  if (!v) input_error("UnknownVertex", "vertex " + id);
  return *v;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

GraphSpec graph_from_json(const Json& j) {
  GraphSpec s;
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) bad("'vertices' must be an array");
  for (const auto& v : vs) {
    GraphSpec::VertexSpec spec{id_from_json(field(v, "id")), 0};
    if (v.contains("genus")) spec.genus = integer_from_json(v["genus"], "genus");
    s.vertices.push_back(spec);
  }
  const Json& es = j.contains("edges") ? j["edges"] : Json::array();
  if (!es.is_array()) bad("'edges' must be an array");
  for (const auto& e : es) {
    const Json& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2) bad("'ends' must list two vertex ids");
    s.edges.push_back({id_from_json(field(e, "id")), id_from_json(ends[0]), id_from_json(ends[1]),
                       rational_from_json(field(e, "length"))});
  }
  return s;
}

Json graph_to_json(const GraphSpec& spec) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : spec.vertices) vs.push_back({{"id", id_to_json(v.id)}, {"genus", v.genus}});
  for (const auto& e : spec.edges)
    es.push_back({{"id", id_to_json(e.id)},
                  {"ends", Json::array({id_to_json(e.tail), id_to_json(e.head)})},
                  {"length", to_string(e.length)}});
  return {{"vertices", vs}, {"edges", es}};
}

MetricGraph read_graph(const std::string& path) { return build_graph(graph_from_json(read_json_file(path))); }

Point point_from_json(const MetricGraph& g, const Json& j) {
  if (j.is_object() && j.contains("vertex")) return Point::at_vertex(vertex(g, j["vertex"]));
  int s = source_edge(g, field(j, "edge"));
  Rational t = rational_from_json(field(j, "offset"));
  return g.source_point(s, t);
}

Json point_to_json(const MetricGraph& g, const Point& p) {
  if (p.is_vertex() && !g.vertex(p.vertex).hidden) return {{"vertex", id_to_json(g.vertex(p.vertex).id)}};
  auto [s, t] = g.to_source(p);
  return {{"edge", id_to_json(g.source_edge(s).id)}, {"offset", to_string(t)}};
}

Point point_from_text(const MetricGraph& g, const std::string& text) {
  auto at = text.rfind('@');
  if (at == std::string::npos) {
    auto v = g.find_vertex(text);
    if (!v) input_error("UnknownVertex", "vertex " + text);
    return Point::at_vertex(*v);
  }
  auto s = g.find_source_edge(text.substr(0, at));
  if (!s) input_error("UnknownEdge", "edge " + text.substr(0, at));
  return g.source_point(*s, parse_rational(text.substr(at + 1)));
}

Divisor divisor_from_json(const MetricGraph& g, const Json& j) {
  if (!j.is_array()) bad("a divisor is an array of {at, coeff} entries");
  Divisor d;
  for (const auto& term : j) d.add(point_from_json(g, field(term, "at")), integer_from_json(field(term, "coeff"), "coeff"));
  return d;
}

Json divisor_to_json(const MetricGraph& g, const Divisor& d) {
  Json out = Json::array();
  for (const auto& [p, n] : d.terms()) out.push_back({{"at", point_to_json(g, p)}, {"coeff", n}});
  return out;
}

Json direction_to_json(const MetricGraph& g, const Direction& d) {
  return {{"at", point_to_json(g, d.base)},
          {"edge", id_to_json(g.source_edge(g.edge(d.edge).source).id)},
          {"sign", d.sign}};
}

ClosedSubset subset_from_json(const MetricGraph& g, const Json& j) {
  SourceRegion r;
  if (j.contains("vertices"))
    for (const auto& v : j["vertices"]) r.vertices.push_back(vertex(g, v));
  if (j.contains("intervals"))
    for (const auto& i : j["intervals"])
      r.intervals.push_back(
          {source_edge(g, field(i, "edge")), rational_from_json(field(i, "from")), rational_from_json(field(i, "to"))});
  return from_source_region(g, r);
}

Json subset_to_json(const MetricGraph& g, const ClosedSubset& a, bool approx) {
  SourceRegion r = source_region(g, a);
  Json vs = Json::array(), is = Json::array();
  for (int v : r.vertices) vs.push_back(id_to_json(g.vertex(v).id));
  for (const auto& i : r.intervals) {
    Json x = {{"edge", id_to_json(g.source_edge(i.source).id)}, {"from", to_string(i.from)}, {"to", to_string(i.to)}};
    if (approx) {
      x["from_approx"] = to_double(i.from);
      x["to_approx"] = to_double(i.to);
    }
    is.push_back(x);
  }
  return {{"vertices", vs}, {"intervals", is}};
}

Json locus_to_json(const MetricGraph& g, const WLocus& l, bool approx) {
  Json comps = Json::array();
  for (const auto& c : l.components) {
    Json x = subset_to_json(g, c.region, approx);
    x["weight"] = c.weight;
    comps.push_back(x);
  }
  Json out = {{"mode", to_string(l.mode)}, {"components", comps}, {"total", l.total}, {"rank", l.rank},
              {"degree", l.degree},      {"genus", l.genus}};
  if (l.mode == LocusMode::BModified) out["b"] = l.b;
  out["events"] = l.events;
  return out;
}

WLocus locus_from_json(const MetricGraph& g, const Json& j) {
  WLocus l;
  std::string mode = j.contains("mode") ? j["mode"].get<std::string>() : "standard";
  bool found = false;
  for (auto m : {LocusMode::Standard, LocusMode::BModified, LocusMode::Generic, LocusMode::Canonical})
    if (to_string(m) == mode) {
      l.mode = m;
      found = true;
    }
  if (!found) bad("unknown locus mode '" + mode + "'");
  for (const auto& c : field(j, "components"))
    l.components.push_back({subset_from_json(g, c), integer_from_json(field(c, "weight"), "weight")});
  l.total = integer_from_json(field(j, "total"), "total");
  l.rank = integer_from_json(field(j, "rank"), "rank");
  l.degree = integer_from_json(field(j, "degree"), "degree");
  l.genus = integer_from_json(field(j, "genus"), "genus");
  l.b = j.contains("b") ? integer_from_json(j["b"], "b") : l.rank;
  l.events = j.contains("events") ? integer_from_json(j["events"], "events") : 0;
  return l;
}

SlopeStructureSpec slopes_from_json(const Json& j) {
  SlopeStructureSpec s;
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) bad("'edges' must be an array");
  bool have_rank = j.contains("rank");
  if (have_rank) s.rank = integer_from_json(j["rank"], "rank");
  for (const auto& e : edges) {
    OrientedSlopes o;
    o.edge = id_from_json(field(e, "edge"));
    o.from_vertex = id_from_json(field(e, "from_vertex"));
    if (e.contains("reverse")) o.reverse = e["reverse"].get<bool>();
    for (const auto& seg : field(e, "segments")) {
      SlopeSegment x;
      x.upto = rational_from_json(field(seg, "upto"));
      for (const auto& v : field(seg, "slopes")) x.slopes.push_back(integer_from_json(v, "slope"));
      o.segments.push_back(x);
    }
    s.edges.push_back(o);
  }
  if (!have_rank) {
    if (s.edges.empty() || s.edges[0].segments.empty()) bad("cannot infer the rank from empty slope data");
    s.rank = static_cast<long long>(s.edges[0].segments[0].slopes.size()) - 1;
  }
  return s;
}

Json slopes_to_json(const SlopeStructureSpec& s) {
  Json edges = Json::array();
  for (const auto& e : s.edges) {
    Json segs = Json::array();
    for (const auto& seg : e.segments) segs.push_back({{"upto", to_string(seg.upto)}, {"slopes", seg.slopes}});
    Json x = {{"edge", id_to_json(e.edge)}, {"from_vertex", id_to_json(e.from_vertex)}};
    if (e.reverse) x["reverse"] = true;
    x["segments"] = segs;
    edges.push_back(x);
  }
  return {{"rank", s.rank}, {"edges", edges}};
}

}  // namespace tropws::io
