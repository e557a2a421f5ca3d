#include "tropws/graph.hpp"

#include "tropws/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropws {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool id_less(const Id& a, const Id& b) {
  if (a.numeric && b.numeric) {
    Integer x(a.text), y(b.text);
    return x < y;
  }
  return a.text < b.text;
}

}  // namespace

MetricGraph build_graph(const GraphSpec& spec) {
  MetricGraph g;
  if (spec.vertices.empty()) input_error("InvalidStructure", "graph has no vertices");
  for (const auto& v : spec.vertices) {
    if (v.genus < 0) input_error("InvalidStructure", "negative genus at vertex " + v.id.text);
    if (!g.vertex_index_.emplace(v.id.text, g.num_vertices()).second)
      input_error("DuplicateId", "vertex " + v.id.text);
    g.vertices_.push_back({v.id, v.genus, false});
  }
  std::set<std::string> edge_ids;
  for (const auto& e : spec.edges)
    if (!edge_ids.insert(e.id.text).second) input_error("DuplicateId", "edge " + e.id.text);

  for (const auto& e : spec.edges) {
    if (e.length <= 0) input_error("NonPositiveLength", "edge " + e.id.text + " has length " + to_string(e.length));
    auto t = g.vertex_index_.find(e.tail.text);
    auto h = g.vertex_index_.find(e.head.text);
    if (t == g.vertex_index_.end() || h == g.vertex_index_.end())
      input_error("UnknownVertex", "edge " + e.id.text + " has an unknown endpoint");
    MetricGraph::SourceEdge se{e.id, t->second, h->second, e.length, g.num_edges(), 1};
    if (t->second == h->second) {
      se.parts = 2;
      int mid = g.num_vertices();
      g.vertices_.push_back({Id{e.id.text + "#mid", false}, 0, true});
      Rational half = e.length / 2;
      g.edges_.push_back({t->second, mid, half, g.num_source_edges(), 0});
      g.edges_.push_back({mid, t->second, half, g.num_source_edges(), 1});
    } else {
      g.edges_.push_back({t->second, h->second, e.length, g.num_source_edges(), 0});
    }
    g.edge_index_.emplace(e.id.text, g.num_source_edges());
    g.source_edges_.push_back(se);
  }

  g.incident_.assign(g.num_vertices(), {});
  for (int e = 0; e < g.num_edges(); ++e) {
    g.incident_[g.edges_[e].tail].push_back({e, 1});
    g.incident_[g.edges_[e].head].push_back({e, -1});
  }

  UnionFind uf(g.num_vertices());
  for (const auto& e : g.edges_) uf.unite(e.tail, e.head);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (uf.find(v) != uf.find(0)) input_error("DisconnectedGraph", "vertex " + g.vertices_[v].id.text + " is unreachable");
  return g;
}

GraphSpec MetricGraph::spec() const {
  GraphSpec s;
  for (const auto& v : vertices_)
    if (!v.hidden) s.vertices.push_back({v.id, v.genus});
  for (const auto& e : source_edges_)
    s.edges.push_back({e.id, vertices_[e.tail].id, vertices_[e.head].id, e.length});
  return s;
}

MetricGraph MetricGraph::scaled(const Rational& lambda) const {
  GraphSpec s = spec();
  for (auto& e : s.edges) e.length *= lambda;
  return build_graph(s);
}

std::optional<int> MetricGraph::find_vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end() || vertices_[it->second].hidden) return std::nullopt;
  return it->second;
}

std::optional<int> MetricGraph::find_source_edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

long long MetricGraph::total_genus() const {
  long long s = betti();
  for (const auto& v : vertices_) s += v.genus;
  return s;
}

bool MetricGraph::augmented() const {
  return std::any_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.genus > 0; });
}

Point MetricGraph::normalize(int e, const Rational& t) const {
  const Edge& ed = edges_[e];
  if (t < 0 || t > ed.length) input_error("InvalidStructure", "offset " + to_string(t) + " outside edge");
  if (t == 0) return Point::at_vertex(ed.tail);
  if (t == ed.length) return Point::at_vertex(ed.head);
  return Point::on_edge(e, t);
}

void MetricGraph::check_point(const Point& p) const {
  if (p.is_vertex()) {
    if (p.vertex >= num_vertices() || p.edge != -1) input_error("InvalidStructure", "bad vertex point");
    return;
  }
  if (p.edge < 0 || p.edge >= num_edges() || p.offset <= 0 || p.offset >= edges_[p.edge].length)
    input_error("InvalidStructure", "bad edge point");
}

Point MetricGraph::source_point(int s, const Rational& t) const {
  const SourceEdge& se = source_edges_[s];
  if (t < 0 || t > se.length) input_error("InvalidStructure", "offset " + to_string(t) + " outside edge " + se.id.text);
  if (se.parts == 1) return normalize(se.first, t);
  Rational half = se.length / 2;
  if (t <= half) return normalize(se.first, t);
  return normalize(se.first + 1, t - half);
}

std::pair<int, Rational> MetricGraph::to_source(const Point& p) const {
  if (p.is_vertex()) {
    for (const auto& inc : incident_[p.vertex]) {
      const Edge& e = edges_[inc.edge];
      if (e.part == 0 && e.head == p.vertex && vertices_[p.vertex].hidden) return {e.source, e.length};
    }
    return {-1, Rational(0)};
  }
  const Edge& e = edges_[p.edge];
  Rational t = p.offset;
  if (e.part == 1) t += e.length;
  return {e.source, t};
}

int MetricGraph::valence(const Point& p) const {
  return p.is_vertex() ? static_cast<int>(incident_[p.vertex].size()) : 2;
}

std::vector<Direction> MetricGraph::directions(const Point& p) const {
  std::vector<Direction> out;
  if (p.is_vertex()) {
    for (const auto& inc : incident_[p.vertex]) out.push_back({p, inc.edge, inc.sign});
  } else {
    out.push_back({p, p.edge, -1});
    out.push_back({p, p.edge, 1});
  }
  return out;
}

int MetricGraph::lowest_vertex() const {
  int best = -1;
  for (int v = 0; v < num_vertices(); ++v) {
    if (vertices_[v].hidden) continue;
    if (best < 0 || id_less(vertices_[v].id, vertices_[best].id)) best = v;
  }
  return best;
}

// ---------------------------------------------------------------- Divisor

void Divisor::add(const Point& p, long long n) {
  if (n == 0) return;
  auto [it, inserted] = c_.emplace(p, n);
  if (!inserted) {
    it->second += n;
    if (it->second == 0) c_.erase(it);
  }
}

long long Divisor::operator()(const Point& p) const {
  auto it = c_.find(p);
  return it == c_.end() ? 0 : it->second;
}

long long Divisor::degree() const {
  long long s = 0;
  for (const auto& [p, n] : c_) s += n;
  return s;
}

bool Divisor::effective() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second >= 0; });
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [p, n] : o.c_) r.add(p, n);
  return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [p, n] : o.c_) r.add(p, -n);
  return r;
}

Divisor Divisor::operator*(long long k) const {
  Divisor r;
  for (const auto& [p, n] : c_) r.add(p, n * k);
  return r;
}

Divisor canonical_divisor(const MetricGraph& g) {
  Divisor k;
  for (int v = 0; v < g.num_vertices(); ++v)
    k.add(Point::at_vertex(v), g.valence(Point::at_vertex(v)) - 2 + 2 * g.vertex(v).genus);
  return k;
}

Divisor genus_divisor(const MetricGraph& g) {
  Divisor d;
  for (int v = 0; v < g.num_vertices(); ++v) d.add(Point::at_vertex(v), g.vertex(v).genus);
  return d;
}

// ---------------------------------------------------------------- ClosedSubset

ClosedSubset::ClosedSubset(const MetricGraph& g) : vertices_(g.num_vertices(), 0), intervals_(g.num_edges()) {}

ClosedSubset ClosedSubset::whole(const MetricGraph& g) {
  ClosedSubset a(g);
  for (int v = 0; v < g.num_vertices(); ++v) a.add_vertex(v);
  for (int e = 0; e < g.num_edges(); ++e) a.add_interval(e, 0, g.edge(e).length);
  a.canonicalize(g);
  return a;
}

ClosedSubset ClosedSubset::single(const MetricGraph& g, const Point& p) {
  ClosedSubset a(g);
  a.add_point(p);
  a.canonicalize(g);
  return a;
}

void ClosedSubset::add_vertex(int v) { vertices_[v] = 1; }

void ClosedSubset::add_interval(int e, const Rational& from, const Rational& to) {
  intervals_[e].push_back({from, to});
}

void ClosedSubset::add_point(const Point& p) {
  if (p.is_vertex())
    add_vertex(p.vertex);
  else
    add_interval(p.edge, p.offset, p.offset);
}

void ClosedSubset::unite(const ClosedSubset& o) {
  for (size_t v = 0; v < vertices_.size(); ++v) vertices_[v] |= o.vertices_[v];
  for (size_t e = 0; e < intervals_.size(); ++e)
    intervals_[e].insert(intervals_[e].end(), o.intervals_[e].begin(), o.intervals_[e].end());
}

void ClosedSubset::canonicalize(const MetricGraph& g) {
  for (int e = 0; e < g.num_edges(); ++e) {
    auto& iv = intervals_[e];
    const Rational& len = g.edge(e).length;
    for (auto& i : iv) {
      if (i.from > i.to) std::swap(i.from, i.to);
      if (i.from < 0 || i.to > len) input_error("InvalidStructure", "interval outside its edge");
    }
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
      return a.from < b.from || (a.from == b.from && a.to < b.to);
    });
    std::vector<Interval> merged;
    for (const auto& i : iv) {
      if (!merged.empty() && i.from <= merged.back().to) {
        if (i.to > merged.back().to) merged.back().to = i.to;
      } else {
        merged.push_back(i);
      }
    }
    std::vector<Interval> kept;
    for (const auto& i : merged) {
      if (i.from == 0) vertices_[g.edge(e).tail] = 1;
      if (i.to == len) vertices_[g.edge(e).head] = 1;
      bool degenerate_end = i.from == i.to && (i.from == 0 || i.to == len);
      if (!degenerate_end) kept.push_back(i);
    }
    iv = std::move(kept);
  }
}

bool ClosedSubset::empty() const {
  for (char c : vertices_)
    if (c) return false;
  for (const auto& iv : intervals_)
    if (!iv.empty()) return false;
  return true;
}

bool ClosedSubset::contains(const MetricGraph&, const Point& p) const {
  if (p.is_vertex()) return vertices_[p.vertex];
  for (const auto& i : intervals_[p.edge])
    if (i.from <= p.offset && p.offset <= i.to) return true;
  return false;
}

bool ClosedSubset::contains(const MetricGraph& g, const ClosedSubset& o) const {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (o.vertices_[v] && !vertices_[v]) return false;
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& i : o.intervals_[e]) {
      bool inside = false;
      for (const auto& j : intervals_[e])
        if (j.from <= i.from && i.to <= j.to) inside = true;
      if (!inside) return false;
    }
  return true;
}

bool ClosedSubset::intersects(const MetricGraph& g, const ClosedSubset& o) const {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (o.vertices_[v] && vertices_[v]) return true;
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& i : o.intervals_[e])
      for (const auto& j : intervals_[e])
        if (i.from <= j.to && j.from <= i.to) return true;
  return false;
}

bool operator==(const ClosedSubset& a, const ClosedSubset& b) {
  if (a.vertices_ != b.vertices_ || a.intervals_.size() != b.intervals_.size()) return false;
  for (size_t e = 0; e < a.intervals_.size(); ++e) {
    const auto& x = a.intervals_[e];
    const auto& y = b.intervals_[e];
    if (x.size() != y.size()) return false;
    for (size_t k = 0; k < x.size(); ++k)
      if (x[k].from != y[k].from || x[k].to != y[k].to) return false;
  }
  return true;
}

namespace {

// Node graph of a canonical closed subset: vertex nodes, then one node per
// interval; intervals touching a vertex are merged with it.
struct Pieces {
  std::vector<std::pair<int, int>> interval_ref;  // (edge, index)
  int nv = 0;
};

Pieces pieces(const MetricGraph& g, const ClosedSubset& a, UnionFind& uf) {
  Pieces p;
  p.nv = g.num_vertices();
  for (int e = 0; e < g.num_edges(); ++e)
    for (size_t k = 0; k < a.intervals(e).size(); ++k) p.interval_ref.push_back({e, static_cast<int>(k)});
  uf = UnionFind(p.nv + static_cast<int>(p.interval_ref.size()));
  for (size_t k = 0; k < p.interval_ref.size(); ++k) {
    auto [e, idx] = p.interval_ref[k];
    const auto& i = a.intervals(e)[idx];
    if (i.from == 0) uf.unite(p.nv + static_cast<int>(k), g.edge(e).tail);
    if (i.to == g.edge(e).length) uf.unite(p.nv + static_cast<int>(k), g.edge(e).head);
  }
  return p;
}

}  // namespace

std::vector<ClosedSubset> components(const MetricGraph& g, const ClosedSubset& a) {
  UnionFind uf(0);
  Pieces p = pieces(g, a, uf);
  std::map<int, ClosedSubset> by_root;
  auto slot = [&](int node) -> ClosedSubset& {
    int r = uf.find(node);
    auto it = by_root.find(r);
    if (it == by_root.end()) it = by_root.emplace(r, ClosedSubset(g)).first;
    return it->second;
  };
  for (int v = 0; v < g.num_vertices(); ++v)
    if (a.has_vertex(v)) slot(v).add_vertex(v);
  for (size_t k = 0; k < p.interval_ref.size(); ++k) {
    auto [e, idx] = p.interval_ref[k];
    const auto& i = a.intervals(e)[idx];
    slot(p.nv + static_cast<int>(k)).add_interval(e, i.from, i.to);
  }
  std::vector<ClosedSubset> out;
  std::set<int> seen;
  auto emit = [&](int node) {
    int r = uf.find(node);
    if (seen.insert(r).second) {
      ClosedSubset c = by_root.at(r);
      c.canonicalize(g);
      out.push_back(std::move(c));
    }
  };
  for (int v = 0; v < g.num_vertices(); ++v)
    if (a.has_vertex(v)) emit(v);
  for (size_t k = 0; k < p.interval_ref.size(); ++k) emit(p.nv + static_cast<int>(k));
  return out;
}

long long component_count(const MetricGraph& g, const ClosedSubset& a) {
  return static_cast<long long>(components(g, a).size());
}

GenusPair genus(const MetricGraph& g) { return {g.betti(), g.total_genus()}; }

GenusPair genus(const MetricGraph& g, const ClosedSubset& a) {
  long long nodes = 0, edges = 0, extra = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (a.has_vertex(v)) {
      ++nodes;
      extra += g.vertex(v).genus;
    }
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& i : a.intervals(e)) {
      if (i.from == i.to) {
        ++nodes;
        continue;
      }
      ++edges;
      if (i.from > 0) ++nodes;
      if (i.to < g.edge(e).length) ++nodes;
    }
  long long b1 = edges - nodes + component_count(g, a);
  return {b1, b1 + extra};
}

std::vector<Direction> boundary_directions(const MetricGraph& g, const ClosedSubset& a) {
  if (a.empty()) input_error("EmptySubset", "subset has no points");
  std::vector<Direction> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!a.has_vertex(v)) continue;
    for (const auto& inc : g.incident(v)) {
      const auto& len = g.edge(inc.edge).length;
      bool covered = false;
      for (const auto& i : a.intervals(inc.edge)) {
        if (inc.sign > 0 && i.from == 0 && i.to > 0) covered = true;
        if (inc.sign < 0 && i.to == len && i.from < len) covered = true;
      }
      if (!covered) out.push_back({Point::at_vertex(v), inc.edge, inc.sign});
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& i : a.intervals(e)) {
      if (i.from > 0) out.push_back({Point::on_edge(e, i.from), e, -1});
      if (i.to < g.edge(e).length) out.push_back({Point::on_edge(e, i.to), e, 1});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> frontier(const MetricGraph& g, const ClosedSubset& a) {
  std::vector<Point> out;
  for (const auto& d : boundary_directions(g, a))
    if (out.empty() || out.back() != d.base) out.push_back(d.base);
  return out;
}

std::vector<Direction> inward_directions(const MetricGraph& g, const ClosedSubset& a) {
  auto outward = boundary_directions(g, a);
  std::vector<Direction> in;
  for (const auto& p : frontier(g, a))
    for (const auto& d : g.directions(p))
      if (!std::binary_search(outward.begin(), outward.end(), d)) in.push_back(d);
  return in;
}

long long degree_restricted(const MetricGraph& g, const Divisor& d, const ClosedSubset& a) {
  long long s = 0;
  for (const auto& [p, n] : d.terms())
    if (a.contains(g, p)) s += n;
  return s;
}

SourceRegion source_region(const MetricGraph& g, const ClosedSubset& a) {
  SourceRegion r;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (a.has_vertex(v) && !g.vertex(v).hidden) r.vertices.push_back(v);
  for (int s = 0; s < g.num_source_edges(); ++s) {
    const auto& se = g.source_edge(s);
    std::vector<SourceRegion::Interval> iv;
    Rational half = se.length / 2;
    for (int part = 0; part < se.parts; ++part) {
      Rational shift = part == 0 ? Rational(0) : half;
      for (const auto& i : a.intervals(se.first + part)) iv.push_back({s, i.from + shift, i.to + shift});
    }
    if (se.parts == 2 && a.has_vertex(g.edge(se.first).head)) iv.push_back({s, half, half});
    std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) { return x.from < y.from; });
    for (const auto& i : iv) {
      if (!r.intervals.empty() && r.intervals.back().source == s && i.from <= r.intervals.back().to)
        r.intervals.back().to = std::max(r.intervals.back().to, i.to);
      else
        r.intervals.push_back(i);
    }
  }
  return r;
}

ClosedSubset from_source_region(const MetricGraph& g, const SourceRegion& r) {
  ClosedSubset a(g);
  for (int v : r.vertices) a.add_vertex(v);
  for (const auto& i : r.intervals) {
    const auto& se = g.source_edge(i.source);
    if (i.from < 0 || i.to > se.length || i.from > i.to)
      input_error("InvalidStructure", "interval [" + to_string(i.from) + ", " + to_string(i.to) + "] outside edge " +
                                          se.id.text);
    if (se.parts == 1) {
      a.add_interval(se.first, i.from, i.to);
      continue;
    }
    Rational half = se.length / 2;
    if (i.from <= half) a.add_interval(se.first, i.from, std::min(i.to, half));
    if (i.to >= half) a.add_interval(se.first + 1, std::max(i.from, half) - half, i.to - half);
  }
  a.canonicalize(g);
  return a;
}

}  // namespace tropws
