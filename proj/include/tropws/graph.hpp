#pragma once

#include "tropws/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropws {

// Identifier as it appeared in the input file. JSON numbers and strings are
// both accepted; `numeric` remembers which so output reproduces the input.
struct Id {
  std::string text;
  bool numeric = false;

  friend bool operator==(const Id& a, const Id& b) { return a.text == b.text; }
};

struct GraphSpec {
  struct VertexSpec {
    Id id;
    long long genus = 0;
  };
  struct EdgeSpec {
    Id id;
    Id tail, head;
    Rational length;
  };
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
};

// A point of the working model: either a vertex, or an interior point of a
// working edge at offset in (0, length) measured from the edge's tail.
struct Point {
  int vertex = -1;
  int edge = -1;
  Rational offset;

  static Point at_vertex(int v) { return Point{v, -1, Rational(0)}; }
  static Point on_edge(int e, const Rational& t) { return Point{-1, e, t}; }

  bool is_vertex() const { return vertex >= 0; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.vertex == b.vertex && a.edge == b.edge && a.offset == b.offset;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.offset < b.offset;
  }
};

// Unit tangent direction at `base` along working edge `edge`; sign +1 points
// toward the edge's head (increasing offset), -1 toward its tail.
struct Direction {
  Point base;
  int edge = -1;
  int sign = 1;

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.base == b.base && a.edge == b.edge && a.sign == b.sign;
  }
  friend bool operator<(const Direction& a, const Direction& b) {
    if (a.base != b.base) return a.base < b.base;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.sign < b.sign;
  }
};

// Metric graph stored on a loopless working model: every loop of the input
// is split in two by a hidden midpoint vertex. Hidden vertices are internal
// and never appear in reports.
class MetricGraph {
 public:
  struct Vertex {
    Id id;
    long long genus = 0;
    bool hidden = false;
  };
  struct Edge {
    int tail = -1, head = -1;
    Rational length;
    int source = -1;  // index into source_edges()
    int part = 0;     // 0 or 1 for halves of a loop
  };
  struct SourceEdge {
    Id id;
    int tail = -1, head = -1;
    Rational length;
    int first = -1;  // first working edge
    int parts = 1;   // 2 for loops
  };
  struct Incidence {
    int edge;
    int sign;  // direction leaving the vertex along `edge`
  };

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_source_edges() const { return static_cast<int>(source_edges_.size()); }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const SourceEdge& source_edge(int s) const { return source_edges_[s]; }
  const std::vector<Incidence>& incident(int v) const { return incident_[v]; }

  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_source_edge(const std::string& id) const;

  // First Betti number of the whole graph, and total genus including vertex genera.
  long long betti() const { return num_edges() - num_vertices() + 1; }
  long long total_genus() const;
  bool augmented() const;

  // Point at offset t along a source edge (0 <= t <= length), normalized.
  Point source_point(int source, const Rational& t) const;
  // Inverse of source_point for points interior to the working model or hidden vertices.
  std::pair<int, Rational> to_source(const Point& p) const;

  // Normalizes an edge offset: endpoints become vertices.
  Point normalize(int edge, const Rational& t) const;
  void check_point(const Point& p) const;

  int valence(const Point& p) const;
  std::vector<Direction> directions(const Point& p) const;

  // Lowest vertex id (numeric order if both ids numeric); used as default base point.
  int lowest_vertex() const;

  // Graph with the same shape and all lengths multiplied by lambda.
  MetricGraph scaled(const Rational& lambda) const;

  friend MetricGraph build_graph(const GraphSpec& spec);
  GraphSpec spec() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<SourceEdge> source_edges_;
  std::vector<std::vector<Incidence>> incident_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> edge_index_;
};

MetricGraph build_graph(const GraphSpec& spec);

// Finite integer combination of points. Zero coefficients are never stored.
class Divisor {
 public:
  using Map = std::map<Point, long long>;

  void add(const Point& p, long long n);
  long long operator()(const Point& p) const;
  long long degree() const;
  bool effective() const;
  bool empty() const { return c_.empty(); }
  const Map& terms() const { return c_; }

  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator*(long long k) const;
  Divisor operator-() const { return *this * -1; }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.c_ < b.c_; }

 private:
  Map c_;
};

Divisor canonical_divisor(const MetricGraph& g);
// Sum of genus(v) (v) over vertices.
Divisor genus_divisor(const MetricGraph& g);

// Closed subset of the working model: a vertex set plus per-edge closed
// intervals [a, b] with 0 <= a <= b <= length.
class ClosedSubset {
 public:
  struct Interval {
    Rational from, to;
  };

  ClosedSubset() = default;
  explicit ClosedSubset(const MetricGraph& g);

  static ClosedSubset whole(const MetricGraph& g);
  static ClosedSubset single(const MetricGraph& g, const Point& p);

  void add_vertex(int v);
  void add_interval(int edge, const Rational& from, const Rational& to);
  void add_point(const Point& p);
  void unite(const ClosedSubset& o);
  // Merges touching intervals and absorbs endpoint vertices.
  void canonicalize(const MetricGraph& g);

  bool has_vertex(int v) const { return vertices_[v]; }
  const std::vector<Interval>& intervals(int e) const { return intervals_[e]; }
  bool empty() const;
  bool contains(const MetricGraph& g, const Point& p) const;
  bool contains(const MetricGraph& g, const ClosedSubset& o) const;
  bool intersects(const MetricGraph& g, const ClosedSubset& o) const;

  friend bool operator==(const ClosedSubset& a, const ClosedSubset& b);

 private:
  std::vector<char> vertices_;
  std::vector<std::vector<Interval>> intervals_;
};

// Connected components of a canonical closed subset.
std::vector<ClosedSubset> components(const MetricGraph& g, const ClosedSubset& a);

struct GenusPair {
  long long betti = 0;
  long long augmented = 0;
};
GenusPair genus(const MetricGraph& g);
GenusPair genus(const MetricGraph& g, const ClosedSubset& a);
long long component_count(const MetricGraph& g, const ClosedSubset& a);

// Outgoing tangent directions of a closed subset.
std::vector<Direction> boundary_directions(const MetricGraph& g, const ClosedSubset& a);
// Tangent directions pointing into the interior from its frontier (for an open set
// given as the interior of `a`): directions at frontier points of `a` that enter `a`.
std::vector<Direction> inward_directions(const MetricGraph& g, const ClosedSubset& a);
// Points of `a` where some outgoing direction leaves `a`.
std::vector<Point> frontier(const MetricGraph& g, const ClosedSubset& a);

long long degree_restricted(const MetricGraph& g, const Divisor& d, const ClosedSubset& a);

// A closed subset in input coordinates: visible vertices plus intervals on
// source edges, with loop halves glued back together at their hidden midpoint.
struct SourceRegion {
  struct Interval {
    int source = -1;
    Rational from, to;
    friend bool operator==(const Interval& a, const Interval& b) {
      return a.source == b.source && a.from == b.from && a.to == b.to;
    }
  };
  std::vector<int> vertices;
  std::vector<Interval> intervals;

  friend bool operator==(const SourceRegion& a, const SourceRegion& b) {
    return a.vertices == b.vertices && a.intervals == b.intervals;
  }
};

SourceRegion source_region(const MetricGraph& g, const ClosedSubset& a);
ClosedSubset from_source_region(const MetricGraph& g, const SourceRegion& r);

}  // namespace tropws
