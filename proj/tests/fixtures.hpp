#pragma once

#include "tropws/errors.hpp"
#include "tropws/graph.hpp"
#include "tropws/weierstrass.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

using namespace tropws;

struct Builder {
  GraphSpec spec;

  Builder& v(const std::string& id, long long genus = 0) {
    spec.vertices.push_back({Id{id, false}, genus});
    return *this;
  }
  Builder& e(const std::string& id, const std::string& a, const std::string& b, const Rational& len = 1) {
    spec.edges.push_back({Id{id, false}, Id{a, false}, Id{b, false}, len});
    return *this;
  }
  MetricGraph build() const { return build_graph(spec); }
};

inline Point vtx(const MetricGraph& g, const std::string& id) { return Point::at_vertex(*g.find_vertex(id)); }

inline Point at(const MetricGraph& g, const std::string& edge, const Rational& t) {
  return g.source_point(*g.find_source_edge(edge), t);
}

inline Divisor single(const Point& p, long long n = 1) {
  Divisor d;
  d.add(p, n);
  return d;
}

// Complete graph on n vertices, unit lengths. Vertex ids 0..n-1.
inline MetricGraph complete(int n) {
  Builder b;
  for (int i = 0; i < n; ++i) b.v(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.e(std::to_string(i) + "-" + std::to_string(j), std::to_string(i), std::to_string(j));
  return b.build();
}

// Two cycles u1-v1 (edges a1, b1) and u2-v2 (a2, b2) joined by the bridge u1-u2.
inline MetricGraph barbell(const Rational& circle = 1, const Rational& bridge = 1) {
  return Builder()
      .v("u1").v("v1").v("u2").v("v2")
      .e("bridge", "u1", "u2", bridge)
      .e("a1", "u1", "v1", circle / 2).e("b1", "u1", "v1", circle / 2)
      .e("a2", "u2", "v2", circle / 2).e("b2", "u2", "v2", circle / 2)
      .build();
}

// Two vertices joined by g + 1 edges e0..eg.
inline MetricGraph dipole(int genus, long long ga = 0, long long gb = 0) {
  Builder b;
  b.v("u", ga).v("v", gb);
  for (int i = 0; i <= genus; ++i) b.e("e" + std::to_string(i), "u", "v");
  return b.build();
}

// Apex v joined to u and w by two edges each, plus the bottom edge u-w.
inline MetricGraph tent() {
  return Builder()
      .v("v").v("u").v("w")
      .e("vu1", "v", "u").e("vu2", "v", "u")
      .e("vw1", "v", "w").e("vw2", "v", "w")
      .e("uw", "u", "w")
      .build();
}

inline MetricGraph cube() {
  Builder b;
  for (int i = 0; i < 8; ++i) b.v(std::to_string(i));
  for (int i = 0; i < 8; ++i)
    for (int bit : {1, 2, 4})
      if (!(i & bit)) b.e(std::to_string(i) + "-" + std::to_string(i | bit), std::to_string(i), std::to_string(i | bit));
  return b.build();
}

// Central circle B-Bo (two edges), bridges B-C and Bo-Co, theta graphs C-E
// and Co-Eo with three edges each. Unit lengths.
inline MetricGraph two_bridge() {
  return Builder()
      .v("B").v("Bo").v("C").v("Co").v("E").v("Eo")
      .e("top", "B", "Bo").e("bottom", "B", "Bo")
      .e("bridge", "B", "C").e("bridge_o", "Bo", "Co")
      .e("t1", "C", "E").e("t2", "C", "E").e("t3", "C", "E")
      .e("s1", "Co", "Eo").e("s2", "Co", "Eo").e("s3", "Co", "Eo")
      .build();
}

// Apex v with a bridge to each of `cycles` loops.
inline MetricGraph generalized_barbell(const std::vector<Rational>& loops, const std::vector<Rational>& bridges) {
  Builder b;
  b.v("v");
  for (size_t i = 0; i < loops.size(); ++i) {
    std::string w = "w" + std::to_string(i);
    b.v(w).e("bridge" + std::to_string(i), "v", w, bridges[i]).e("loop" + std::to_string(i), w, w, loops[i]);
  }
  return b.build();
}

// Loop of length 1 at a vertex of genus a.
inline MetricGraph augmented_cycle(long long a) { return Builder().v("v", a).e("e", "v", "v").build(); }

// u, v of genera g1, g2; edge alpha: u -> v, edge beta: v -> u.
inline MetricGraph two_point_cycle(long long g1, long long g2, const Rational& alpha, const Rational& beta) {
  return Builder().v("u", g1).v("v", g2).e("alpha", "u", "v", alpha).e("beta", "v", "u", beta).build();
}

// Hexagon A..F with two more hexagons glued along C-D and E-F.
inline MetricGraph three_hexagon() {
  Builder b;
  for (const char* id : {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N"}) b.v(id);
  const char* path[][2] = {{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "E"}, {"E", "F"}, {"F", "A"},
                           {"C", "G"}, {"G", "H"}, {"H", "I"}, {"I", "J"}, {"J", "D"},
                           {"E", "K"}, {"K", "L"}, {"L", "M"}, {"M", "N"}, {"N", "F"}};
  for (auto& p : path) b.e(std::string(p[0]) + p[1], p[0], p[1]);
  return b.build();
}

// Central vertex A with bridges to B, C, D; each of B, C, D sits on a circle
// cut into three unit arcs (B-Bf, B-Bg, Bf-Bg and so on).
inline MetricGraph three_cycle() {
  Builder b;
  b.v("A");
  for (std::string c : {"B", "C", "D"}) {
    b.v(c).v(c + "f").v(c + "g");
    b.e("A" + c, "A", c).e(c + "f", c, c + "f").e(c + "g", c, c + "g").e(c + "fg", c + "f", c + "g");
  }
  return b.build();
}

// "w: v1 v2 e[a,b] ..." with vertices and intervals in input coordinates.
inline std::string describe(const MetricGraph& g, const ClosedSubset& c, long long weight) {
  SourceRegion r = source_region(g, c);
  std::vector<std::string> parts;
  for (int v : r.vertices) parts.push_back(g.vertex(v).id.text);
  for (const auto& i : r.intervals)
    parts.push_back(g.source_edge(i.source).id.text + "[" + to_string(i.from) + "," + to_string(i.to) + "]");
  std::sort(parts.begin(), parts.end());
  std::ostringstream out;
  out << weight << ":";
  for (const auto& p : parts) out << " " << p;
  return out.str();
}

inline std::multiset<std::string> describe(const MetricGraph& g, const WLocus& l) {
  std::multiset<std::string> out;
  for (const auto& c : l.components) out.insert(describe(g, c.region, c.weight));
  return out;
}

inline std::multiset<long long> weights(const WLocus& l) {
  std::multiset<long long> w;
  for (const auto& c : l.components) w.insert(c.weight);
  return w;
}

// Name of the tropws::Error thrown by f, or "" when nothing is thrown.
template <class F>
std::string error_name(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

}  // namespace fixtures
