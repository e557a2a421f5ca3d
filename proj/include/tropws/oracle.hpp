#pragma once

#include "tropws/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tropws::oracle {

// Finite multigraph with unit edge lengths.
struct CombGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;  // neighbour list with multiplicity

  static CombGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  long long genus() const;
  bool connected() const;
};

using CombDivisor = std::vector<long long>;

// Unit subdivision of a metric graph. `scale` is the number of unit edges per
// unit of length, so every edge of length l becomes l*scale unit edges.
struct Subdivision {
  CombGraph graph;
  Integer scale;
  std::vector<int> vertex_of;                 // working vertex -> node
  std::vector<std::vector<int>> chain;        // working edge -> nodes from tail to head
  int node(const MetricGraph& g, const Point& p) const;
  CombDivisor divisor(const MetricGraph& g, const Divisor& d) const;
};

// Subdivides at the lcm of all length and point denominators, times `extra`.
// Throws Error(SubdivisionLimit) when the node count would exceed the cap in
// TROPWS_MAX_SUBDIVISION (default 200000).
Subdivision subdivide(const MetricGraph& g, const std::vector<Point>& points, long long extra = 1);

CombDivisor discrete_reduce(const CombGraph& g, const CombDivisor& d, int q);
long long bn_rank(const CombGraph& g, const CombDivisor& d);

// Canonical divisor val - 2.
CombDivisor comb_canonical(const CombGraph& g);

// Weight of the open edge u-v computed from the reduced divisors at its ends:
// r - slope of f_uv from v toward u, where div f_uv = D_u - D_v.
long long edge_interior_weight(const CombGraph& g, const CombDivisor& d, long long r, int u, int v);

struct ScanParams {
  std::string family = "regular";  // "regular" or "erdos-renyi"
  int n = 12;
  int degree = 3;
  double p = 0.3;
  int count = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct ScanRecord {
  int seed_index = 0;
  int n = 0;
  int m = 0;
  long long genus = 0;
  bool wp_free = false;
  std::vector<long long> vertex_weights;  // K_v(v) - (g - 1)
  int rejected = 0;                       // resampled draws before this graph
};

struct ScanSummary {
  std::vector<ScanRecord> records;
  int wp_free = 0;
  long long rejected = 0;
};

// Random graph for one seed index; deterministic in (params, index).
CombGraph sample_graph(const ScanParams& params, int index, int* rejected = nullptr);
ScanRecord scan_graph(const CombGraph& g, int index);
ScanSummary scan_vertex_weierstrass(const ScanParams& params);

}  // namespace tropws::oracle
