#pragma once

#include "tropws/graph.hpp"

#include <string>
#include <vector>

namespace tropws {

struct SlopeSegment {
  Rational upto;  // end of the segment, measured from the orientation's start vertex
  std::vector<long long> slopes;

  friend bool operator==(const SlopeSegment& a, const SlopeSegment& b) {
    return a.upto == b.upto && a.slopes == b.slopes;
  }
};

// Slope data for one oriented source edge as it appears in a file. For a
// loop both ends are the same vertex, so `reverse` selects the orientation.
struct OrientedSlopes {
  Id edge;
  Id from_vertex;
  bool reverse = false;
  std::vector<SlopeSegment> segments;
};

struct SlopeStructureSpec {
  long long rank = 0;
  std::vector<OrientedSlopes> edges;
};

// Validated structure: per source edge, segments oriented from tail to head.
class SlopeStructure {
 public:
  long long rank() const { return rank_; }
  const std::vector<SlopeSegment>& segments(int source) const { return forward_[source]; }

  // Slopes along a tangent direction of the working model, oriented away from its base.
  std::vector<long long> outgoing(const MetricGraph& g, const Direction& d) const;
  // Points of the working model where the slope vector changes.
  std::vector<Point> breakpoints(const MetricGraph& g) const;

  friend SlopeStructure normalize_slopes(const MetricGraph& g, const SlopeStructureSpec& spec);
  SlopeStructureSpec spec(const MetricGraph& g) const;

 private:
  long long rank_ = 0;
  std::vector<std::vector<SlopeSegment>> forward_;
};

struct Issue {
  std::string name;
  std::string detail;
};

// Every problem found: SlopeCountMismatch, PairingViolation, BreakpointMismatch
// or InvalidStructure. Empty means valid.
std::vector<Issue> validate_slope_structure(const MetricGraph& g, const SlopeStructureSpec& spec);

// Throws Error(input) with the first issue.
SlopeStructure normalize_slopes(const MetricGraph& g, const SlopeStructureSpec& spec);

struct Ramification {
  Direction direction;
  std::vector<long long> alpha;  // s_j - s_0 - j
};

struct CllsResult {
  Divisor w;
  long long rank = 0;
  long long expected_degree = 0;  // (r+1)(d - r + rg)
  std::vector<Ramification> ramification;  // directions with some alpha_j != 0
};

CllsResult clls_divisor(const MetricGraph& g, const SlopeStructure& s, const Divisor& d);
bool is_g_effective(const MetricGraph& g, const SlopeStructure& s, const Divisor& d);

struct ObstructionReport {
  bool effective = false;
  bool principal = false;
  Divisor w;
  Divisor defect;  // W - (r+1)D - r(r+1)/2 K

  bool realizable_candidate() const { return effective && principal; }
};

ObstructionReport realizability_obstructions(const MetricGraph& g, const SlopeStructure& s, const Divisor& d);

// (r+1)(deg D|_A + (g(A) - 1) r - sum s_0) - sum of all alpha over the outgoing directions of A.
long long clls_restricted_formula(const MetricGraph& g, const SlopeStructure& s, const Divisor& d,
                                  const ClosedSubset& a);

}  // namespace tropws
