#pragma once

#include "reduce_internal.hpp"

#include <vector>

namespace tropws::detail {

// Reduced coefficient D_x(x) as a function of x: exact values at vertices and
// at every cut point, and a constant value on each open piece between cuts.
struct Profile {
  std::vector<long long> vertex_value;
  struct EdgeProfile {
    std::vector<Rational> cuts;       // 0 = c_0 < c_1 < ... < c_k = length
    std::vector<long long> at_cut;    // values at interior cuts c_1..c_{k-1}
    std::vector<long long> on_piece;  // values on (c_i, c_{i+1})
  };
  std::vector<EdgeProfile> edges;
  long long events = 0;
};

// `start` must have non-negative rank. In canonical mode it must be K and the
// canonical-semimodule burning rule is used.
Profile sweep_profile(const MetricGraph& g, const Divisor& start, bool canonical, int jobs);

// Reduction at x in canonical mode from K; minimum slopes at x aligned with g.directions(x).
ExactRun canonical_run(const MetricGraph& g, const Point& x);

}  // namespace tropws::detail
