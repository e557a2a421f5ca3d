#pragma once

#include "tropws/chipfire.hpp"

#include <optional>
#include <vector>

namespace tropws::detail {

using VertexSlopes = std::vector<std::vector<long long>>;

// Chip-firing by capped distance functions until D is effective away from x.
// Returns the new divisor and the slope gained at x in every direction.
std::pair<Divisor, long long> semi_reduce(const MetricGraph& g, const Divisor& d, const Point& x);

struct ExactRun {
  Divisor reduced;
  std::vector<long long> base_slopes;  // aligned with g.directions(x)
  VertexSlopes vslope;
  long long events = 0;
};

// Burning from x starting at `start`, which must be effective away from x.
// `vslope0` seeds the tracked slopes at vertices (canonical mode); otherwise
// every direction at x starts at `base_slope0`.
ExactRun run_exact(const MetricGraph& g, const Divisor& start, const VertexSlopes* vslope0, const Point& x,
                   long long base_slope0, bool canonical);

struct SymbolicRun {
  long long base_chips = 0;
  long long arrivals[2] = {0, 0};  // chips reaching the base from the tail side / head side
  std::optional<Rational> horizon;
};

// Burning from the moving point t0 + sign*delta on working edge e, starting at
// an effective divisor. The result holds for all delta in (0, horizon).
SymbolicRun run_symbolic(const MetricGraph& g, const Divisor& start, const VertexSlopes* vslope0, int e,
                         const Rational& t0, int sign, bool canonical);

}  // namespace tropws::detail
