#pragma once

#include "tropws/graph.hpp"

#include <vector>

namespace tropws {

// Piecewise linear function with integer slopes, stored per working edge as
// breakpoints (offset, value) including both endpoints.
struct PLFunction {
  std::vector<Rational> vertex_values;
  std::vector<std::vector<std::pair<Rational, Rational>>> pieces;

  Rational value(const MetricGraph& g, const Point& p) const;
  Rational slope(const MetricGraph& g, const Direction& d) const;
  Divisor divisor(const MetricGraph& g) const;
};

struct SlopeReport {
  Point base;
  std::vector<std::pair<Direction, long long>> minimum;

  long long at(const Direction& d) const;
  long long sum() const;
};

struct Reduction {
  Divisor reduced;  // D_x
  SlopeReport slopes;
  long long value = 0;  // D_x(x)
};

// x-reduced divisor by metric burning, with minimum slopes at x.
Reduction reduce(const MetricGraph& g, const Divisor& d, const Point& x);

// The function f_x with D_x = D + div(f_x) and f_x(x) = 0.
PLFunction reduction_function(const MetricGraph& g, const Divisor& d, const Point& x, const Divisor& reduced);

// Sorted slope set of Rat(D) along a direction; requires r = rank(D) >= 0.
std::vector<long long> slope_set(const MetricGraph& g, const Divisor& d, const Direction& nu, long long r);

bool is_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b);

long long rank(const MetricGraph& g, const Divisor& d);

}  // namespace tropws
