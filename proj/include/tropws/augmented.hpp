#pragma once

#include "tropws/weierstrass.hpp"

namespace tropws {

enum class Series { Complete, Generic, Canonical };

struct GenericView {
  Divisor d0;  // D minus the genus function
  long long rank = -1;
  WLocus locus;
};

// Functions keeping D + div f >= genus: the complete series of D0, with the
// genus vertices merged into the locus.
GenericView generic_view(const MetricGraph& g, const Divisor& d, int jobs = 1);

// Both membership conditions for the canonical semimodule, checked at
// vertices and breakpoints of f.
bool canonical_membership(const MetricGraph& g, const PLFunction& f);

// Reduced coefficient at x for the canonical semimodule.
long long canonical_reduced_coeff(const MetricGraph& g, const Point& x);

// Minimum slopes at x for the canonical semimodule, aligned with g.directions(x).
std::vector<long long> canonical_slopes(const MetricGraph& g, const Point& x);

// Locus and weights of the canonical semimodule (rank g - 1).
WLocus canonical_locus(const MetricGraph& g, int jobs = 1);

}  // namespace tropws
