#pragma once

#include "tropws/rational.hpp"

#include <vector>

namespace tropws::detail {

// Solves A x = b exactly by Gaussian elimination. Throws std::runtime_error if singular.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace tropws::detail
