#include "linalg.hpp"

#include <stdexcept>
#include <utility>

namespace tropws::detail {

std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c)
        if (a[col][c] != 0) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace tropws::detail
