#include "../fixtures.hpp"

#include "tropws/chipfire.hpp"

#include <doctest.h>

using namespace fixtures;

TEST_CASE("K4 reduction at a vertex") {
  auto g = complete(4);
  Divisor k = canonical_divisor(g);
  Point v = vtx(g, "0");
  Reduction red = reduce(g, k, v);
  CHECK(red.reduced == single(v, 4));
  CHECK(red.value == 4);
  REQUIRE(red.slopes.minimum.size() == 3);
  for (const auto& [dir, s] : red.slopes.minimum) CHECK(s == -1);
  CHECK(red.slopes.sum() == -3);

  PLFunction f = reduction_function(g, k, v, red.reduced);
  CHECK(k + f.divisor(g) == red.reduced);
  CHECK(f.value(g, v) == 0);
  for (const auto& [dir, s] : red.slopes.minimum) CHECK(f.slope(g, dir) == s);
}

TEST_CASE("reduction at an interior point") {
  auto g = complete(4);
  Divisor k = canonical_divisor(g);
  Point x = at(g, "0-1", Rational(1, 2));
  Reduction red = reduce(g, k, x);
  CHECK(red.value == 2);
  CHECK(red.reduced(x) == 2);
  CHECK(red.slopes.sum() == -2);
  for (const auto& [dir, s] : red.slopes.minimum) CHECK(s == -1);
}

TEST_CASE("cycle: group law and ranks") {
  auto g = Builder().v("v").e("c", "v", "v").build();
  Point p = at(g, "c", Rational(1, 5)), q = at(g, "c", Rational(1, 2));
  Point v = vtx(g, "v"), sum = at(g, "c", Rational(7, 10));
  CHECK(is_equivalent(g, single(p) + single(q), single(v) + single(sum)));
  CHECK_FALSE(is_equivalent(g, single(p), single(v)));
  CHECK(rank(g, single(p)) == 0);
  CHECK(rank(g, single(p) + single(q)) == 1);
  CHECK(rank(g, single(p) - single(v)) == -1);
  CHECK(rank(g, Divisor()) == 0);
  Reduction red = reduce(g, single(p), v);
  CHECK(red.reduced == single(p));
  CHECK(red.value == 0);
}

TEST_CASE("ranks on standard graphs") {
  auto k4 = complete(4);
  CHECK(rank(k4, canonical_divisor(k4)) == 2);
  CHECK(rank(k4, single(vtx(k4, "0"))) == 0);
  CHECK(rank(k4, single(vtx(k4, "0"), 2)) == 0);
  CHECK(rank(k4, single(vtx(k4, "0")) + single(vtx(k4, "1")) + single(vtx(k4, "2"))) == 1);
  auto tree = Builder().v("a").v("b").v("c").e("ab", "a", "b").e("bc", "b", "c", 2).build();
  CHECK(rank(tree, single(at(tree, "bc", Rational(1, 3)), 3)) == 3);
  for (int h = 2; h <= 5; ++h) {
    auto d = dipole(h);
    CHECK(rank(d, canonical_divisor(d)) == h - 1);
  }
  auto b = barbell();
  CHECK(rank(b, canonical_divisor(b)) == 1);
}

TEST_CASE("the edge-gap function is principal") {
  // u, v each joined twice to t; e = uv of length 1. E = 3(x) - (u) - (v) - (y), y = 3x - 1.
  auto g = Builder().v("t").v("u").v("v")
               .e("u1", "u", "t").e("u2", "u", "t", 2).e("v1", "v", "t", Rational(1, 2)).e("v2", "v", "t")
               .e("e", "u", "v")
               .build();
  for (Rational x : {Rational(1, 3), Rational(1, 2), Rational(5, 9), Rational(2, 3)}) {
    Divisor e = single(at(g, "e", x), 3) - single(vtx(g, "u")) - single(vtx(g, "v")) - single(at(g, "e", 3 * x - 1));
    CHECK(is_equivalent(g, e, Divisor()));
  }
  Divisor off = single(at(g, "e", Rational(1, 4)), 3) - single(vtx(g, "u")) - single(vtx(g, "v")) -
                single(at(g, "e", Rational(1, 2)));
  CHECK_FALSE(is_equivalent(g, off, Divisor()));
}

TEST_CASE("slope sets are consecutive away from the locus") {
  auto g = complete(4);
  Divisor k = canonical_divisor(g);
  Point x = at(g, "0-1", Rational(1, 2));
  for (const auto& nu : g.directions(x)) CHECK(slope_set(g, k, nu, 2) == std::vector<long long>{-1, 0, 1});
  for (const auto& nu : g.directions(vtx(g, "0"))) CHECK(slope_set(g, k, nu, 2) == std::vector<long long>{-1, 0, 1});
  CHECK(error_name([&] { slope_set(g, k, g.directions(x)[0], -1); }) == "NegativeRank");
}

TEST_CASE("slope sets inside the locus have at least r + 2 values") {
  auto g = dipole(3);
  Divisor k = canonical_divisor(g);
  Point x = at(g, "e0", Rational(1, 2));
  for (const auto& nu : g.directions(x)) {
    auto s = slope_set(g, k, nu, 2);
    CHECK(s.size() >= 4);
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] == s[i - 1] + 1);
  }
}

TEST_CASE("slope set at a locus boundary, pointing out") {
  auto g = dipole(3);
  Divisor k = canonical_divisor(g);
  Point x = at(g, "e0", Rational(1, 3));
  int hits = 0;
  for (const auto& nu : g.directions(x))
    if (nu.sign == -1) {
      CHECK(slope_set(g, k, nu, 2) == std::vector<long long>{-2, -1, 0});
      ++hits;
    }
  CHECK(hits == 1);
}

TEST_CASE("slope sets of rank-zero and bridge cases") {
  auto c = Builder().v("v").e("c", "v", "v").build();
  Point p = at(c, "c", Rational(1, 3)), x = at(c, "c", Rational(3, 4));
  for (const auto& nu : c.directions(x)) CHECK(slope_set(c, single(p), nu, 0) == std::vector<long long>{0});

  auto b = barbell();
  Divisor k = canonical_divisor(b);
  Point y = at(b, "bridge", Rational(1, 3));
  for (const auto& nu : b.directions(y)) {
    auto s = slope_set(b, k, nu, 1);
    CHECK(s.size() >= 3);
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] == s[i - 1] + 1);
  }
}

TEST_CASE("reduction on a graph with a loop") {
  auto g = generalized_barbell({1}, {2});
  Divisor d = single(vtx(g, "v"), 2);
  Point x = at(g, "loop0", Rational(1, 3));
  Reduction red = reduce(g, d, x);
  CHECK(red.reduced.degree() == 2);
  CHECK(is_equivalent(g, red.reduced, d));
  CHECK(red.value == d(x) - red.slopes.sum());
  PLFunction f = reduction_function(g, d, x, red.reduced);
  CHECK(d + f.divisor(g) == red.reduced);
}
