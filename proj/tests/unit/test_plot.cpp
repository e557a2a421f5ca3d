#include "../fixtures.hpp"

#include "tropws/augmented.hpp"
#include "tropws/plot.hpp"

#include <doctest.h>

using namespace fixtures;

namespace {

size_t count(const std::string& s, const std::string& what) {
  size_t n = 0;
  for (size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("plain drawing") {
  auto g = complete(4);
  std::string svg = render_svg(g);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "stroke=\"black\"") == 6);
  CHECK(count(svg, "fill=\"red\"") == 0);
  CHECK(svg == render_svg(g));
}

TEST_CASE("locus components are highlighted") {
  auto g = barbell();
  WLocus l = locus(g, canonical_divisor(g));
  std::string svg = render_svg(g, &l);
  CHECK(count(svg, "stroke=\"red\"") == 1);
  CHECK(count(svg, "fill=\"red\">1</text>") == 3);
  CHECK(svg == render_svg(g, &l));
  CHECK(svg.find(">bridge<") == std::string::npos);
  CHECK(svg.find(">u1</text>") != std::string::npos);
}

TEST_CASE("hidden loop midpoints are not drawn") {
  auto g = augmented_cycle(2);
  WLocus l = canonical_locus(g);
  std::string svg = render_svg(g, &l);
  CHECK(svg.find("#mid") == std::string::npos);
  CHECK(count(svg, "fill=\"red\">6</text>") == 1);
}
