#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../properties.hpp"

namespace {

// Seeds differ from the acceptance run so the two cover different instances.
constexpr int kCount = 250;

void expect(const props::Outcome& o) {
  std::string detail = o.name;
  for (const auto& f : o.failures) detail += "\n  " + f;
  INFO(detail);
  CHECK(o.failures.empty());
  CHECK(o.instances - o.skipped >= kCount * 4 / 5);
}

}  // namespace

TEST_CASE("total weight") { expect(props::total_weight(9001, kCount)); }
TEST_CASE("positivity") { expect(props::positivity(9002, kCount)); }
TEST_CASE("locus complement is a forest") { expect(props::forest(9003, kCount)); }
TEST_CASE("measure lower bound") { expect(props::lower_bound(9004, kCount)); }
TEST_CASE("pairing of slopes") { expect(props::pairing(9005, kCount)); }
TEST_CASE("reduction identity") { expect(props::reduction_identity(9006, kCount)); }
TEST_CASE("Riemann-Roch") { expect(props::riemann_roch(9007, kCount)); }
TEST_CASE("agreement with the discrete oracle") { expect(props::oracle_agreement(9008, kCount)); }
TEST_CASE("subdivision invariance") { expect(props::subdivision_invariance(9009, kCount)); }
TEST_CASE("scaling invariance") { expect(props::scaling_invariance(9010, kCount)); }
