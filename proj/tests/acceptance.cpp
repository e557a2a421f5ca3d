// Acceptance report: one line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"
#include "properties.hpp"

#include "tropws/augmented.hpp"
#include "tropws/clls.hpp"
#include "tropws/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace fixtures;
using Strings = std::multiset<std::string>;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
};

std::string join(const Strings& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " | ") + x;
  return out;
}

void expect_locus(Result& res, const std::string& name, const MetricGraph& g, const WLocus& l, const Strings& want) {
  Strings got = describe(g, l);
  res.require(got == want, name + ": got " + join(got));
}

long long total_of(const WLocus& l) {
  long long t = 0;
  for (const auto& c : l.components) t += c.weight;
  return t;
}

Result k4() {
  Result res;
  auto g = complete(4);
  WLocus l = locus(g, canonical_divisor(g));
  expect_locus(res, "K4", g, l, {"2: 0", "2: 1", "2: 2", "2: 3"});
  res.require(total_of(l) == 3 * 3 - 1, "total");
  return res;
}

Result barbell_fixture() {
  Result res;
  auto g = barbell();
  expect_locus(res, "barbell", g, locus(g, canonical_divisor(g)), {"1: v1", "1: v2", "1: bridge[0,1] u1 u2"});
  return res;
}

Result dipoles() {
  Result res;
  for (int h = 2; h <= 6; ++h) {
    auto g = dipole(h);
    Strings want;
    for (int i = 0; i <= h; ++i)
      want.insert(std::to_string(h - 1) + ": e" + std::to_string(i) + "[" + to_string(Rational(1, h)) + "," +
                  to_string(Rational(h - 1, h)) + "]");
    WLocus l = locus(g, canonical_divisor(g));
    expect_locus(res, "dipole " + std::to_string(h), g, l, want);
    res.require(total_of(l) == h * h - 1, "dipole total");
  }
  return res;
}

Result tents() {
  Result res;
  auto g = tent();
  Divisor k = canonical_divisor(g);
  expect_locus(res, "tent K", g, locus(g, k),
               {"2: u", "2: w", "1: vu1[1/3,1/3]", "1: vu2[1/3,1/3]", "1: vw1[1/3,1/3]", "1: vw2[1/3,1/3]"});
  expect_locus(res, "tent K+(v)", g, locus(g, k + single(vtx(g, "v"))),
               {"9: u v vu1[0,1] vu2[0,1] vw1[0,1] vw2[0,1] w"});
  expect_locus(res, "tent K+(u)", g, locus(g, k + single(vtx(g, "u"))),
               {"7: u uw[0,1] vu1[1/3,1] vu2[1/3,1] w", "1: vw1[1/3,1/3]", "1: vw2[1/3,1/3]"});
  return res;
}

Result cube_fixture() {
  Result res;
  auto g = cube();
  Strings want;
  for (int s = 0; s < g.num_source_edges(); ++s) want.insert("2: " + g.source_edge(s).id.text + "[2/5,3/5]");
  WLocus l = locus(g, canonical_divisor(g));
  expect_locus(res, "cube", g, l, want);
  res.require(total_of(l) == 24, "cube total");
  return res;
}

Result two_bridge_fixture() {
  Result res;
  auto g = two_bridge();
  WLocus l = locus(g, canonical_divisor(g));
  Strings want = {"12: B Bo C Co bottom[0,1] bridge[0,1] bridge_o[0,1] s1[0,1/5] s2[0,1/5] s3[0,1/5] t1[0,1/5] "
                  "t2[0,1/5] t3[0,1/5] top[0,1]"};
  for (const char* e : {"s1", "s2", "s3", "t1", "t2", "t3"}) want.insert(std::string("2: ") + e + "[3/5,4/5]");
  expect_locus(res, "two-bridge", g, l, want);
  ClosedSubset support = l.support(g);
  for (const char* b : {"bridge", "bridge_o"}) {
    int s = *g.find_source_edge(b);
    ClosedSubset edge(g);
    edge.add_interval(g.source_edge(s).first, 0, g.source_edge(s).length);
    edge.canonicalize(g);
    res.require(support.contains(g, edge), std::string(b) + " not in the locus");
  }
  res.require(total_of(l) == 24, "total");
  return res;
}

// Smallest reduced coefficient over the nodes of a subdivision.
long long grid_minimum(const MetricGraph& g, const Divisor& d, long long extra) {
  auto sub = oracle::subdivide(g, {}, extra);
  auto cd = sub.divisor(g, d);
  long long best = -1;
  for (int q = 0; q < sub.graph.n; ++q) {
    long long c = oracle::discrete_reduce(sub.graph, cd, q)[q];
    if (best < 0 || c < best) best = c;
  }
  return best;
}

void whole_graph_case(Result& res, const std::string& name, const MetricGraph& g, const Divisor& d, long long extra) {
  WLocus l = locus(g, d);
  res.require(l.components.size() == 1 && l.components[0].region == ClosedSubset::whole(g), name + " locus is not the graph");
  WLocus b = b_modified_locus(g, d);
  long long deg = d.degree(), genus = g.total_genus();
  res.require(total_of(b) == deg - b.b + b.b * genus, name + " b-modified total");
  long long grid = grid_minimum(g, d, extra);
  res.require(grid == b.b, name + " b = " + std::to_string(b.b) + " but grid minimum " + std::to_string(grid));
}

Result whole_graph_cases() {
  Result res;
  for (int n : {5, 6}) {
    auto g = complete(n);
    whole_graph_case(res, "K" + std::to_string(n), g, canonical_divisor(g), 10);
  }
  auto g = generalized_barbell({1, 2, Rational(1, 3)}, {1, Rational(1, 2), 3});
  for (int d = 3; d <= 5; ++d) whole_graph_case(res, "barbell d=" + std::to_string(d), g, single(vtx(g, "v"), d), 10);
  return res;
}

std::string point_text(const Rational& t) { return "e[" + to_string(t) + "," + to_string(t) + "]"; }

Result augmented_cycles() {
  Result res;
  for (long long a = 1; a <= 4; ++a) {
    auto g = augmented_cycle(a);
    Strings canon = {std::to_string(a * a + a) + ": v"};
    for (long long k = 1; k <= a; ++k) canon.insert("1: " + point_text(Rational(k, a + 1)));
    expect_locus(res, "canonical a=" + std::to_string(a), g, canonical_locus(g), canon);
    Strings gen = {std::to_string(a * a + 1) + ": v"};
    for (long long k = 1; k < a; ++k) gen.insert("1: " + point_text(Rational(k, a)));
    expect_locus(res, "generic a=" + std::to_string(a), g, generic_view(g, canonical_divisor(g)).locus, gen);
  }
  return res;
}

Result two_point_cycle_fixture() {
  Result res;
  const long long g1 = 4, g2 = 3, genus = g1 + g2 + 1;
  const Rational alpha(7, 10), beta(13, 10), len = alpha + beta;
  auto g = two_point_cycle(g1, g2, alpha, beta);
  // Position on [0, alpha + beta) with u = 0 and v = alpha.
  auto where = [&](Rational p) {
    while (p < 0) p += len;
    while (p >= len) p -= len;
    return p < alpha ? "alpha[" + to_string(p) + "," + to_string(p) + "]"
                     : "beta[" + to_string(p - alpha) + "," + to_string(p - alpha) + "]";
  };
  Strings want = {std::to_string(g1 * genus) + ": u", std::to_string(g2 * genus) + ": v"};
  for (long long i = 1; i <= g1; ++i)
    want.insert("1: " + where(alpha + Rational(i, genus) * beta - Rational(g1 + 1 - i, genus) * alpha));
  for (long long j = 1; j <= g2; ++j)
    want.insert("1: " + where(Rational(j, genus) * alpha - Rational(g2 + 1 - j, genus) * beta));
  expect_locus(res, "two-point cycle", g, canonical_locus(g), want);
  return res;
}

Result augmented_dipoles() {
  Result res;
  for (int h = 2; h <= 4; ++h) {
    auto g = dipole(h, 1, 1);
    std::string w = std::to_string(2 * h + 2);
    Strings want = {w + ": u", w + ": v"};
    for (int i = 0; i <= h; ++i)
      want.insert(std::to_string(h - 1) + ": e" + std::to_string(i) + "[" + to_string(Rational(2, h + 2)) + "," +
                  to_string(Rational(h, h + 2)) + "]");
    WLocus l = canonical_locus(g);
    expect_locus(res, "a=b=1 h=" + std::to_string(h), g, l, want);
    res.require(total_of(l) == (h + 2) * (h + 2) - 1, "total");
  }
  auto g = dipole(2, 3, 5);
  Strings want = {"50: v", "34: e0[0,1/10] e1[0,1/10] e2[0,1/10] u"};
  for (int i = 0; i < 3; ++i) {
    std::string e = "e" + std::to_string(i);
    want.insert("1: " + e + "[3/5,3/5]");
    want.insert("2: " + e + "[3/10,2/5]");
    want.insert("2: " + e + "[4/5,9/10]");
  }
  WLocus l = canonical_locus(g);
  expect_locus(res, "a=3 b=5", g, l, want);
  res.require(total_of(l) == 99, "total");
  return res;
}

OrientedSlopes oriented(const std::string& e, const std::string& from, std::vector<SlopeSegment> segs) {
  return {Id{e, false}, Id{from, false}, false, std::move(segs)};
}

Result clls_fixtures() {
  Result res;
  {
    auto g = barbell();
    SlopeStructureSpec spec{1, {oriented("bridge", "u1", {{1, {-1, 1}}})}};
    for (const char* e : {"a1", "b1"}) spec.edges.push_back(oriented(e, "u1", {{Rational(1, 2), {0, 1}}}));
    for (const char* e : {"a2", "b2"}) spec.edges.push_back(oriented(e, "u2", {{Rational(1, 2), {0, 1}}}));
    SlopeStructure s = normalize_slopes(g, spec);
    Divisor k = canonical_divisor(g);
    Divisor want = single(vtx(g, "u1")) + single(vtx(g, "u2")) + single(vtx(g, "v1"), 2) + single(vtx(g, "v2"), 2);
    res.require(clls_divisor(g, s, k).w == want, "barbell W");
    auto ob = realizability_obstructions(g, s, k);
    res.require(ob.effective && ob.principal, "barbell obstructions");
  }
  const std::vector<std::vector<Rational>> choices = {
      {0, 0, 0, 0}, {Rational(1, 12), Rational(1, 6), 0, Rational(1, 10)}, {Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 6)}};
  for (const auto& t : choices) {
    auto g = dipole(3);
    SlopeStructureSpec spec{2, {}};
    Divisor want;
    for (int i = 0; i < 4; ++i) {
      std::string e = "e" + std::to_string(i);
      std::vector<SlopeSegment> segs = {{Rational(1, 2) - t[i], {0, 1, 2}}};
      if (t[i] > 0) segs.push_back({Rational(1, 2) + t[i], {-1, 0, 1}});
      segs.push_back({1, {-2, -1, 0}});
      spec.edges.push_back(oriented(e, "u", segs));
      want = want + single(at(g, e, Rational(1, 2) - t[i]), 3) + single(at(g, e, Rational(1, 2) + t[i]), 3);
    }
    SlopeStructure s = normalize_slopes(g, spec);
    res.require(clls_divisor(g, s, canonical_divisor(g)).w == want, "dipole W");
  }
  {
    auto g = three_cycle();
    SlopeStructureSpec spec{2, {}};
    for (std::string c : {"B", "C", "D"}) {
      spec.edges.push_back(oriented("A" + c, "A", {{1, {-1, 1, 3}}}));
      spec.edges.push_back(oriented(c + "f", c, {{1, {0, 1, 2}}}));
      spec.edges.push_back(oriented(c + "g", c, {{1, {0, 1, 2}}}));
      spec.edges.push_back(oriented(c + "fg", c + "f", {{1, {-1, 0, 1}}}));
    }
    SlopeStructure s = normalize_slopes(g, spec);
    Divisor k = canonical_divisor(g);
    res.require(clls_divisor(g, s, k).w(vtx(g, "A")) == -3, "three-cycle coefficient at A");
    res.require(!is_g_effective(g, s, k), "three-cycle is g-effective");
  }
  return res;
}

Result property_suite() {
  Result res;
  for (const auto& o : props::suite(20240601, 250)) {
    res.require(o.ok() && o.instances - o.skipped >= 200,
                o.name + " (" + std::to_string(o.instances - o.skipped) + " instances)" +
                    (o.failures.empty() ? "" : ": " + o.failures[0]));
  }
  return res;
}

// Oracle: x is in Wloc(D) iff the discrete reduction at x exceeds r.
bool oracle_in_locus(const MetricGraph& g, const Divisor& d, const Point& x, long long r) {
  auto sub = oracle::subdivide(g, {x});
  int q = sub.node(g, x);
  return oracle::discrete_reduce(sub.graph, sub.divisor(g, d), q)[q] > r;
}

Result reflexive_edges() {
  Result res;
  {
    auto g = barbell();
    Divisor k = canonical_divisor(g);
    Point mid = at(g, "bridge", Rational(1, 2));
    res.require(locus(g, k).support(g).contains(g, mid), "barbell midpoint");
    res.require(oracle_in_locus(g, k, mid, 1), "barbell midpoint (oracle)");
  }
  auto theta_loops = Builder().v("u").v("v").e("e", "u", "v").e("f", "u", "v").e("lu", "u", "u").e("lv", "v", "v").build();
  struct Case {
    std::string name;
    MetricGraph g;
    std::string edge;
  };
  std::vector<Case> odd = {{"dipole", dipole(3), "e0"}, {"K4", complete(4), "0-1"}, {"theta with loops", theta_loops, "e"}};
  for (auto& c : odd) {
    long long genus = c.g.total_genus();
    res.require(genus % 2 == 1, c.name + " genus is even");
    Divisor k2 = canonical_divisor(c.g) * 2;
    Point mid = at(c.g, c.edge, c.g.source_edge(*c.g.find_source_edge(c.edge)).length / 2);
    res.require(locus(c.g, k2).support(c.g).contains(c.g, mid), c.name + " midpoint not in Wloc(2K)");
    res.require(oracle_in_locus(c.g, k2, mid, k2.degree() - genus), c.name + " midpoint (oracle)");
  }
  return res;
}

Result edge_gap() {
  Result res;
  Rng rng(7101);
  for (int k = 0; k < 50; ++k) {
    long long a = uniform(rng, 0, 2), b = uniform(rng, 0, 2);
    if (a + b == 0) b = 1;
    int n = static_cast<int>(uniform(rng, 1, 4));
    Builder bld;
    for (int i = 0; i < n; ++i) bld.v("t" + std::to_string(i));
    bld.v("u").v("v");
    for (int i = 1; i < n; ++i)
      bld.e("tree" + std::to_string(i), "t" + std::to_string(uniform(rng, 0, i - 1)), "t" + std::to_string(i),
            random_length(rng));
    for (long long i = 0; i <= a; ++i)
      bld.e("eu" + std::to_string(i), "u", "t" + std::to_string(uniform(rng, 0, n - 1)), random_length(rng));
    for (long long i = 0; i <= b; ++i)
      bld.e("ev" + std::to_string(i), "v", "t" + std::to_string(uniform(rng, 0, n - 1)), random_length(rng));
    bld.e("e", "u", "v", 1);
    MetricGraph g = bld.build();
    Divisor kd = canonical_divisor(g);
    long long genus = g.total_genus();
    res.require(genus == a + b + 1, "genus");
    Rational lo(b, a + b + 1), hi(b + 1, a + b + 1);
    int s = *g.find_source_edge("e");
    ClosedSubset gap(g);
    gap.add_interval(g.source_edge(s).first, lo, hi);
    gap.canonicalize(g);
    WLocus l = locus(g, kd);
    res.require(!l.support(g).intersects(g, gap), "locus meets the gap: " + props::show(g));
    // Independent check: K - g(x) has negative rank on the gap.
    for (const Rational& x : {lo, (lo + hi) / 2, hi})
      res.require(rank(g, kd - single(at(g, "e", x), genus)) == -1, "K - g(x) has non-negative rank");
  }
  return res;
}

Result scan() {
  Result res;
  auto g = three_hexagon();
  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < g.num_source_edges(); ++s) edges.push_back({g.source_edge(s).tail, g.source_edge(s).head});
  auto cg = oracle::CombGraph::from_edges(g.num_vertices(), edges);
  auto rec = oracle::scan_graph(cg, 0);
  res.require(rec.wp_free, "a vertex of the three-hexagon graph is Weierstrass");
  const std::set<std::string> marked = {"BC", "CD", "EF", "FA", "GH", "IJ", "KL", "MN"};
  auto kc = oracle::comb_canonical(cg);
  for (int s = 0; s < g.num_source_edges(); ++s) {
    long long w = oracle::edge_interior_weight(cg, kc, 2, edges[s].first, edges[s].second);
    res.require(w == (marked.count(g.source_edge(s).id.text) ? 1 : 0), "edge " + g.source_edge(s).id.text);
  }
  Strings want;
  for (const auto& e : marked) want.insert("1: " + e);
  Strings got;
  for (const auto& c : locus(g, canonical_divisor(g)).components) {
    SourceRegion r = source_region(g, c.region);
    got.insert(std::to_string(c.weight) + ": " + (r.intervals.size() == 1 && r.vertices.empty()
                                                      ? g.source_edge(r.intervals[0].source).id.text
                                                      : std::string("?")));
  }
  res.require(got == want, "metric locus of the three-hexagon graph: " + join(got));

  oracle::ScanParams p;
  p.n = 12;
  p.degree = 3;
  p.count = 1000;
  p.seed = 2024;
  auto a = oracle::scan_vertex_weierstrass(p);
  p.jobs = 4;
  auto b = oracle::scan_vertex_weierstrass(p);
  bool same = a.records.size() == 1000 && b.records.size() == 1000 && a.wp_free == b.wp_free;
  for (size_t i = 0; same && i < a.records.size(); ++i) {
    const auto &x = a.records[i], &y = b.records[i];
    same = x.n == y.n && x.m == y.m && x.genus == y.genus && x.wp_free == y.wp_free &&
           x.vertex_weights == y.vertex_weights && x.rejected == y.rejected && x.n == 12 && x.m == 18;
  }
  res.require(same, "scan is not deterministic across job counts");
  return res;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    Result (*run)();
  };
  const Criterion criteria[] = {
      {"K4 canonical locus", k4},
      {"barbell canonical locus", barbell_fixture},
      {"dipoles of genus 2..6", dipoles},
      {"tent with K, K+(v), K+(u)", tents},
      {"cube", cube_fixture},
      {"two-bridge graph", two_bridge_fixture},
      {"whole-graph loci and b-modified totals", whole_graph_cases},
      {"augmented cycles, canonical and generic", augmented_cycles},
      {"two-point augmented cycle", two_point_cycle_fixture},
      {"augmented dipoles", augmented_dipoles},
      {"clls fixtures", clls_fixtures},
      {"property suite", property_suite},
      {"reflexive edges", reflexive_edges},
      {"edge gap", edge_gap},
      {"three-hexagon and seeded scan", scan},
  };
  int failed = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", secs);
    std::cout << "criterion " << n << ": " << (r.pass ? "PASS" : "FAIL") << "  " << c.label << " (" << time << ")";
    if (!r.pass) std::cout << "  " << r.detail;
    std::cout << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed ? "FAILED " : "all ") << n - failed << "/" << n << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
