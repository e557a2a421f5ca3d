#include "tropws/oracle.hpp"

#include "linalg.hpp"
#include "tropws/errors.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace tropws::oracle {

CombGraph CombGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  CombGraph g;
  g.n = n;
  g.edges = edges;
  g.adj.assign(n, {});
  for (auto [a, b] : edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  return g;
}

long long CombGraph::genus() const { return static_cast<long long>(edges.size()) - n + 1; }

bool CombGraph::connected() const {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push_back(w);
      }
  }
  return count == n;
}

// ---------------------------------------------------------------- subdivision

namespace {

long long subdivision_cap() {
  if (const char* env = std::getenv("TROPWS_MAX_SUBDIVISION")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 200000;
}

}  // namespace

Subdivision subdivide(const MetricGraph& g, const std::vector<Point>& points, long long extra) {
  Integer scale = 1;
  for (int e = 0; e < g.num_edges(); ++e) scale = lcm_denominators(g.edge(e).length, scale);
  for (const auto& p : points)
    if (!p.is_vertex()) scale = lcm_denominators(p.offset, scale);
  scale *= extra;

  Integer total = g.num_vertices();
  for (int e = 0; e < g.num_edges(); ++e) total += numerator(g.edge(e).length * scale) - 1;
  if (total > subdivision_cap())
    input_error("SubdivisionLimit", "unit subdivision needs " + total.str() + " nodes (TROPWS_MAX_SUBDIVISION)");

  Subdivision s;
  s.scale = scale;
  int n = g.num_vertices();
  std::vector<std::pair<int, int>> edges;
  s.vertex_of.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) s.vertex_of[v] = v;
  s.chain.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    long long units = numerator(g.edge(e).length * scale).convert_to<long long>();
    auto& c = s.chain[e];
    c.push_back(g.edge(e).tail);
    for (long long k = 1; k < units; ++k) c.push_back(n++);
    c.push_back(g.edge(e).head);
    for (size_t k = 0; k + 1 < c.size(); ++k) edges.push_back({c[k], c[k + 1]});
  }
  s.graph = CombGraph::from_edges(n, edges);
  return s;
}

int Subdivision::node(const MetricGraph&, const Point& p) const {
  if (p.is_vertex()) return vertex_of[p.vertex];
  Rational k = p.offset * scale;
  if (denominator(k) != 1) input_error("SubdivisionLimit", "point is not on the subdivision grid");
  return chain[p.edge][numerator(k).convert_to<long long>()];
}

CombDivisor Subdivision::divisor(const MetricGraph& g, const Divisor& d) const {
  CombDivisor out(graph.n, 0);
  for (const auto& [p, c] : d.terms()) out[node(g, p)] += c;
  return out;
}

// ---------------------------------------------------------------- reduction

namespace {

std::vector<int> bfs_distance(const CombGraph& g, int q) {
  std::vector<int> d(g.n, -1);
  std::deque<int> queue{q};
  d[q] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        queue.push_back(w);
      }
  }
  return d;
}

}  // namespace

CombDivisor discrete_reduce(const CombGraph& g, const CombDivisor& input, int q) {
  CombDivisor d = input;
  auto dist = bfs_distance(g, q);

  // Clear debt farthest first by firing the ball strictly inside its radius.
  for (;;) {
    int radius = -1;
    for (int v = 0; v < g.n; ++v)
      if (v != q && d[v] < 0) radius = std::max(radius, dist[v]);
    if (radius < 0) break;
    for (int v = 0; v < g.n; ++v) {
      if (dist[v] >= radius) continue;
      for (int w : g.adj[v])
        if (dist[w] >= radius) {
          --d[v];
          ++d[w];
        }
    }
  }

  // Dhar: fire the unburnt set until the fire reaches everything.
  for (;;) {
    std::vector<char> burnt(g.n, 0);
    std::vector<int> hits(g.n, 0);
    std::deque<int> queue{q};
    burnt[q] = 1;
    int count = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.adj[v]) {
        if (burnt[w]) continue;
        if (++hits[w] > d[w]) {
          burnt[w] = 1;
          ++count;
          queue.push_back(w);
        }
      }
    }
    if (count == g.n) return d;
    for (int v = 0; v < g.n; ++v) {
      if (burnt[v]) continue;
      for (int w : g.adj[v])
        if (burnt[w]) {
          --d[v];
          ++d[w];
        }
    }
  }
}

namespace {

struct Ranker {
  const CombGraph& g;
  std::map<CombDivisor, long long> memo;

  long long at(const CombDivisor& d) {
    CombDivisor red = discrete_reduce(g, d, 0);
    if (red[0] < 0) return -1;
    auto it = memo.find(red);
    if (it != memo.end()) return it->second;
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return red[a] < red[b]; });
    long long best = LLONG_MAX;
    for (int v : order) {
      CombDivisor next = red;
      --next[v];
      best = std::min(best, at(next));
      if (best < 0) break;
    }
    memo.emplace(red, best + 1);
    return best + 1;
  }
};

}  // namespace

long long bn_rank(const CombGraph& g, const CombDivisor& d) {
  long long deg = 0;
  for (long long c : d) deg += c;
  if (deg < 0) return -1;
  Ranker r{g, {}};
  return r.at(d);
}

CombDivisor comb_canonical(const CombGraph& g) {
  CombDivisor k(g.n);
  for (int v = 0; v < g.n; ++v) k[v] = static_cast<long long>(g.adj[v].size()) - 2;
  return k;
}

long long edge_interior_weight(const CombGraph& g, const CombDivisor& d, long long r, int u, int v) {
  CombDivisor du = discrete_reduce(g, d, u);
  CombDivisor dv = discrete_reduce(g, d, v);
  std::vector<std::vector<Rational>> a(g.n, std::vector<Rational>(g.n));
  std::vector<Rational> b(g.n);
  for (int y = 0; y < g.n; ++y) {
    for (int z : g.adj[y]) {
      a[y][y] += 1;
      a[y][z] -= 1;
    }
    b[y] = du[y] - dv[y];
  }
  std::fill(a[v].begin(), a[v].end(), Rational(0));
  a[v][v] = 1;
  b[v] = 0;
  auto f = detail::solve(a, b);
  Rational slope = f[u] - f[v];
  if (denominator(slope) != 1) throw std::logic_error("non-integer slope in edge formula");
  return r - numerator(slope).convert_to<long long>();
}

// ---------------------------------------------------------------- scan

namespace {

// SplitMix64 finalizer; turns (seed, index) into an independent stream seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, n) that does not depend on the standard library's
// distribution implementations, so streams match across platforms.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

}  // namespace

CombGraph sample_graph(const ScanParams& params, int index, int* rejected) {
  std::mt19937_64 rng(mix(params.seed ^ mix(static_cast<std::uint64_t>(index))));
  const int n = params.n;
  if (n <= 0) domain_error("DegenerateFamily", "family needs at least one vertex");
  if (params.family == "regular" && (static_cast<long long>(n) * params.degree % 2 != 0 || params.degree >= n))
    domain_error("DegenerateFamily", "no simple regular graph with these parameters");
  int tries = 0;
  for (;; ++tries) {
    if (tries > 100000) domain_error("DegenerateFamily", "too many rejected samples");
    std::vector<std::pair<int, int>> edges;
    if (params.family == "regular") {
      std::vector<int> stubs;
      for (int v = 0; v < n; ++v)
        for (int k = 0; k < params.degree; ++k) stubs.push_back(v);
      for (size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[below(rng, i)]);
      std::set<std::pair<int, int>> seen;
      bool simple = true;
      for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int a = std::min(stubs[i], stubs[i + 1]), b = std::max(stubs[i], stubs[i + 1]);
        if (a == b || !seen.insert({a, b}).second) simple = false;
        edges.push_back({a, b});
      }
      if (!simple) continue;
    } else if (params.family == "erdos-renyi") {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < params.p) edges.push_back({a, b});
    } else {
      input_error("InvalidStructure", "unknown family '" + params.family + "'");
    }
    CombGraph g = CombGraph::from_edges(n, edges);
    if (!g.connected()) continue;
    if (rejected) *rejected = tries;
    return g;
  }
}

ScanRecord scan_graph(const CombGraph& g, int index) {
  ScanRecord rec;
  rec.seed_index = index;
  rec.n = g.n;
  rec.m = static_cast<int>(g.edges.size());
  rec.genus = g.genus();
  CombDivisor k = comb_canonical(g);
  rec.wp_free = true;
  for (int v = 0; v < g.n; ++v) {
    long long w = discrete_reduce(g, k, v)[v] - (rec.genus - 1);
    rec.vertex_weights.push_back(w);
    if (w > 0) rec.wp_free = false;
  }
  return rec;
}

ScanSummary scan_vertex_weierstrass(const ScanParams& params) {
  ScanSummary out;
  out.records.resize(params.count);
  int jobs = std::max(1, params.jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](int t) {
    try {
      for (int i = t; i < params.count; i += jobs) {
        int rejected = 0;
        CombGraph g = sample_graph(params, i, &rejected);
        out.records[i] = scan_graph(g, i);
        out.records[i].rejected = rejected;
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& r : out.records) {
    out.wp_free += r.wp_free;
    out.rejected += r.rejected;
  }
  return out;
}

}  // namespace tropws::oracle
