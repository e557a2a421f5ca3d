#include "tropws/chipfire.hpp"

#include "engine.hpp"
#include "linalg.hpp"
#include "reduce_internal.hpp"
#include "tropws/errors.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace tropws {

namespace detail {

namespace {

std::vector<Rational> vertex_distances(const MetricGraph& g, const Point& x) {
  const int V = g.num_vertices();
  std::vector<Rational> d(V);
  std::vector<char> known(V, 0), done(V, 0);
  if (x.is_vertex()) {
    d[x.vertex] = 0;
    known[x.vertex] = 1;
  } else {
    const auto& e = g.edge(x.edge);
    d[e.tail] = x.offset;
    d[e.head] = e.length - x.offset;
    known[e.tail] = known[e.head] = 1;
  }
  for (int it = 0; it < V; ++it) {
    int best = -1;
    for (int v = 0; v < V; ++v)
      if (known[v] && !done[v] && (best < 0 || d[v] < d[best])) best = v;
    if (best < 0) break;
    done[best] = 1;
    for (const auto& inc : g.incident(best)) {
      const auto& e = g.edge(inc.edge);
      int w = inc.sign > 0 ? e.head : e.tail;
      Rational c = d[best] + e.length;
      if (!known[w] || c < d[w]) {
        d[w] = c;
        known[w] = 1;
      }
    }
  }
  return d;
}

Rational point_distance(const MetricGraph& g, const std::vector<Rational>& dv, const Point& x, const Point& p) {
  if (p.is_vertex()) return dv[p.vertex];
  const auto& e = g.edge(p.edge);
  Rational m = std::min(dv[e.tail] + p.offset, dv[e.head] + e.length - p.offset);
  if (!x.is_vertex() && x.edge == p.edge) m = std::min<Rational>(m, abs(p.offset - x.offset));
  return m;
}

// Principal divisor of min(dist(x, .), R).
Divisor capped_distance_divisor(const MetricGraph& g, const std::vector<Rational>& dv, const Point& x,
                                const Rational& R) {
  Divisor out;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    struct Stop {
      Rational pos, dist;
      Point at;
    };
    std::vector<Stop> stops{{Rational(0), dv[ed.tail], Point::at_vertex(ed.tail)}};
    if (!x.is_vertex() && x.edge == e) stops.push_back({x.offset, Rational(0), x});
    stops.push_back({ed.length, dv[ed.head], Point::at_vertex(ed.head)});
    for (size_t k = 0; k + 1 < stops.size(); ++k) {
      const Stop& P = stops[k];
      const Stop& Q = stops[k + 1];
      Rational L = Q.pos - P.pos;
      Rational cut = (Q.dist + L - P.dist) / 2;
      Rational hp = std::clamp<Rational>(cut, 0, L);
      Rational hq = L - hp;
      auto end_slope = [&](const Rational& d, const Rational& h) -> long long {
        if (h > 0) return d < R ? 1 : 0;
        return d <= R ? -1 : 0;
      };
      out.add(P.at, -end_slope(P.dist, hp));
      out.add(Q.at, -end_slope(Q.dist, hq));
      if (cut > 0 && cut < L && P.dist + cut < R) out.add(Point::on_edge(e, P.pos + cut), 2);
      if (P.dist < R) {
        Rational s = R - P.dist;
        if (s <= hp && s < L) out.add(Point::on_edge(e, P.pos + s), 1);
      }
      if (Q.dist < R) {
        Rational s = R - Q.dist;
        if (s <= hq && s < L) out.add(Point::on_edge(e, Q.pos - s), 1);
      }
    }
  }
  if (out.degree() != 0) throw std::logic_error("capped distance divisor has nonzero degree");
  return out;
}

}  // namespace

std::pair<Divisor, long long> semi_reduce(const MetricGraph& g, const Divisor& d, const Point& x) {
  auto dv = vertex_distances(g, x);
  Divisor cur = d;
  long long total = 0;
  for (;;) {
    std::optional<Point> far;
    Rational far_dist;
    for (const auto& [p, n] : cur.terms()) {
      if (n >= 0 || p == x) continue;
      Rational dist = point_distance(g, dv, x, p);
      if (!far || dist > far_dist) {
        far = p;
        far_dist = dist;
      }
    }
    if (!far) break;
    Divisor step = capped_distance_divisor(g, dv, x, far_dist);
    long long gain = step(*far);
    if (gain <= 0) throw std::logic_error("semi-reduction made no progress");
    long long need = -cur(*far);
    long long k = (need + gain - 1) / gain;
    cur = cur + step * k;
    total += k;
  }
  return {cur, total};
}

ExactRun run_exact(const MetricGraph& g, const Divisor& start, const VertexSlopes* vslope0, const Point& x,
                   long long base_slope0, bool canonical) {
  ExactArith ar;
  Burner<ExactArith> b(g, ar, canonical);
  b.load(start);
  if (vslope0) b.vslope = *vslope0;
  if (x.is_vertex()) {
    b.set_base_vertex(x.vertex);
    if (!vslope0)
      for (auto& s : b.vslope[x.vertex]) s = base_slope0;
  } else {
    b.set_base_on_edge(x.edge, x.offset);
    b.base_slope = {base_slope0, base_slope0};
  }
  b.run();
  ExactRun out;
  out.reduced = b.exact_divisor(g);
  if (x.is_vertex())
    out.base_slopes = b.vslope[x.vertex];
  else
    out.base_slopes = {b.base_slope[0], b.base_slope[1]};
  out.vslope = std::move(b.vslope);
  out.events = b.events;
  return out;
}

SymbolicRun run_symbolic(const MetricGraph& g, const Divisor& start, const VertexSlopes* vslope0, int e,
                         const Rational& t0, int sign, bool canonical) {
  SymbolicArith ar;
  Burner<SymbolicArith> b(g, ar, canonical);
  b.load(start);
  if (vslope0) b.vslope = *vslope0;
  ar.note(sign > 0 ? g.edge(e).length - t0 : t0);
  b.set_base_on_edge(e, Aff{t0, sign});
  b.run();
  SymbolicRun out;
  out.base_chips = b.base_node().chips;
  out.arrivals[0] = -b.base_slope[0];
  out.arrivals[1] = -b.base_slope[1];
  out.horizon = ar.horizon;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- PLFunction

namespace {

long long as_integer(const Rational& r) {
  if (denominator(r) != 1) throw std::logic_error("non-integer slope " + to_string(r));
  return numerator(r).convert_to<long long>();
}

}  // namespace

Rational PLFunction::value(const MetricGraph&, const Point& p) const {
  if (p.is_vertex()) return vertex_values[p.vertex];
  const auto& pc = pieces[p.edge];
  for (size_t i = 0; i + 1 < pc.size(); ++i) {
    if (pc[i].first <= p.offset && p.offset <= pc[i + 1].first) {
      Rational s = (pc[i + 1].second - pc[i].second) / (pc[i + 1].first - pc[i].first);
      return pc[i].second + s * (p.offset - pc[i].first);
    }
  }
  throw std::logic_error("offset outside function pieces");
}

Rational PLFunction::slope(const MetricGraph& g, const Direction& d) const {
  const auto& pc = pieces[d.edge];
  Rational t = d.base.is_vertex() ? (d.sign > 0 ? Rational(0) : g.edge(d.edge).length) : d.base.offset;
  for (size_t i = 0; i + 1 < pc.size(); ++i) {
    bool hit = d.sign > 0 ? (pc[i].first <= t && t < pc[i + 1].first) : (pc[i].first < t && t <= pc[i + 1].first);
    if (hit) {
      Rational s = (pc[i + 1].second - pc[i].second) / (pc[i + 1].first - pc[i].first);
      return d.sign > 0 ? s : Rational(-s);
    }
  }
  throw std::logic_error("direction outside function pieces");
}

Divisor PLFunction::divisor(const MetricGraph& g) const {
  Divisor out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    Point p = Point::at_vertex(v);
    Rational s = 0;
    for (const auto& d : g.directions(p)) s += slope(g, d);
    out.add(p, -as_integer(s));
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& pc = pieces[e];
    for (size_t i = 1; i + 1 < pc.size(); ++i) {
      Point p = Point::on_edge(e, pc[i].first);
      out.add(p, -as_integer(slope(g, {p, e, 1}) + slope(g, {p, e, -1})));
    }
  }
  return out;
}

long long SlopeReport::at(const Direction& d) const {
  for (const auto& [dir, s] : minimum)
    if (dir == d) return s;
  throw std::logic_error("direction not at base point");
}

long long SlopeReport::sum() const {
  long long s = 0;
  for (const auto& [dir, v] : minimum) s += v;
  return s;
}

// ---------------------------------------------------------------- reduce

Reduction reduce(const MetricGraph& g, const Divisor& d, const Point& x) {
  g.check_point(x);
  auto [semi, gained] = detail::semi_reduce(g, d, x);
  auto run = detail::run_exact(g, semi, nullptr, x, gained, false);
  Reduction r;
  r.reduced = std::move(run.reduced);
  r.slopes.base = x;
  auto dirs = g.directions(x);
  for (size_t i = 0; i < dirs.size(); ++i) r.slopes.minimum.push_back({dirs[i], run.base_slopes[i]});
  r.value = r.reduced(x);
  if (r.value != d(x) - r.slopes.sum()) throw std::logic_error("reduced coefficient disagrees with minimum slopes");
  return r;
}

PLFunction reduction_function(const MetricGraph& g, const Divisor& d, const Point& x, const Divisor& reduced) {
  const int V = g.num_vertices();
  std::vector<std::set<Rational>> cuts(g.num_edges());
  auto mark = [&](const Point& p) {
    if (!p.is_vertex()) cuts[p.edge].insert(p.offset);
  };
  for (const auto& [p, n] : d.terms()) mark(p);
  for (const auto& [p, n] : reduced.terms()) mark(p);
  mark(x);

  // Node numbering: vertices, then interior cut points edge by edge.
  std::vector<std::vector<int>> ids(g.num_edges());
  int n = V;
  for (int e = 0; e < g.num_edges(); ++e)
    for (size_t k = 0; k < cuts[e].size(); ++k) ids[e].push_back(n++);
  auto node_of = [&](const Point& p) {
    if (p.is_vertex()) return p.vertex;
    auto it = cuts[p.edge].find(p.offset);
    return ids[p.edge][std::distance(cuts[p.edge].begin(), it)];
  };

  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    std::vector<std::pair<Rational, int>> chain{{Rational(0), ed.tail}};
    size_t k = 0;
    for (const auto& t : cuts[e]) chain.push_back({t, ids[e][k++]});
    chain.push_back({ed.length, ed.head});
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      Rational w = 1 / (chain[i + 1].first - chain[i].first);
      int p = chain[i].second, q = chain[i + 1].second;
      a[p][p] += w;
      a[q][q] += w;
      a[p][q] -= w;
      a[q][p] -= w;
    }
  }
  Divisor diff = reduced - d;
  for (const auto& [p, c] : diff.terms()) b[node_of(p)] += c;
  int xn = node_of(x);
  std::fill(a[xn].begin(), a[xn].end(), Rational(0));
  a[xn][xn] = 1;
  b[xn] = 0;
  auto sol = detail::solve(a, b);

  PLFunction f;
  f.vertex_values.assign(sol.begin(), sol.begin() + V);
  f.pieces.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    auto& pc = f.pieces[e];
    pc.push_back({Rational(0), sol[ed.tail]});
    size_t k = 0;
    for (const auto& t : cuts[e]) pc.push_back({t, sol[ids[e][k++]]});
    pc.push_back({ed.length, sol[ed.head]});
    for (size_t i = 0; i + 1 < pc.size(); ++i)
      as_integer((pc[i + 1].second - pc[i].second) / (pc[i + 1].first - pc[i].first));
  }
  return f;
}

std::vector<long long> slope_set(const MetricGraph& g, const Divisor& d, const Direction& nu, long long r) {
  if (r < 0) domain_error("NegativeRank", "slope set needs a divisor of non-negative rank");
  Reduction red = reduce(g, d, nu.base);
  long long s0 = red.slopes.at(nu);
  Rational t0 = nu.base.is_vertex() ? (nu.sign > 0 ? Rational(0) : g.edge(nu.edge).length) : nu.base.offset;
  auto run = detail::run_symbolic(g, red.reduced, nullptr, nu.edge, t0, nu.sign, false);
  // Chips reaching the moving point from the side facing x.
  long long back = run.arrivals[nu.sign > 0 ? 0 : 1];
  std::vector<long long> out;
  for (long long s = s0; s <= s0 + back; ++s) out.push_back(s);
  return out;
}

bool is_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b) {
  if (a.degree() != b.degree()) return false;
  Point q = Point::at_vertex(g.lowest_vertex());
  return reduce(g, a, q).reduced == reduce(g, b, q).reduced;
}

namespace {

struct RankSearch {
  const MetricGraph& g;
  Point q;
  std::vector<Point> candidates;
  std::map<Divisor, long long> memo;

  long long at(const Divisor& d) {
    Reduction red = reduce(g, d, q);
    if (red.value < 0) return -1;
    auto it = memo.find(red.reduced);
    if (it != memo.end()) return it->second;
    // Points without chips are the likeliest to expose a failure early.
    std::vector<Point> order = candidates;
    std::stable_sort(order.begin(), order.end(),
                     [&](const Point& a, const Point& b) { return red.reduced(a) < red.reduced(b); });
    long long best = LLONG_MAX;
    for (const auto& p : order) {
      Divisor next = red.reduced;
      next.add(p, -1);
      best = std::min(best, at(next));
      if (best < 0) break;
    }
    memo.emplace(red.reduced, best + 1);
    return best + 1;
  }
};

}  // namespace

long long rank(const MetricGraph& g, const Divisor& d) {
  long long deg = d.degree();
  if (deg < 0) return -1;
  long long genus = g.betti();
  if (deg > 2 * genus - 2) return deg - genus;
  RankSearch s{g, Point::at_vertex(g.lowest_vertex()), {}, {}};
  for (int v = 0; v < g.num_vertices(); ++v) s.candidates.push_back(Point::at_vertex(v));
  for (const auto& [p, n] : d.terms())
    if (!p.is_vertex()) s.candidates.push_back(p);
  return s.at(d);
}

}  // namespace tropws
