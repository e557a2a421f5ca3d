#include "tropws/weierstrass.hpp"

#include "locus_internal.hpp"
#include "tropws/errors.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <set>

namespace tropws {

std::string to_string(LocusMode m) {
  switch (m) {
    case LocusMode::Standard: return "standard";
    case LocusMode::BModified: return "b-modified";
    case LocusMode::Generic: return "generic";
    case LocusMode::Canonical: return "canonical";
  }
  return "standard";
}

ClosedSubset WLocus::support(const MetricGraph& g) const {
  ClosedSubset s(g);
  for (const auto& c : components) s.unite(c.region);
  s.canonicalize(g);
  return s;
}

bool germ_in(const MetricGraph& g, const ClosedSubset& s, const Direction& d) {
  const Rational& len = g.edge(d.edge).length;
  Rational t = d.base.is_vertex() ? (d.sign > 0 ? Rational(0) : len) : d.base.offset;
  for (const auto& i : s.intervals(d.edge)) {
    if (d.sign > 0 && i.from <= t && t < i.to) return true;
    if (d.sign < 0 && i.from < t && t <= i.to) return true;
  }
  return false;
}

namespace detail {

long long SlopeCache::at(const Direction& d) {
  const auto& s = at(d.base);
  auto dirs = g_.directions(d.base);
  for (size_t i = 0; i < dirs.size(); ++i)
    if (dirs[i] == d) return s[i];
  throw std::logic_error("direction not found");
}

const std::vector<long long>& SlopeCache::at(const Point& p) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
  }
  auto v = fn_(p);
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(p, std::move(v)).first->second;
}

SlopeCache::Fn complete_slopes_fn(const MetricGraph& g, const Divisor& d) {
  return [&g, d](const Point& p) {
    std::vector<long long> out;
    for (const auto& [dir, s] : reduce(g, d, p).slopes.minimum) out.push_back(s);
    return out;
  };
}

SlopeCache complete_slopes(const MetricGraph& g, const Divisor& d) { return SlopeCache(g, complete_slopes_fn(g, d)); }

ClosedSubset threshold_set(const MetricGraph& g, const Profile& prof,
                           const std::function<bool(long long, const Point&)>& member) {
  ClosedSubset s(g);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (member(prof.vertex_value[v], Point::at_vertex(v))) s.add_vertex(v);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ep = prof.edges[e];
    const auto& ed = g.edge(e);
    auto at_cut = [&](size_t i) -> bool {
      if (i == 0) return s.has_vertex(ed.tail);
      if (i + 1 == ep.cuts.size()) return s.has_vertex(ed.head);
      return member(ep.at_cut[i - 1], Point::on_edge(e, ep.cuts[i]));
    };
    for (size_t i = 0; i < ep.on_piece.size(); ++i) {
      Point mid = Point::on_edge(e, (ep.cuts[i] + ep.cuts[i + 1]) / 2);
      if (member(ep.on_piece[i], mid)) {
        if (!at_cut(i) || !at_cut(i + 1))
          domain_error("CertificateFailure", "locus is not closed near an open piece of edge " +
                                                 g.source_edge(ed.source).id.text);
        s.add_interval(e, ep.cuts[i], ep.cuts[i + 1]);
      }
    }
    for (size_t i = 1; i + 1 < ep.cuts.size(); ++i)
      if (at_cut(i)) s.add_interval(e, ep.cuts[i], ep.cuts[i]);
  }
  s.canonicalize(g);
  return s;
}

long long closed_form(const MetricGraph& g, const Divisor& d, const ClosedSubset& c, long long r, bool augmented,
                      SlopeCache& slopes) {
  GenusPair gp = genus(g, c);
  long long gen = augmented ? gp.augmented : gp.betti;
  long long w = degree_restricted(g, d, c) + (gen - component_count(g, c)) * r;
  for (const auto& dir : boundary_directions(g, c)) w -= slopes.at(dir);
  return w;
}

long long profile_min(const Profile& prof) {
  long long m = *std::min_element(prof.vertex_value.begin(), prof.vertex_value.end());
  for (const auto& ep : prof.edges) {
    for (long long v : ep.at_cut) m = std::min(m, v);
    for (long long v : ep.on_piece) m = std::min(m, v);
  }
  return m;
}

}  // namespace detail

bool is_weierstrass(const MetricGraph& g, const Divisor& d, const Point& x, long long r) {
  if (r < 0) domain_error("NegativeRank", "locus membership needs non-negative rank");
  return reduce(g, d, x).value >= r + 1;
}

namespace {

// Multiple n with d == n*K, or 0.
long long canonical_multiple(const MetricGraph& g, const Divisor& d) {
  if (g.augmented()) return 0;
  Divisor k = canonical_divisor(g);
  if (k.empty()) return 0;
  long long n = d.degree() / std::max<long long>(1, k.degree());
  if (n >= 1 && k * n == d) return n;
  return 0;
}

WLocus build(const MetricGraph& g, const Divisor& d, bool b_mode, int jobs) {
  long long r = rank(g, d);
  if (r < 0) domain_error("NegativeRank", "the divisor is not equivalent to an effective one");
  auto prof = detail::sweep_profile(g, d, false, jobs);
  long long threshold = b_mode ? detail::profile_min(prof) : r;
  if (threshold < r) throw std::logic_error("reduced coefficient below the rank");

  WLocus out;
  out.mode = b_mode ? LocusMode::BModified : LocusMode::Standard;
  out.degree = d.degree();
  out.rank = r;
  out.genus = g.betti();
  out.b = threshold;
  out.events = prof.events;

  ClosedSubset set = detail::threshold_set(g, prof, [&](long long v, const Point&) { return v > threshold; });
  auto slopes = detail::complete_slopes(g, d);
  long long n = canonical_multiple(g, d);
  for (auto& c : components(g, set)) {
    long long w = detail::closed_form(g, d, c, threshold, false, slopes);
    if (!b_mode && n > 0) {
      // Closed form for multiples of K, computed independently of the rank.
      long long gen = genus(g, c).betti, gg = out.genus;
      long long coef = n == 1 ? gg + 1 : (2 * n - 1) * gg;
      long long alt = coef * (gen - 1);
      for (const auto& dir : boundary_directions(g, c)) alt -= slopes.at(dir) - n;
      if (alt != w)
        domain_error("CertificateFailure", "canonical closed form " + std::to_string(alt) + " differs from weight " +
                                               std::to_string(w));
    }
    out.components.push_back({c, w});
    out.total += w;
  }
  long long expected = out.degree - threshold + threshold * out.genus;
  if (out.total != expected)
    domain_error("CertificateFailure", "weights sum to " + std::to_string(out.total) + ", expected " +
                                           std::to_string(expected));
  return out;
}

}  // namespace

WLocus locus(const MetricGraph& g, const Divisor& d, int jobs) { return build(g, d, false, jobs); }

WLocus b_modified_locus(const MetricGraph& g, const Divisor& d, int jobs) { return build(g, d, true, jobs); }

long long weight(const MetricGraph& g, const Divisor& d, const ClosedSubset& c, long long r, const WLocus* within) {
  if (component_count(g, c) != 1) input_error("InvalidStructure", "weight needs a connected closed set");
  if (within) {
    ClosedSubset s = within->support(g);
    for (const auto& dir : boundary_directions(g, c))
      if (germ_in(g, s, dir)) domain_error("BoundaryInsideLocus", "an outgoing direction runs into the locus");
  }
  auto slopes = detail::complete_slopes(g, d);
  return detail::closed_form(g, d, c, r, false, slopes);
}

namespace {

struct OpenShape {
  long long betti = 0;
  long long count = 0;
};

// Topology of the interior of a closed set: frontier points are removed.
OpenShape open_shape(const MetricGraph& g, const ClosedSubset& a, const std::vector<Point>& front) {
  std::set<Point> fr(front.begin(), front.end());
  std::vector<int> parent;
  auto fresh = [&]() {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  };
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> vnode(g.num_vertices(), -1);
  long long nodes = 0, edges = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (a.has_vertex(v) && !fr.count(Point::at_vertex(v))) {
      vnode[v] = fresh();
      ++nodes;
    }
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& i : a.intervals(e)) {
      if (i.from == i.to) continue;
      auto end = [&](int vertex) {
        if (vertex >= 0 && vnode[vertex] >= 0) return vnode[vertex];
        ++nodes;
        return fresh();
      };
      int p = end(i.from == 0 ? g.edge(e).tail : -1);
      int q = end(i.to == g.edge(e).length ? g.edge(e).head : -1);
      ++edges;
      parent[find(p)] = find(q);
    }
  std::set<int> roots;
  for (int k = 0; k < static_cast<int>(parent.size()); ++k) roots.insert(find(k));
  long long comps = static_cast<long long>(roots.size());
  return {edges - nodes + comps, comps};
}

// C meets the interior of A.
bool meets_interior(const MetricGraph& g, const ClosedSubset& a, const std::set<Point>& fr, const ClosedSubset& c) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (c.has_vertex(v) && a.has_vertex(v) && !fr.count(Point::at_vertex(v))) return true;
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& i : c.intervals(e))
      for (const auto& j : a.intervals(e))
        if (j.from < j.to && i.from < j.to && j.from < i.to) return true;
  return false;
}

bool meets_frontier(const MetricGraph& g, const std::vector<Point>& fr, const ClosedSubset& c) {
  for (const auto& p : fr)
    if (c.contains(g, p)) return true;
  return false;
}

}  // namespace

long long measure(const MetricGraph& g, const Divisor& d, const ClosedSubset& a, bool open_mode, const WLocus& l) {
  if (a.empty()) input_error("EmptySubset", "measure needs a nonempty set");
  const bool aug = l.mode == LocusMode::Generic || l.mode == LocusMode::Canonical;
  std::optional<detail::SlopeCache> cache;
  if (l.mode == LocusMode::Canonical)
    cache.emplace(g, [&g](const Point& p) { return detail::canonical_run(g, p).base_slopes; });
  else
    cache.emplace(g, detail::complete_slopes_fn(g, l.mode == LocusMode::Generic ? d - genus_divisor(g) : d));
  detail::SlopeCache& slopes = *cache;
  long long r = l.mode == LocusMode::BModified ? l.b : l.rank;
  long long total = 0;
  if (!open_mode) {
    for (const auto& c : l.components) {
      if (a.contains(g, c.region))
        total += c.weight;
      else if (a.intersects(g, c.region))
        domain_error("NotMeasurable", "a locus component straddles the boundary of the set");
    }
    long long form = detail::closed_form(g, d, a, r, aug, slopes);
    if (form != total)
      domain_error("CertificateFailure", "closed form " + std::to_string(form) + " differs from component sum " +
                                             std::to_string(total));
    return total;
  }

  auto front = frontier(g, a);
  std::set<Point> fr(front.begin(), front.end());
  for (const auto& c : l.components) {
    bool inside = a.contains(g, c.region) && !meets_frontier(g, front, c.region);
    if (inside)
      total += c.weight;
    else if (meets_interior(g, a, fr, c.region))
      domain_error("NotMeasurable", "a locus component straddles the boundary of the open set");
  }
  OpenShape shape = open_shape(g, a, front);
  auto inward = inward_directions(g, a);
  long long deg = 0;
  for (const auto& [p, n] : d.terms())
    if (a.contains(g, p) && !fr.count(p)) deg += n;
  long long gen = shape.betti;
  if (aug)
    for (int v = 0; v < g.num_vertices(); ++v)
      if (a.has_vertex(v) && !fr.count(Point::at_vertex(v))) gen += g.vertex(v).genus;
  long long form = deg + (gen - shape.count + static_cast<long long>(inward.size())) * r;
  for (const auto& dir : inward) form += slopes.at(dir);
  if (form != total)
    domain_error("CertificateFailure", "open closed form " + std::to_string(form) + " differs from component sum " +
                                           std::to_string(total));
  return total;
}

IdentityReport verify_identities(const MetricGraph& g, const Divisor& d, const WLocus& l, std::uint64_t seed,
                                 int samples) {
  IdentityReport rep;
  long long r = l.mode == LocusMode::BModified ? l.b : l.rank;
  rep.expected = l.degree - r + r * l.genus;
  rep.total = l.total;
  rep.total_ok = rep.total == rep.expected;
  if (!rep.total_ok) rep.failures.push_back("total weight");
  rep.positive_ok = std::all_of(l.components.begin(), l.components.end(), [](const WComponent& c) { return c.weight > 0; });
  if (!rep.positive_ok) rep.failures.push_back("positivity");

  ClosedSubset set = l.support(g);

  // Quotient graph: locus components and off-locus vertices as nodes, the
  // open gaps of the complement as edges.
  const int C = static_cast<int>(l.components.size());
  std::vector<int> node_of_vertex(g.num_vertices(), -1);
  int nodes = C;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (set.has_vertex(v)) {
      for (int k = 0; k < C; ++k)
        if (l.components[k].region.has_vertex(v)) node_of_vertex[v] = k;
    } else {
      node_of_vertex[v] = nodes++;
    }
  }
  auto node_at = [&](int e, const Rational& t) {
    Point p = g.normalize(e, t);
    if (p.is_vertex()) return node_of_vertex[p.vertex];
    for (int k = 0; k < C; ++k)
      if (l.components[k].region.contains(g, p)) return k;
    throw std::logic_error("gap end outside the locus");
  };
  struct Gap {
    int edge;
    Rational from, to;
    int a, b;
  };
  std::vector<Gap> gaps;
  for (int e = 0; e < g.num_edges(); ++e) {
    Rational cursor = 0;
    const Rational& len = g.edge(e).length;
    for (const auto& i : set.intervals(e)) {
      if (i.from > cursor) gaps.push_back({e, cursor, i.from, node_at(e, cursor), node_at(e, i.from)});
      cursor = i.to;
    }
    if (cursor < len) gaps.push_back({e, cursor, len, node_at(e, cursor), node_at(e, len)});
  }

  const bool complete = l.mode == LocusMode::Standard || l.mode == LocusMode::BModified;
  if (complete && l.rank >= 1) {
    // Complement is a forest iff the quotient has no cycle among gaps once
    // every locus component is cut open; each gap end at a component is a leaf.
    std::vector<int> parent(nodes + 2 * static_cast<int>(gaps.size()));
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int leaf = nodes;
    for (const auto& gp : gaps) {
      int a = gp.a < C ? leaf++ : gp.a;
      int b = gp.b < C ? leaf++ : gp.b;
      if (find(a) == find(b)) {
        rep.forest_ok = false;
        break;
      }
      parent[find(a)] = find(b);
    }
    if (!rep.forest_ok) rep.failures.push_back("forest complement");
  }

  // Random measurable closed sets grown along the quotient graph.
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples && nodes > 0; ++s) {
    std::vector<char> chosen(nodes, 0);
    int start = static_cast<int>(rng() % nodes);
    chosen[start] = 1;
    int target = 1 + static_cast<int>(rng() % nodes);
    int have = 1;
    for (int round = 0; round < 4 * nodes && have < target; ++round)
      for (const auto& gp : gaps)
        if (chosen[gp.a] != chosen[gp.b] && rng() % 2 == 0) {
          chosen[gp.a] = chosen[gp.b] = 1;
          ++have;
        }
    ClosedSubset a(g);
    for (int k = 0; k < C; ++k)
      if (chosen[k]) a.unite(l.components[k].region);
    for (int v = 0; v < g.num_vertices(); ++v)
      if (node_of_vertex[v] >= C && chosen[node_of_vertex[v]]) a.add_vertex(v);
    for (const auto& gp : gaps)
      if (chosen[gp.a] && chosen[gp.b]) a.add_interval(gp.edge, gp.from, gp.to);
    a.canonicalize(g);
    long long w = 0;
    try {
      w = measure(g, d, a, false, l);
    } catch (const Error& e) {
      if (e.name() != "CertificateFailure") throw;
      rep.failures.push_back("measure certificate on a sampled set");
      break;
    }
    long long ga = genus(g, a).betti;
    ++rep.samples;
    if (complete && w < ga * r) {
      rep.lower_bound_ok = false;
      rep.failures.push_back("lower bound on a sampled set");
      break;
    }
  }
  return rep;
}

}  // namespace tropws
