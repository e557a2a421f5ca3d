#include "tropws/augmented.hpp"

#include "locus_internal.hpp"
#include "tropws/errors.hpp"

namespace tropws {

GenericView generic_view(const MetricGraph& g, const Divisor& d, int jobs) {
  GenericView out;
  out.d0 = d - genus_divisor(g);
  out.rank = rank(g, out.d0);
  if (out.rank < 0) domain_error("NegativeRank", "D minus the genus function has negative rank");
  WLocus base = locus(g, out.d0, jobs);
  const long long r = out.rank;

  WLocus& l = out.locus;
  l.mode = LocusMode::Generic;
  l.degree = d.degree();
  l.rank = r;
  l.b = r;
  l.genus = g.total_genus();
  l.events = base.events;
  l.components = base.components;
  for (int v = 0; v < g.num_vertices(); ++v) {
    long long gv = g.vertex(v).genus;
    if (gv == 0) continue;
    bool placed = false;
    for (auto& c : l.components)
      if (c.region.has_vertex(v)) {
        c.weight += (r + 1) * gv;
        placed = true;
      }
    if (!placed) {
      ClosedSubset s = ClosedSubset::single(g, Point::at_vertex(v));
      l.components.push_back({s, (r + 1) * gv});
    }
  }
  for (const auto& c : l.components) l.total += c.weight;
  long long expected = l.degree - r + r * l.genus;
  if (l.total != expected)
    domain_error("CertificateFailure", "generic weights sum to " + std::to_string(l.total) + ", expected " +
                                           std::to_string(expected));
  return out;
}

bool canonical_membership(const MetricGraph& g, const PLFunction& f) {
  Divisor k = canonical_divisor(g);
  Divisor e = k + f.divisor(g);
  std::vector<Point> points;
  for (int v = 0; v < g.num_vertices(); ++v) points.push_back(Point::at_vertex(v));
  for (int ed = 0; ed < g.num_edges(); ++ed)
    for (size_t i = 1; i + 1 < f.pieces[ed].size(); ++i) points.push_back(Point::on_edge(ed, f.pieces[ed][i].first));
  for (const auto& p : points) {
    long long gp = p.is_vertex() ? g.vertex(p.vertex).genus : 0;
    long long c = e(p);
    if (c < gp - 1) return false;
    bool flat_or_down = false;
    for (const auto& d : g.directions(p))
      if (f.slope(g, d) <= 0) flat_or_down = true;
    if (flat_or_down && c < gp) return false;
  }
  return true;
}

long long canonical_reduced_coeff(const MetricGraph& g, const Point& x) {
  return detail::canonical_run(g, x).reduced(x);
}

std::vector<long long> canonical_slopes(const MetricGraph& g, const Point& x) {
  return detail::canonical_run(g, x).base_slopes;
}

WLocus canonical_locus(const MetricGraph& g, int jobs) {
  const long long gen = g.total_genus();
  if (gen < 2) domain_error("InvalidStructure", "canonical locus needs total genus at least 2");
  const long long r = gen - 1;
  Divisor k = canonical_divisor(g);
  auto prof = detail::sweep_profile(g, k, true, jobs);

  WLocus out;
  out.mode = LocusMode::Canonical;
  out.degree = k.degree();
  out.rank = r;
  out.b = r;
  out.genus = gen;
  out.events = prof.events;

  auto genus_at = [&](const Point& p) { return p.is_vertex() ? g.vertex(p.vertex).genus : 0; };
  ClosedSubset set = detail::threshold_set(
      g, prof, [&](long long v, const Point& p) { return v + (genus_at(p) - 1) * r > 0; });
  detail::SlopeCache slopes(g, [&g](const Point& p) { return canonical_slopes(g, p); });
  for (auto& c : components(g, set)) {
    long long w = detail::closed_form(g, k, c, r, true, slopes);
    out.components.push_back({c, w});
    out.total += w;
  }
  long long expected = out.degree - r + r * gen;
  if (out.total != expected)
    domain_error("CertificateFailure", "canonical weights sum to " + std::to_string(out.total) + ", expected " +
                                           std::to_string(expected));
  return out;
}

}  // namespace tropws
