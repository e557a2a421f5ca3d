#include "tropws/clls.hpp"

#include "tropws/chipfire.hpp"
#include "tropws/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace tropws {

namespace {

// Source-edge coordinate where a working edge starts.
Rational working_start(const MetricGraph& g, int e) {
  return g.edge(e).part == 0 ? Rational(0) : g.source_edge(g.edge(e).source).length / 2;
}

// Coordinate of a direction's base along the source edge of its working edge.
Rational base_coordinate(const MetricGraph& g, const Direction& d) {
  Rational start = working_start(g, d.edge);
  if (!d.base.is_vertex()) return start + d.base.offset;
  return d.base.vertex == g.edge(d.edge).tail ? start : start + g.edge(d.edge).length;
}

std::vector<long long> flipped(const std::vector<long long>& s) {
  std::vector<long long> out(s.rbegin(), s.rend());
  for (auto& x : out) x = -x;
  return out;
}

// Segments seen from the other end.
std::vector<SlopeSegment> reversed(const std::vector<SlopeSegment>& segs, const Rational& len) {
  std::vector<SlopeSegment> out;
  for (size_t k = segs.size(); k-- > 0;) {
    Rational upto = len - (k == 0 ? Rational(0) : segs[k - 1].upto);
    out.push_back({upto, flipped(segs[k].slopes)});
  }
  return out;
}

struct Checked {
  std::vector<Issue> issues;
  std::vector<std::vector<SlopeSegment>> forward;
};

Checked check(const MetricGraph& g, const SlopeStructureSpec& spec) {
  Checked out;
  auto issue = [&](const std::string& name, const std::string& detail) { out.issues.push_back({name, detail}); };
  const long long r = spec.rank;
  if (r < 0) issue("InvalidStructure", "rank must be non-negative");

  std::vector<std::optional<std::vector<SlopeSegment>>> fwd(g.num_source_edges()), bwd(g.num_source_edges());
  for (const auto& entry : spec.edges) {
    auto s = g.find_source_edge(entry.edge.text);
    if (!s) {
      issue("InvalidStructure", "unknown edge " + entry.edge.text);
      continue;
    }
    const auto& se = g.source_edge(*s);
    const std::string name = se.id.text;
    auto from = g.find_vertex(entry.from_vertex.text);
    bool forward;
    if (from && *from == se.tail && se.tail == se.head) {
      forward = !entry.reverse;
    } else if (from && *from == se.tail && !entry.reverse) {
      forward = true;
    } else if (from && *from == se.head && !entry.reverse) {
      forward = false;
    } else {
      issue("InvalidStructure", "edge " + name + " does not start at vertex " + entry.from_vertex.text);
      continue;
    }
    bool ok = true;
    if (entry.segments.empty()) {
      issue("SlopeCountMismatch", "edge " + name + " has no segments");
      ok = false;
    }
    Rational prev = 0;
    for (const auto& seg : entry.segments) {
      if (static_cast<long long>(seg.slopes.size()) != r + 1) {
        issue("SlopeCountMismatch", "edge " + name + " has a segment with " + std::to_string(seg.slopes.size()) +
                                        " slopes, expected " + std::to_string(r + 1));
        ok = false;
      } else if (!std::is_sorted(seg.slopes.begin(), seg.slopes.end(), std::less_equal<long long>())) {
        issue("InvalidStructure", "edge " + name + " has slopes that are not strictly increasing");
        ok = false;
      }
      if (seg.upto <= prev) {
        issue("BreakpointMismatch", "edge " + name + " has breakpoints out of order at " + to_string(seg.upto));
        ok = false;
      }
      prev = seg.upto;
    }
    if (!entry.segments.empty() && prev != se.length) {
      issue("BreakpointMismatch", "edge " + name + " segments end at " + to_string(prev) + ", edge length is " +
                                      to_string(se.length));
      ok = false;
    }
    auto& slot = forward ? fwd[*s] : bwd[*s];
    if (slot) {
      issue("InvalidStructure", "edge " + name + " is given twice in the same orientation");
      continue;
    }
    if (ok) slot = entry.segments;
  }

  out.forward.resize(g.num_source_edges());
  for (int s = 0; s < g.num_source_edges(); ++s) {
    const auto& se = g.source_edge(s);
    if (!fwd[s] && !bwd[s]) {
      bool mentioned = std::any_of(spec.edges.begin(), spec.edges.end(),
                                   [&](const OrientedSlopes& o) { return o.edge.text == se.id.text; });
      if (!mentioned) issue("SlopeCountMismatch", "edge " + se.id.text + " has no slope data");
      continue;
    }
    if (fwd[s] && bwd[s]) {
      auto other = reversed(*bwd[s], se.length);
      std::vector<Rational> a, b;
      for (const auto& x : *fwd[s]) a.push_back(x.upto);
      for (const auto& x : other) b.push_back(x.upto);
      if (a != b) {
        issue("BreakpointMismatch", "edge " + se.id.text + " has different breakpoints in its two orientations");
      } else {
        for (size_t k = 0; k < a.size(); ++k)
          if ((*fwd[s])[k].slopes != other[k].slopes) {
            issue("PairingViolation", "edge " + se.id.text + " segment ending at " + to_string(a[k]) +
                                          ": opposite slopes do not cancel");
            break;
          }
      }
    }
    out.forward[s] = fwd[s] ? *fwd[s] : reversed(*bwd[s], se.length);
  }
  return out;
}

}  // namespace

std::vector<Issue> validate_slope_structure(const MetricGraph& g, const SlopeStructureSpec& spec) {
  return check(g, spec).issues;
}

SlopeStructure normalize_slopes(const MetricGraph& g, const SlopeStructureSpec& spec) {
  Checked c = check(g, spec);
  if (!c.issues.empty()) input_error(c.issues.front().name, c.issues.front().detail);
  SlopeStructure s;
  s.rank_ = spec.rank;
  s.forward_ = std::move(c.forward);
  return s;
}

SlopeStructureSpec SlopeStructure::spec(const MetricGraph& g) const {
  SlopeStructureSpec out;
  out.rank = rank_;
  for (int s = 0; s < g.num_source_edges(); ++s) {
    const auto& se = g.source_edge(s);
    out.edges.push_back({se.id, g.vertex(se.tail).id, false, forward_[s]});
  }
  return out;
}

std::vector<long long> SlopeStructure::outgoing(const MetricGraph& g, const Direction& d) const {
  int s = g.edge(d.edge).source;
  const auto& segs = forward_[s];
  Rational t = base_coordinate(g, d);
  if (d.sign > 0) {
    for (const auto& seg : segs)
      if (seg.upto > t) return seg.slopes;
  } else {
    for (const auto& seg : segs)
      if (seg.upto >= t) return flipped(seg.slopes);
  }
  throw std::logic_error("direction outside its edge");
}

std::vector<Point> SlopeStructure::breakpoints(const MetricGraph& g) const {
  std::vector<Point> out;
  for (int s = 0; s < g.num_source_edges(); ++s)
    for (size_t k = 0; k + 1 < forward_[s].size(); ++k) out.push_back(g.source_point(s, forward_[s][k].upto));
  return out;
}

namespace {

std::vector<Point> candidates(const MetricGraph& g, const SlopeStructure& s, const Divisor& d) {
  std::set<Point> pts;
  for (int v = 0; v < g.num_vertices(); ++v) pts.insert(Point::at_vertex(v));
  for (const auto& p : s.breakpoints(g)) pts.insert(p);
  for (const auto& [p, n] : d.terms()) pts.insert(p);
  return {pts.begin(), pts.end()};
}

long long sum(const std::vector<long long>& v) {
  long long t = 0;
  for (long long x : v) t += x;
  return t;
}

}  // namespace

CllsResult clls_divisor(const MetricGraph& g, const SlopeStructure& s, const Divisor& d) {
  const long long r = s.rank();
  for (const auto& [p, n] : d.terms()) g.check_point(p);
  Divisor k = canonical_divisor(g);
  CllsResult out;
  out.rank = r;
  out.expected_degree = (r + 1) * (d.degree() - r + r * g.total_genus());
  for (const auto& x : candidates(g, s, d)) {
    long long mu = (r + 1) * d(x) + r * (r + 1) / 2 * k(x);
    for (const auto& dir : g.directions(x)) {
      auto sl = s.outgoing(g, dir);
      mu -= sum(sl);
      std::vector<long long> alpha(sl.size());
      bool nonzero = false;
      for (size_t j = 0; j < sl.size(); ++j) {
        alpha[j] = sl[j] - sl[0] - static_cast<long long>(j);
        nonzero |= alpha[j] != 0;
      }
      if (nonzero) out.ramification.push_back({dir, alpha});
    }
    out.w.add(x, mu);
  }
  if (out.w.degree() != out.expected_degree)
    throw std::logic_error("clls divisor degree " + std::to_string(out.w.degree()) + " differs from " +
                           std::to_string(out.expected_degree));
  return out;
}

bool is_g_effective(const MetricGraph& g, const SlopeStructure& s, const Divisor& d) {
  return clls_divisor(g, s, d).w.effective();
}

ObstructionReport realizability_obstructions(const MetricGraph& g, const SlopeStructure& s, const Divisor& d) {
  const long long r = s.rank();
  ObstructionReport rep;
  rep.w = clls_divisor(g, s, d).w;
  rep.effective = rep.w.effective();
  rep.defect = rep.w - d * (r + 1) - canonical_divisor(g) * (r * (r + 1) / 2);
  rep.principal = is_equivalent(g, rep.defect, Divisor());
  return rep;
}

long long clls_restricted_formula(const MetricGraph& g, const SlopeStructure& s, const Divisor& d,
                                  const ClosedSubset& a) {
  const long long r = s.rank();
  GenusPair gp = genus(g, a);
  long long inner = degree_restricted(g, d, a) + (gp.augmented - component_count(g, a)) * r;
  long long ram = 0;
  for (const auto& dir : boundary_directions(g, a)) {
    auto sl = s.outgoing(g, dir);
    inner -= sl[0];
    for (size_t j = 0; j < sl.size(); ++j) ram += sl[j] - sl[0] - static_cast<long long>(j);
  }
  return (r + 1) * inner - ram;
}

}  // namespace tropws
