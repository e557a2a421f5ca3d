#include "sweep.hpp"

#include "parallel.hpp"
#include "tropws/errors.hpp"

namespace tropws::detail {

namespace {

VertexSlopes zero_slopes(const MetricGraph& g) {
  VertexSlopes vs(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) vs[v].assign(g.incident(v).size(), 0);
  return vs;
}

struct VertexState {
  Divisor reduced;
  VertexSlopes slopes;
  long long value = 0;
};

}  // namespace

ExactRun canonical_run(const MetricGraph& g, const Point& x) {
  g.check_point(x);
  Divisor k = canonical_divisor(g);
  if (!k.effective())
    domain_error("InvalidStructure", "canonical series needs every genus-0 vertex to have valence at least 2");
  VertexSlopes zero = zero_slopes(g);
  return run_exact(g, k, &zero, x, 0, true);
}

Profile sweep_profile(const MetricGraph& g, const Divisor& start, bool canonical, int jobs) {
  const int V = g.num_vertices();
  std::vector<VertexState> states(V);
  parallel_for(V, jobs, [&](int v) {
    Point x = Point::at_vertex(v);
    if (canonical) {
      auto run = canonical_run(g, x);
      states[v] = {run.reduced, run.vslope, run.reduced(x)};
    } else {
      auto red = reduce(g, start, x);
      states[v] = {red.reduced, {}, red.value};
    }
  });
  for (int v = 0; v < V; ++v)
    if (states[v].value < 0) domain_error("NegativeRank", "divisor has negative rank");

  Profile prof;
  prof.vertex_value.resize(V);
  for (int v = 0; v < V; ++v) prof.vertex_value[v] = states[v].value;
  prof.edges.resize(g.num_edges());
  std::vector<long long> events(g.num_edges(), 0);

  parallel_for(g.num_edges(), jobs, [&](int e) {
    auto& ep = prof.edges[e];
    const Rational& len = g.edge(e).length;
    const VertexState& tail = states[g.edge(e).tail];
    Divisor cur = tail.reduced;
    VertexSlopes slopes = tail.slopes;
    Rational t = 0;
    ep.cuts.push_back(t);
    for (;;) {
      auto sym = run_symbolic(g, cur, canonical ? &slopes : nullptr, e, t, 1, canonical);
      ++events[e];
      Rational next = t + *sym.horizon;
      ep.on_piece.push_back(sym.base_chips);
      ep.cuts.push_back(next);
      if (next == len) break;
      Point x = Point::on_edge(e, next);
      auto run = run_exact(g, cur, canonical ? &slopes : nullptr, x, 0, canonical);
      ++events[e];
      ep.at_cut.push_back(run.reduced(x));
      cur = std::move(run.reduced);
      slopes = std::move(run.vslope);
      t = next;
    }
  });
  prof.events = V;
  for (long long n : events) prof.events += n;
  return prof;
}

}  // namespace tropws::detail
