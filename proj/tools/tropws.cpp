// tropws: command-line front end for the tropws library.
//
// Exit codes: 0 success, 1 domain error (including failed verification and
// --strict obstructions), 2 input or parse error.

#include "tropws/augmented.hpp"
#include "tropws/clls.hpp"
#include "tropws/errors.hpp"
#include "tropws/io.hpp"
#include "tropws/oracle.hpp"
#include "tropws/plot.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace tropws;
using io::Json;

namespace {

struct Options {
  std::string graph;
  std::string divisor = "canonical";
  std::string series = "complete";
  long long pluricanonical = 0;
  bool b_modified = false;
  int jobs = 1;
  std::uint64_t seed = 1;
  bool approx = false;
  std::string at;
  std::string set;
  bool open = false;
  std::string slopes;
  bool strict = false;
  int samples = 16;
  std::string locus;
  std::string out;
  oracle::ScanParams scan;
};

Series parse_series(const std::string& s) {
  if (s == "complete") return Series::Complete;
  if (s == "generic") return Series::Generic;
  if (s == "canonical") return Series::Canonical;
  input_error("InvalidStructure", "unknown series '" + s + "'");
}

// The divisor of the series: D for complete and generic, K for canonical.
Divisor load_divisor(const MetricGraph& g, const Options& o) {
  bool explicit_file = o.divisor != "canonical";
  if (o.pluricanonical != 0) {
    if (explicit_file) input_error("InvalidStructure", "--pluricanonical and a divisor file are exclusive");
    if (o.pluricanonical < 1) input_error("InvalidStructure", "--pluricanonical needs n >= 1");
    return canonical_divisor(g) * o.pluricanonical;
  }
  if (parse_series(o.series) == Series::Canonical && explicit_file)
    input_error("InvalidStructure", "the canonical series takes no divisor file");
  if (!explicit_file) return canonical_divisor(g);
  return io::divisor_from_json(g, io::read_json_file(o.divisor));
}

long long series_rank(const MetricGraph& g, const Divisor& d, Series s) {
  switch (s) {
    case Series::Complete: return rank(g, d);
    case Series::Generic: return rank(g, d - genus_divisor(g));
    case Series::Canonical: return g.total_genus() - 1;
  }
  return -1;
}

WLocus series_locus(const MetricGraph& g, const Divisor& d, const Options& o) {
  Series s = parse_series(o.series);
  if (o.b_modified && s != Series::Complete) input_error("InvalidStructure", "--b-modified needs the complete series");
  switch (s) {
    case Series::Complete: return o.b_modified ? b_modified_locus(g, d, o.jobs) : locus(g, d, o.jobs);
    case Series::Generic: return generic_view(g, d, o.jobs).locus;
    case Series::Canonical: return canonical_locus(g, o.jobs);
  }
  return {};
}

// Minimum slopes of the series at x, aligned with g.directions(x).
std::vector<long long> series_slopes(const MetricGraph& g, const Divisor& d, Series s, const Point& x) {
  if (s == Series::Canonical) return canonical_slopes(g, x);
  Divisor base = s == Series::Generic ? d - genus_divisor(g) : d;
  std::vector<long long> out;
  for (const auto& [dir, v] : reduce(g, base, x).slopes.minimum) out.push_back(v);
  return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_rank(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  Series s = parse_series(o.series);
  emit({{"series", o.series}, {"rank", series_rank(g, d, s)}, {"degree", d.degree()}, {"genus", g.total_genus()}});
  return 0;
}

int cmd_reduce(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  Series s = parse_series(o.series);
  if (o.at.empty()) input_error("InvalidStructure", "reduce needs --at");
  Point x = io::point_from_text(g, o.at);
  Json out = {{"series", o.series}, {"at", io::point_to_json(g, x)}};
  long long value;
  if (s == Series::Canonical) {
    value = canonical_reduced_coeff(g, x);
  } else {
    Divisor base = s == Series::Generic ? d - genus_divisor(g) : d;
    Reduction red = reduce(g, base, x);
    value = red.value;
    out["reduced"] = io::divisor_to_json(g, red.reduced);
  }
  out["value"] = value;
  Json slopes = Json::array();
  auto dirs = g.directions(x);
  auto s0 = series_slopes(g, d, s, x);
  for (size_t k = 0; k < dirs.size(); ++k) {
    Json j = io::direction_to_json(g, dirs[k]);
    j.erase("at");
    j["s0"] = s0[k];
    slopes.push_back(j);
  }
  out["slopes"] = slopes;
  return emit(out), 0;
}

int cmd_locus(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  emit(io::locus_to_json(g, series_locus(g, d, o), o.approx));
  return 0;
}

int cmd_weights(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  Series s = parse_series(o.series);
  WLocus l = series_locus(g, d, o);
  Json comps = Json::array();
  for (const auto& c : l.components) {
    Json j = io::subset_to_json(g, c.region, o.approx);
    GenusPair gp = genus(g, c.region);
    j["weight"] = c.weight;
    j["degree"] = degree_restricted(g, d, c.region);
    j["genus"] = gp.betti;
    if (g.augmented()) j["augmented_genus"] = gp.augmented;
    Json out = Json::array();
    for (const auto& dir : boundary_directions(g, c.region)) {
      auto dirs = g.directions(dir.base);
      auto s0 = series_slopes(g, d, s, dir.base);
      for (size_t k = 0; k < dirs.size(); ++k)
        if (dirs[k] == dir) {
          Json x = io::direction_to_json(g, dir);
          x["s0"] = s0[k];
          out.push_back(x);
        }
    }
    j["outgoing"] = out;
    comps.push_back(j);
  }
  emit({{"mode", to_string(l.mode)},
        {"rank", l.rank},
        {"threshold", l.mode == LocusMode::BModified ? l.b : l.rank},
        {"components", comps},
        {"total", l.total}});
  return 0;
}

int cmd_measure(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  if (o.set.empty()) input_error("InvalidStructure", "measure needs --set");
  ClosedSubset a = io::subset_from_json(g, io::read_json_file(o.set));
  WLocus l = series_locus(g, d, o);
  long long m = measure(g, d, a, o.open, l);
  emit({{"series", o.series}, {"open", o.open}, {"measure", m}});
  return 0;
}

int cmd_verify(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  WLocus l = series_locus(g, d, o);
  IdentityReport rep = verify_identities(g, d, l, o.seed, o.samples);
  emit({{"mode", to_string(l.mode)},
        {"rank", l.rank},
        {"total", rep.total},
        {"expected", rep.expected},
        {"total_ok", rep.total_ok},
        {"positive_ok", rep.positive_ok},
        {"forest_ok", rep.forest_ok},
        {"lower_bound_ok", rep.lower_bound_ok},
        {"samples", rep.samples},
        {"failures", rep.failures},
        {"ok", rep.ok()}});
  return rep.ok() ? 0 : 1;
}

SlopeStructure load_slopes(const MetricGraph& g, const Options& o) {
  if (o.slopes.empty()) input_error("InvalidStructure", "--slopes is required");
  SlopeStructureSpec spec = io::slopes_from_json(io::read_json_file(o.slopes));
  auto issues = validate_slope_structure(g, spec);
  for (size_t k = 1; k < issues.size(); ++k) std::cerr << "also: " << issues[k].name << ": " << issues[k].detail << "\n";
  return normalize_slopes(g, spec);
}

int cmd_clls(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  SlopeStructure s = load_slopes(g, o);
  CllsResult res = clls_divisor(g, s, d);
  Json ram = Json::array();
  for (const auto& r : res.ramification) ram.push_back({{"direction", io::direction_to_json(g, r.direction)}, {"alpha", r.alpha}});
  emit({{"rank", res.rank},
        {"divisor", io::divisor_to_json(g, res.w)},
        {"degree", res.w.degree()},
        {"expected_degree", res.expected_degree},
        {"g_effective", res.w.effective()},
        {"ramification", ram}});
  return 0;
}

int cmd_obstruct(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  Divisor d = load_divisor(g, o);
  SlopeStructure s = load_slopes(g, o);
  ObstructionReport rep = realizability_obstructions(g, s, d);
  Json found = Json::array();
  if (!rep.effective) found.push_back("not effective");
  if (!rep.principal) found.push_back("not principal");
  emit({{"effective", rep.effective},
        {"principal", rep.principal},
        {"divisor", io::divisor_to_json(g, rep.w)},
        {"defect", io::divisor_to_json(g, rep.defect)},
        {"obstructions", found}});
  return o.strict && !found.empty() ? 1 : 0;
}

int cmd_scan(const Options& o) {
  oracle::ScanParams p = o.scan;
  p.seed = o.seed;
  p.jobs = o.jobs;
  auto summary = oracle::scan_vertex_weierstrass(p);
  for (const auto& r : summary.records)
    std::cout << Json{{"seed_index", r.seed_index}, {"n", r.n},           {"m", r.m},
                      {"genus", r.genus},           {"wp_free", r.wp_free}, {"vertex_weights", r.vertex_weights}}
                     .dump()
              << "\n";
  std::cerr << Json{{"count", p.count},
                    {"wp_free", summary.wp_free},
                    {"proportion", p.count ? static_cast<double>(summary.wp_free) / p.count : 0.0},
                    {"rejected", summary.rejected}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_plot(const Options& o) {
  MetricGraph g = io::read_graph(o.graph);
  std::optional<WLocus> l;
  if (!o.locus.empty())
    l = io::locus_from_json(g, io::read_json_file(o.locus));
  else
    l = series_locus(g, load_divisor(g, o), o);
  std::string svg = render_svg(g, &*l);
  if (o.out.empty()) {
    std::cout << svg;
  } else {
    std::ofstream f(o.out);
    if (!f) input_error("ParseError", "cannot write " + o.out);
    f << svg;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced divisors, ranks and Weierstrass loci on metric graphs"};
  app.require_subcommand(1);
  Options o;

  auto graph_opts = [&](CLI::App* c) {
    c->add_option("graph", o.graph, "graph file (JSON)")->required();
    c->add_option("--divisor", o.divisor, "divisor file, or 'canonical'");
    c->add_option("--series", o.series, "complete | generic | canonical");
    c->add_option("--pluricanonical", o.pluricanonical, "use n times the canonical divisor");
    c->add_option("--jobs", o.jobs, "worker threads");
    c->add_flag("--float", o.approx, "add decimal approximations to rational output");
  };
  auto locus_opts = [&](CLI::App* c) {
    graph_opts(c);
    c->add_flag("--b-modified", o.b_modified, "use b = min D_x(x) in place of the rank");
  };

  std::map<CLI::App*, int (*)(const Options&)> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* c = app.add_subcommand(name, help);
    handlers[c] = fn;
    return c;
  };

  graph_opts(sub("rank", "rank of the series", cmd_rank));
  auto* reduce_cmd = sub("reduce", "reduced divisor and minimum slopes at a point", cmd_reduce);
  graph_opts(reduce_cmd);
  reduce_cmd->add_option("--at", o.at, "vertex id or EDGE@offset")->required();
  locus_opts(sub("locus", "Weierstrass locus and weights", cmd_locus));
  locus_opts(sub("weights", "component weights with their formula terms", cmd_weights));
  auto* measure_cmd = sub("measure", "Weierstrass measure of a closed set or its interior", cmd_measure);
  locus_opts(measure_cmd);
  measure_cmd->add_option("--set", o.set, "subset file (JSON)")->required();
  measure_cmd->add_flag("--open", o.open, "measure the interior of the set");
  auto* verify_cmd = sub("verify", "check the global weight identities", cmd_verify);
  locus_opts(verify_cmd);
  verify_cmd->add_option("--seed", o.seed, "seed for sampled sets");
  verify_cmd->add_option("--samples", o.samples, "number of sampled sets");
  auto* clls_cmd = sub("clls", "Weierstrass divisor of a slope structure", cmd_clls);
  graph_opts(clls_cmd);
  clls_cmd->add_option("--slopes", o.slopes, "slope structure file (JSON)")->required();
  auto* obstruct_cmd = sub("obstruct", "realizability obstructions of a slope structure", cmd_obstruct);
  graph_opts(obstruct_cmd);
  obstruct_cmd->add_option("--slopes", o.slopes, "slope structure file (JSON)")->required();
  obstruct_cmd->add_flag("--strict", o.strict, "exit 1 when an obstruction is found");
  auto* scan_cmd = sub("scan", "vertex Weierstrass points of random graphs (JSON lines)", cmd_scan);
  scan_cmd->add_option("--family", o.scan.family, "regular | erdos-renyi");
  scan_cmd->add_option("--n", o.scan.n, "vertices per graph");
  scan_cmd->add_option("--degree", o.scan.degree, "degree for the regular family");
  scan_cmd->add_option("--p", o.scan.p, "edge probability for erdos-renyi");
  scan_cmd->add_option("--count", o.scan.count, "number of graphs");
  scan_cmd->add_option("--seed", o.seed, "seed");
  scan_cmd->add_option("--jobs", o.jobs, "worker threads");
  auto* plot_cmd = sub("export-plot", "SVG drawing of the graph and its locus", cmd_plot);
  locus_opts(plot_cmd);
  plot_cmd->add_option("--locus", o.locus, "locus report to draw instead of computing one");
  plot_cmd->add_option("-o,--out", o.out, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return 2;
  }

  try {
    for (auto& [c, fn] : handlers)
      if (c->parsed()) return fn(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Input ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
