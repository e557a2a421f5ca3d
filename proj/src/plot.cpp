#include "tropws/plot.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace tropws {

namespace {

struct Vec {
  double x = 0, y = 0;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double k, Vec a) { return {k * a.x, k * a.y}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

constexpr double kSize = 600, kRadius = 220;
const double kPi = std::acos(-1.0);

// Curve of one source edge: a quadratic Bezier, or a circle for loops.
struct Curve {
  Vec a, c, b;
  bool loop = false;
  Vec centre;
  double radius = 0, start = 0;

  Vec at(double s) const {
    if (loop) {
      double ang = start + 2 * kPi * s;
      return centre + Vec{radius * std::cos(ang), radius * std::sin(ang)};
    }
    double u = 1 - s;
    return (u * u) * a + (2 * u * s) * c + (s * s) * b;
  }
};

std::string path(const Curve& cv, double s0, double s1) {
  std::ostringstream out;
  const int steps = 24;
  for (int k = 0; k <= steps; ++k) {
    Vec p = cv.at(s0 + (s1 - s0) * k / steps);
    out << (k == 0 ? "M" : " L") << num(p.x) << "," << num(p.y);
  }
  return out.str();
}

}  // namespace

std::string render_svg(const MetricGraph& g, const WLocus* l) {
  std::vector<int> visible;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!g.vertex(v).hidden) visible.push_back(v);
  std::vector<Vec> pos(g.num_vertices());
  const Vec centre{kSize / 2, kSize / 2};
  for (size_t k = 0; k < visible.size(); ++k) {
    double ang = -kPi / 2 + 2 * kPi * static_cast<double>(k) / static_cast<double>(visible.size());
    pos[visible[k]] = visible.size() == 1 ? centre : centre + Vec{kRadius * std::cos(ang), kRadius * std::sin(ang)};
  }

  std::vector<Curve> curves(g.num_source_edges());
  std::map<std::pair<int, int>, int> seen;
  for (int s = 0; s < g.num_source_edges(); ++s) {
    const auto& se = g.source_edge(s);
    int k = seen[{std::min(se.tail, se.head), std::max(se.tail, se.head)}]++;
    Curve& cv = curves[s];
    if (se.tail == se.head) {
      Vec p = pos[se.tail];
      Vec out = p - centre;
      double len = std::hypot(out.x, out.y);
      Vec dir = len > 1e-9 ? (1 / len) * out : Vec{0, -1};
      double ang = std::atan2(dir.y, dir.x) + 0.5 * k;
      dir = {std::cos(ang), std::sin(ang)};
      cv.loop = true;
      cv.radius = 30 + 12 * k;
      cv.centre = p + cv.radius * dir;
      cv.start = ang + kPi;
      continue;
    }
    cv.a = pos[se.tail];
    cv.b = pos[se.head];
    Vec mid = 0.5 * (cv.a + cv.b);
    Vec d = cv.b - cv.a;
    double len = std::hypot(d.x, d.y);
    Vec normal = len > 1e-9 ? Vec{-d.y / len, d.x / len} : Vec{0, 1};
    // Offsets 0, +1, -1, +2, -2, ... keyed to the orientation of the pair.
    int step = (k + 1) / 2 * (k % 2 == 1 ? 1 : -1);
    if (se.tail > se.head) step = -step;
    cv.c = mid + (40.0 * step) * normal;
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int s = 0; s < g.num_source_edges(); ++s)
    out << "<path d=\"" << path(curves[s], 0, 1) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  if (l) {
    for (const auto& c : l->components) {
      SourceRegion r = source_region(g, c.region);
      Vec label{0, 0};
      bool have_label = false;
      for (const auto& i : r.intervals) {
        const auto& se = g.source_edge(i.source);
        double s0 = to_double(i.from / se.length), s1 = to_double(i.to / se.length);
        if (s0 == s1) {
          Vec p = curves[i.source].at(s0);
          out << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"5\" fill=\"red\"/>\n";
        } else {
          out << "<path d=\"" << path(curves[i.source], s0, s1)
              << "\" fill=\"none\" stroke=\"red\" stroke-width=\"5\" stroke-opacity=\"0.7\"/>\n";
        }
        if (!have_label) {
          label = curves[i.source].at((s0 + s1) / 2);
          have_label = true;
        }
      }
      for (int v : r.vertices) {
        out << "<circle cx=\"" << num(pos[v].x) << "\" cy=\"" << num(pos[v].y) << "\" r=\"7\" fill=\"red\"/>\n";
        if (!have_label) {
          label = pos[v];
          have_label = true;
        }
      }
      if (have_label)
        out << "<text x=\"" << num(label.x + 8) << "\" y=\"" << num(label.y - 8)
            << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"red\">" << c.weight << "</text>\n";
    }
  }

  for (int v : visible) {
    out << "<circle cx=\"" << num(pos[v].x) << "\" cy=\"" << num(pos[v].y) << "\" r=\"4\" fill=\"black\"/>\n";
    out << "<text x=\"" << num(pos[v].x + 6) << "\" y=\"" << num(pos[v].y + 16)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(g.vertex(v).id.text) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tropws
