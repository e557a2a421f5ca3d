#pragma once

// Event-driven burning on a metric graph. The engine is written against an
// arithmetic policy so the same code runs on exact rationals and on affine
// values a + b*delta for an infinitesimal delta > 0.

#include "tropws/graph.hpp"

#include <array>
#include <deque>
#include <optional>
#include <stdexcept>

namespace tropws::detail {

struct Aff {
  Rational a;
  long long b = 0;

  Aff operator+(const Aff& o) const { return {a + o.a, b + o.b}; }
  Aff operator-(const Aff& o) const { return {a - o.a, b - o.b}; }
};

struct ExactArith {
  using T = Rational;
  static T lift(const Rational& r) { return r; }
  bool less(const T& x, const T& y) { return x < y; }
  bool same(const T& x, const T& y) { return x == y; }
};

// Compares affine values as delta -> 0+. Every comparison whose outcome flips
// at some positive delta records that delta; `horizon` is the smallest one.
struct SymbolicArith {
  using T = Aff;
  std::optional<Rational> horizon;

  static T lift(const Rational& r) { return {r, 0}; }
  void note(const Rational& root) {
    if (!horizon || root < *horizon) horizon = root;
  }
  bool less(const T& x, const T& y) {
    Rational da = y.a - x.a;
    long long db = y.b - x.b;
    if (da != 0 && db != 0) {
      Rational root = -da / db;
      if (root > 0) note(root);
    }
    if (da != 0) return da > 0;
    return db > 0;
  }
  bool same(const T& x, const T& y) { return x.a == y.a && x.b == y.b; }
};

template <class Arith>
class Burner {
 public:
  using T = typename Arith::T;
  struct Node {
    T pos;
    long long chips = 0;
    bool base = false;
  };

  // canonical = true switches genus vertices to the canonical-semimodule rule.
  Burner(const MetricGraph& g, Arith& ar, bool canonical)
      : vchips(g.num_vertices(), 0), nodes(g.num_edges()), vslope(g.num_vertices()), g_(g), ar_(ar),
        canonical_(canonical), slot_(g.num_edges()) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      vslope[v].assign(g.incident(v).size(), 0);
      for (size_t k = 0; k < g.incident(v).size(); ++k) {
        const auto& inc = g.incident(v)[k];
        slot_[inc.edge][inc.sign > 0 ? 0 : 1] = static_cast<int>(k);
      }
    }
  }

  std::vector<long long> vchips;
  std::vector<std::vector<Node>> nodes;
  std::vector<std::vector<long long>> vslope;
  std::array<long long, 2> base_slope{0, 0};  // interior base: [0] toward tail, [1] toward head
  int base_vertex = -1;
  int base_edge = -1;
  long long events = 0;

  int slot(int edge, int end) const { return slot_[edge][end]; }

  // Places exact chips; interior points must arrive sorted per edge.
  void load(const Divisor& d) {
    for (const auto& [p, n] : d.terms()) {
      if (p.is_vertex())
        vchips[p.vertex] += n;
      else
        nodes[p.edge].push_back({Arith::lift(p.offset), n, false});
    }
  }

  void set_base_vertex(int v) { base_vertex = v; }

  // Inserts (or marks) the base node on an edge at position pos.
  void set_base_on_edge(int e, const T& pos) {
    base_edge = e;
    auto& list = nodes[e];
    size_t i = 0;
    while (i < list.size() && ar_.less(list[i].pos, pos)) ++i;
    if (i < list.size() && ar_.same(list[i].pos, pos)) {
      list[i].base = true;
      return;
    }
    list.insert(list.begin() + static_cast<long>(i), Node{pos, 0, true});
  }

  const Node& base_node() const {
    for (const auto& n : nodes[base_edge])
      if (n.base) return n;
    throw std::logic_error("base node missing");
  }

  long long base_chips() const { return base_vertex >= 0 ? vchips[base_vertex] : base_node().chips; }

  void run() {
    const int V = g_.num_vertices();
    const int E = g_.num_edges();
    for (;;) {
      std::vector<int> off(E + 1, 0);
      for (int e = 0; e < E; ++e) off[e + 1] = off[e] + static_cast<int>(nodes[e].size());
      const int N = V + off[E];
      std::vector<std::pair<int, int>> where(off[E]);
      for (int e = 0; e < E; ++e)
        for (int i = 0; i < static_cast<int>(nodes[e].size()); ++i) where[off[e] + i] = {e, i};

      struct Seg {
        int other;
        int other_slot;  // slot at `other` if it is a vertex
        int my_slot;     // slot at this node if it is a vertex
        int edge;
        int index;  // segment index along the edge (0 .. nodes[edge].size())
        int dir;    // +1 when travelling toward the edge head
        T len;
      };
      const T zero = Arith::lift(Rational(0));
      auto pos_of = [&](int n, int e) -> T {
        if (n < V) return n == g_.edge(e).tail ? zero : Arith::lift(g_.edge(e).length);
        auto [ee, i] = where[n - V];
        return nodes[ee][i].pos;
      };
      auto segments = [&](int n) {
        std::vector<Seg> out;
        auto add_forward = [&](int e, int i, int my_slot, const T& from) {
          // segment from node (e, i-1) or tail toward (e, i) or head
          const auto& list = nodes[e];
          int other = i < static_cast<int>(list.size()) ? V + off[e] + i : g_.edge(e).head;
          T to = i < static_cast<int>(list.size()) ? list[i].pos : Arith::lift(g_.edge(e).length);
          int os = other < V ? slot_[e][1] : -1;
          out.push_back({other, os, my_slot, e, i, 1, to - from});
        };
        auto add_backward = [&](int e, int i, int my_slot, const T& from) {
          // segment from node (e, i) toward (e, i-1) or tail
          const auto& list = nodes[e];
          int other = i > 0 ? V + off[e] + i - 1 : g_.edge(e).tail;
          T to = i > 0 ? list[i - 1].pos : zero;
          int os = other < V ? slot_[e][0] : -1;
          out.push_back({other, os, my_slot, e, i, -1, from - to});
        };
        if (n < V) {
          const auto& inc = g_.incident(n);
          for (size_t k = 0; k < inc.size(); ++k) {
            int e = inc[k].edge;
            if (inc[k].sign > 0)
              add_forward(e, 0, static_cast<int>(k), zero);
            else
              add_backward(e, static_cast<int>(nodes[e].size()), static_cast<int>(k), Arith::lift(g_.edge(e).length));
          }
        } else {
          auto [e, i] = where[n - V];
          const T& p = nodes[e][i].pos;
          add_backward(e, i, -1, p);
          add_forward(e, i + 1, -1, p);
        }
        return out;
      };
      auto chips = [&](int n) -> long long& {
        if (n < V) return vchips[n];
        auto [e, i] = where[n - V];
        return nodes[e][i].chips;
      };

      // Segment lengths must stay positive; in symbolic mode this records
      // the delta at which two nodes would meet.
      for (int e = 0; e < E; ++e) {
        T prev = zero;
        for (const auto& nd : nodes[e]) {
          if (!ar_.less(zero, nd.pos - prev)) throw std::logic_error("node order violated");
          prev = nd.pos;
        }
        if (!ar_.less(zero, Arith::lift(g_.edge(e).length) - prev)) throw std::logic_error("node past edge end");
      }

      std::vector<char> burnt(N, 0);
      std::vector<long long> count(N, 0);
      std::vector<std::vector<char>> vburn(V);
      for (int v = 0; v < V; ++v) vburn[v].assign(g_.incident(v).size(), 0);

      auto burns = [&](int m) {
        if (m >= V) return count[m] > chips(m);
        long long genus = g_.vertex(m).genus;
        if (!canonical_ || genus == 0) return count[m] > vchips[m];
        int bonus = 1;
        for (size_t k = 0; k < vburn[m].size(); ++k) {
          long long s = vslope[m][k];
          if (vburn[m][k] ? s < 0 : s < 1) bonus = 0;
        }
        return vchips[m] - genus < count[m] - bonus;
      };

      int base = base_vertex;
      if (base < 0) {
        for (int i = 0; i < static_cast<int>(nodes[base_edge].size()); ++i)
          if (nodes[base_edge][i].base) base = V + off[base_edge] + i;
      }
      std::deque<int> queue{base};
      burnt[base] = 1;
      int burnt_count = 1;
      while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        for (const auto& s : segments(n)) {
          int m = s.other;
          if (burnt[m]) continue;
          ++count[m];
          if (m < V) vburn[m][s.other_slot] = 1;
          if (burns(m)) {
            burnt[m] = 1;
            ++burnt_count;
            queue.push_back(m);
          }
        }
      }
      if (burnt_count == N) return;

      // Unburnt nodes fire toward the fire along every burnt segment.
      std::vector<std::pair<int, Seg>> boundary;
      for (int n = 0; n < N; ++n) {
        if (burnt[n]) continue;
        for (auto& s : segments(n))
          if (burnt[s.other]) boundary.push_back({n, s});
      }
      T eps = boundary.front().second.len;
      for (const auto& [n, s] : boundary)
        if (ar_.less(s.len, eps)) eps = s.len;

      std::vector<std::vector<std::pair<int, Node>>> pending(E);
      for (const auto& [n, s] : boundary) {
        chips(n) -= 1;
        if (n < V) vslope[n][s.my_slot] += 1;
        if (ar_.same(eps, s.len)) {
          chips(s.other) += 1;
          if (s.other < V) {
            vslope[s.other][s.other_slot] -= 1;
          } else {
            auto [e, i] = where[s.other - V];
            if (nodes[e][i].base) base_slope[s.dir > 0 ? 0 : 1] -= 1;
          }
        } else {
          T p = pos_of(n, s.edge);
          T q = s.dir > 0 ? p + eps : p - eps;
          pending[s.edge].push_back({s.index, Node{q, 1, false}});
        }
      }
      for (int e = 0; e < E; ++e) {
        std::vector<Node> merged;
        const auto& old = nodes[e];
        for (int j = 0; j <= static_cast<int>(old.size()); ++j) {
          for (const auto& [idx, nd] : pending[e])
            if (idx == j) merged.push_back(nd);
          if (j < static_cast<int>(old.size()) && (old[j].chips != 0 || old[j].base)) merged.push_back(old[j]);
        }
        nodes[e] = std::move(merged);
      }
      ++events;
    }
  }

  Divisor exact_divisor(const MetricGraph& g) const {
    static_assert(std::is_same_v<T, Rational>);
    Divisor d;
    for (int v = 0; v < g.num_vertices(); ++v) d.add(Point::at_vertex(v), vchips[v]);
    for (int e = 0; e < g.num_edges(); ++e)
      for (const auto& nd : nodes[e]) d.add(Point::on_edge(e, nd.pos), nd.chips);
    return d;
  }

 private:
  const MetricGraph& g_;
  Arith& ar_;
  bool canonical_;
  std::vector<std::array<int, 2>> slot_;
};

}  // namespace tropws::detail
