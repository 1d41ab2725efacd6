#ifndef SCHARGRAPH_CYCLE_ANALYSIS_HPP
#define SCHARGRAPH_CYCLE_ANALYSIS_HPP

// Detectors for x-cycles, Scharlemann cycles, great webs, (s)-sets and the
// tree/cycle dichotomy on one side of a validated pair.
//
// Vertex sets are sorted vectors of 1-based ids. Sides of a cycle are the two
// regions of the subgraph made of the cycle's edges, so disk containment is
// read off the inherited embedding rather than any coordinates.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph_core.hpp"

namespace schargraph {

using VertexSet = std::vector<int>;

struct CycleSide {
  int region = -1;
  VertexSet inside;          // vertices strictly inside this side
  int inside_edges = 0;      // edges not on the cycle lying on this side
  bool all_parallel = true;  // every inside vertex shares the cycle's sign
};

struct XCycle {
  int label = 0;
  std::vector<int> vertices;  // in cycle order, vertices[i] -> vertices[i+1] via edges[i]
  std::vector<int> edges;
  Sign sign = Sign::Plus;
  CycleSide sides[2];  // [0] lies left of the first edge
  bool great = false;
  bool scharlemann = false;
  bool is_new = true;
  int great_side = -1;        // a side witnessing greatness (the empty one when scharlemann)
  std::pair<int, int> corner_labels{0, 0};  // <x, y> of the empty side when scharlemann

  int order() const { return static_cast<int>(vertices.size()); }
};

struct GreatWeb {
  VertexSet vertices;
  Sign sign = Sign::Plus;
  int leaving = 0;
  int disk_witness = -1;  // region of G[Lambda] holding every other vertex
};

struct SSetFlags {
  bool size_ok = true;        // |V| >= 2
  bool covers_regular = true;  // V* contains V_r
  bool full_when_no_sch = true;
  bool has_scharlemann = false;
};

struct SSet {
  Sign sign = Sign::Plus;
  VertexSet vertices;
  std::vector<int> leave_labels;
  bool innermost = false;
  std::optional<int> disk_witness;
  SSetFlags flags;
};

// ---------------------------------------------------------------------------
// helpers

inline std::vector<char> vertex_mask(const SideGraph& g, const VertexSet& V) {
  std::vector<char> m(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (int v : V) m.at(v) = 1;
  return m;
}

/// G[V]: vertices V and the edges with both ends in V.
inline SubMap induced_submap(const SideGraph& g, const VertexSet& V) {
  auto in = vertex_mask(g, V);
  std::vector<char> emask(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<char> vmask(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : V) vmask[v - 1] = 1;
  for (int e = 0; e < g.edge_count(); ++e)
    emask[e] = in[g.vertex_of(2 * e)] && in[g.vertex_of(2 * e + 1)];
  return SubMap(g.embedding_ptr(), std::move(emask), std::move(vmask));
}

/// A region of G[V] containing every vertex outside V, if one exists.
inline std::optional<int> region_holding_rest(const SideGraph& g, const VertexSet& V) {
  SubMap sub = induced_submap(g, V);
  const int rest = g.vertex_count() - static_cast<int>(V.size());
  for (const auto& r : sub.regions())
    if (static_cast<int>(r.interior_vertices.size()) == rest) return r.id;
  return std::nullopt;
}

inline bool uniform_sign(const SideGraph& g, const VertexSet& V) {
  return std::all_of(V.begin(), V.end(), [&](int v) { return g.sign(v) == g.sign(V.front()); });
}

/// Number of edges with exactly one end in V.
inline int leaving_count(const SideGraph& g, const VertexSet& V) {
  auto in = vertex_mask(g, V);
  int m = 0;
  for (int e = 0; e < g.edge_count(); ++e) m += in[g.vertex_of(2 * e)] != in[g.vertex_of(2 * e + 1)];
  return m;
}

inline bool induced_connected(const SideGraph& g, const VertexSet& V) {
  if (V.empty()) return false;
  auto in = vertex_mask(g, V);
  UnionFind uf(g.vertex_count() + 1);
  for (int e = 0; e < g.edge_count(); ++e) {
    int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
    if (in[a] && in[b]) uf.unite(a, b);
  }
  int root = uf.find(V.front());
  return std::all_of(V.begin(), V.end(), [&](int v) { return uf.find(v) == root; });
}

// ---------------------------------------------------------------------------
// x-cycles

inline int x_successor(const SideGraph& g, int v, int x) { return g.vertex_of(PlaneGraph::twin(g.dart_at({v, x}))); }

inline void fill_sides(const SideGraph& g, XCycle& c) {
  std::vector<char> emask(static_cast<std::size_t>(g.edge_count()), 0);
  for (int e : c.edges) emask[e] = 1;
  SubMap sub = SubMap::spanned_by(g.embedding_ptr(), emask);
  int d0 = g.dart_at({c.vertices.front(), c.label});
  int regs[2] = {sub.region_of_dart(d0), sub.region_of_dart(PlaneGraph::twin(d0))};
  for (int k = 0; k < 2; ++k) {
    const Region& r = sub.regions()[regs[k]];
    CycleSide& s = c.sides[k];
    s.region = regs[k];
    for (int v : r.interior_vertices) s.inside.push_back(v + 1);
    std::sort(s.inside.begin(), s.inside.end());
    s.inside_edges = static_cast<int>(r.interior_edges.size());
    s.all_parallel = std::all_of(s.inside.begin(), s.inside.end(), [&](int v) { return g.sign(v) == c.sign; });
  }
  if (regs[0] == regs[1]) {
    // not a separating cycle (only under unusual nesting); neither side is a disk
    return;
  }
  for (int k = 0; k < 2; ++k) {
    if (c.sides[k].inside.empty() && c.sides[k].inside_edges == 0) {
      c.scharlemann = true;
      c.great_side = k;
    }
  }
  if (!c.scharlemann)
    for (int k = 0; k < 2; ++k)
      if (c.sides[k].all_parallel && c.great_side < 0) c.great_side = k;
  c.great = c.great_side >= 0;
  c.is_new = !c.scharlemann;
  if (c.scharlemann) {
    // With nothing inside, the side's corner at the first vertex runs from x to the incoming label.
    int in_dart = PlaneGraph::twin(g.dart_at({c.vertices.back(), c.label}));
    int y = g.label_of(in_dart);
    c.corner_labels = {std::min(c.label, y), std::max(c.label, y)};
  }
}

/// Every x-cycle: cycles of v -> far end of the edge at (v, x) on parallel vertices.
inline std::vector<XCycle> find_x_cycles(const SideGraph& g, int x) {
  if (x < 1 || x > g.label_count()) throw Error("USAGE", "label out of range");
  const int n = g.vertex_count();
  std::vector<int> state(static_cast<std::size_t>(n) + 1, 0);  // 0 new, 1 on stack, 2 done
  std::vector<XCycle> out;
  for (int s = 1; s <= n; ++s) {
    if (state[s]) continue;
    std::vector<int> path;
    int v = s;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = x_successor(g, v, x);
    }
    if (state[v] == 1) {
      auto it = std::find(path.begin(), path.end(), v);
      XCycle c;
      c.label = x;
      c.vertices.assign(it, path.end());
      c.sign = g.sign(c.vertices.front());
      for (int u : c.vertices) c.edges.push_back(PlaneGraph::edge_of(g.dart_at({u, x})));
      if (uniform_sign(g, c.vertices)) {
        fill_sides(g, c);
        out.push_back(std::move(c));
      }
    }
    for (int u : path) state[u] = 2;
  }
  return out;
}

inline std::vector<XCycle> find_all_x_cycles(const SideGraph& g) {
  std::vector<XCycle> all;
  for (int x = 1; x <= g.label_count(); ++x) {
    auto cs = find_x_cycles(g, x);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  return all;
}

/// Scharlemann cycles, each reported once (it is an x-cycle for both of its labels).
inline std::vector<XCycle> find_scharlemann_cycles(const SideGraph& g) {
  std::vector<XCycle> out;
  std::set<std::vector<int>> seen;
  for (auto& c : find_all_x_cycles(g)) {
    if (!c.scharlemann) continue;
    std::vector<int> key = c.edges;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back(std::move(c));
  }
  return out;
}

struct ScharlemannConsistency {
  bool consistent = true;
  std::vector<XCycle> cycles;
  std::optional<std::pair<int, int>> clash;  // indices of two disagreeing cycles
};

inline ScharlemannConsistency scharlemann_consistency(const SideGraph& g) {
  ScharlemannConsistency rep;
  rep.cycles = find_scharlemann_cycles(g);
  for (std::size_t i = 1; i < rep.cycles.size(); ++i) {
    const auto& a = rep.cycles[0];
    const auto& b = rep.cycles[i];
    if (a.corner_labels != b.corner_labels || a.order() != b.order()) {
      rep.consistent = false;
      rep.clash = {0, static_cast<int>(i)};
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// webs

/// Uniform-sign sets Lambda, connected through parallel edges, with a region of
/// G[Lambda] holding all other vertices and exactly m leaving edges (any m when m < 0).
inline std::vector<GreatWeb> find_great_webs(const SideGraph& g, int m) {
  std::vector<GreatWeb> out;
  auto consider = [&](const VertexSet& L) {
    int leave = leaving_count(g, L);
    if (m >= 0 && leave != m) return;
    auto w = region_holding_rest(g, L);
    if (!w) return;
    out.push_back({L, g.sign(L.front()), leave, *w});
  };
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    VertexSet cls;
    for (int v = 1; v <= g.vertex_count(); ++v)
      if (g.sign(v) == s) cls.push_back(v);
    // each connected subset is grown from its smallest vertex
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()) + 1);
    for (int e = 0; e < g.edge_count(); ++e) {
      int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
      if (a != b && g.sign(a) == s && g.sign(b) == s) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
    std::set<VertexSet> seen;
    std::function<void(VertexSet)> grow = [&](VertexSet cur) {
      if (!seen.insert(cur).second) return;
      consider(cur);
      for (int v : cur)
        for (int w : adj[v])
          if (w > cur.front() && !std::binary_search(cur.begin(), cur.end(), w)) {
            VertexSet next = cur;
            next.insert(std::lower_bound(next.begin(), next.end(), w), w);
            grow(next);
          }
    };
    for (int v : cls) grow({v});
  }
  return out;
}

struct WebNumberFlags {
  bool divides = false;
  bool proper = false;
  bool min_ok = false;
  bool all() const { return divides && proper && min_ok; }
};

inline WebNumberFlags web_number_check(int n, int v) {
  if (n < 2 || v < 1) throw Error("USAGE", "need n >= 2 and v >= 1");
  return {v % n == 0, n != v, v >= 4};
}

// ---------------------------------------------------------------------------
// (s)-sets

/// Labels at which edges leave V.
inline std::vector<int> leave_labels(const SideGraph& g, const VertexSet& V) {
  auto in = vertex_mask(g, V);
  std::set<int> out;
  for (int v : V)
    for (int x = 1; x <= g.label_count(); ++x)
      if (!in[x_successor(g, v, x)]) out.insert(x);
  return {out.begin(), out.end()};
}

/// Components of the graph of edges between parallel vertices.
inline std::vector<VertexSet> parallel_components(const SideGraph& g) {
  UnionFind uf(g.vertex_count() + 1);
  for (int e = 0; e < g.edge_count(); ++e) {
    int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
    if (g.parallel(a, b)) uf.unite(a, b);
  }
  std::map<int, VertexSet> comps;
  for (int v = 1; v <= g.vertex_count(); ++v) comps[uf.find(v)].push_back(v);
  std::vector<VertexSet> out;
  for (auto& [r, c] : comps) out.push_back(std::move(c));
  return out;
}

inline bool is_s_set(const SideGraph& g, const VertexSet& V) {
  if (V.empty() || !uniform_sign(g, V)) return false;
  auto in = vertex_mask(g, V);
  for (int e = 0; e < g.edge_count(); ++e) {
    int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
    if (in[a] != in[b] && g.parallel(a, b)) return false;
  }
  return true;
}

/// Regular labels: all labels other than the special labels 1 and 2.
inline std::vector<int> regular_labels(const SideGraph& g) {
  std::vector<int> r;
  for (int x = 3; x <= g.label_count(); ++x) r.push_back(x);
  return r;
}

inline SSet make_s_set(const SideGraph& g, VertexSet V, const std::vector<XCycle>& sch) {
  SSet s;
  s.sign = g.sign(V.front());
  s.vertices = std::move(V);
  s.leave_labels = leave_labels(g, s.vertices);
  s.disk_witness = region_holding_rest(g, s.vertices);
  s.innermost = s.disk_witness.has_value();
  auto in = vertex_mask(g, s.vertices);
  for (const auto& c : sch)
    if (std::all_of(c.vertices.begin(), c.vertices.end(), [&](int v) { return in[v]; }))
      s.flags.has_scharlemann = true;
  if (s.innermost) {
    s.flags.size_ok = s.vertices.size() >= 2;
    auto reg = regular_labels(g);
    s.flags.covers_regular = std::includes(s.leave_labels.begin(), s.leave_labels.end(), reg.begin(), reg.end());
    if (!s.flags.has_scharlemann)
      s.flags.full_when_no_sch = static_cast<int>(s.leave_labels.size()) == g.label_count();
  }
  return s;
}

/// Every maximal connected (s)-set, i.e. every component of the parallel-edge graph.
inline std::vector<SSet> find_s_sets(const SideGraph& g) {
  auto sch = find_scharlemann_cycles(g);
  std::vector<SSet> out;
  for (auto& comp : parallel_components(g)) out.push_back(make_s_set(g, std::move(comp), sch));
  return out;
}

/// For an innermost (s)-set with p - 2 leaving edges: regular labels meeting [V,V] not exactly |V|-1 times.
inline std::vector<int> edges_in_s_disk_violations(const SideGraph& g, const SSet& s) {
  std::vector<int> bad;
  if (!s.innermost || leaving_count(g, s.vertices) != g.label_count() - 2) return bad;
  auto in = vertex_mask(g, s.vertices);
  for (int x : regular_labels(g)) {
    int count = 0;
    for (int v : s.vertices) count += in[x_successor(g, v, x)];
    if (count != static_cast<int>(s.vertices.size()) - 1) bad.push_back(x);
  }
  return bad;
}

struct Descent {
  SSet result;
  int iterations = 0;
  std::vector<VertexSet> chain;  // the (s)-sets visited
};

/// Finds an innermost (s)-set inside one side of a cycle on parallel vertices.
/// Side 0 lies left of cycle_edges[0] leaving cycle_vertices[0], or left of `first_dart` when given.
inline Descent descend_to_s_disk(const SideGraph& g, const std::vector<int>& cycle_vertices,
                                 const std::vector<int>& cycle_edges, int side, int first_dart = -1) {
  if (cycle_vertices.empty() || !uniform_sign(g, cycle_vertices))
    throw Error("USAGE", "sigma must be a cycle on parallel vertices");
  if (cycle_edges.size() != cycle_vertices.size()) throw Error("USAGE", "sigma needs one edge per vertex");
  if (side != 0 && side != 1) throw Error("USAGE", "side must be 0 or 1");
  std::vector<char> emask(static_cast<std::size_t>(g.edge_count()), 0);
  for (int e : cycle_edges) emask.at(static_cast<std::size_t>(e)) = 1;
  SubMap sub = SubMap::spanned_by(g.embedding_ptr(), emask);
  int d0 = first_dart;
  if (d0 < 0) {
    int e0 = cycle_edges.front();
    d0 = g.vertex_of(2 * e0) == cycle_vertices.front() ? 2 * e0 : 2 * e0 + 1;
  }
  int next = cycle_vertices.size() == 1 ? cycle_vertices.front() : cycle_vertices[1];
  if (g.vertex_of(d0) != cycle_vertices.front() || g.vertex_of(PlaneGraph::twin(d0)) != next)
    throw Error("USAGE", "cycle edges do not follow the vertex order");
  int region = sub.region_of_dart(side == 0 ? d0 : PlaneGraph::twin(d0));
  VertexSet inside;
  for (int v : sub.regions()[region].interior_vertices) inside.push_back(v + 1);

  Sign sigma_sign = g.sign(cycle_vertices.front());
  auto sch = find_scharlemann_cycles(g);
  auto comps = parallel_components(g);
  Descent out;
  for (int guard = 0; guard <= g.vertex_count(); ++guard) {
    std::vector<char> in_disk(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (int v : inside) in_disk[v] = 1;
    std::vector<const VertexSet*> candidates;
    for (const auto& c : comps)
      if (g.sign(c.front()) == -sigma_sign && std::all_of(c.begin(), c.end(), [&](int v) { return in_disk[v]; }))
        candidates.push_back(&c);
    if (candidates.empty()) throw Error("TRIVIAL_DISK", "no vertex of sign opposite to the bounding cycle inside");
    ++out.iterations;
    for (const VertexSet* c : candidates) {
      if (region_holding_rest(g, *c)) {
        out.chain.push_back(*c);
        out.result = make_s_set(g, *c, sch);
        return out;
      }
    }
    // go into a nontrivial inner face of the first candidate
    const VertexSet& Vi = *candidates.front();
    out.chain.push_back(Vi);
    SubMap gv = induced_submap(g, Vi);
    std::optional<VertexSet> next;
    for (const auto& r : gv.regions()) {
      VertexSet rin;
      bool outside_touch = false, nontrivial = false;
      for (int v0 : r.interior_vertices) {
        int v = v0 + 1;
        if (!in_disk[v]) outside_touch = true;
        if (g.sign(v) != g.sign(Vi.front())) nontrivial = true;
        rin.push_back(v);
      }
      if (outside_touch || !nontrivial) continue;
      next = rin;
      break;
    }
    if (!next) throw Error("NO_DESCENT", "no nontrivial inner face to descend into");
    inside = *next;
    sigma_sign = g.sign(Vi.front());
  }
  throw Error("NO_DESCENT", "descent did not terminate");
}

/// Same, with the sides numbered as in XCycle::sides.
inline Descent descend_to_s_disk(const SideGraph& g, const XCycle& c, int side) {
  return descend_to_s_disk(g, c.vertices, c.edges, side, g.dart_at({c.vertices.front(), c.label}));
}

// ---------------------------------------------------------------------------
// trees and cycles

enum class ComponentKind { TreeAtSpecial, Tree, Cycle, Other };

inline const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::TreeAtSpecial: return "tree_at_special";
    case ComponentKind::Tree: return "tree";
    case ComponentKind::Cycle: return "cycle";
    default: return "other";
  }
}

struct DirectedEdge {
  int edge = 0;
  Slot tail, head;  // slots on the side being analysed
};

struct ComponentReport {
  ComponentKind kind = ComponentKind::Other;
  VertexSet vertices;
  std::vector<DirectedEdge> edges;
  int root = 0;
  std::vector<int> cycle;  // directed cycle witness (vertices)
  bool parallel = false;   // all vertices share a sign
  bool undirected_acyclic = false;
  bool all_out = false;    // every vertex has an outgoing edge
};

/// Components of a directed edge list, with tree-or-cycle classification.
inline std::vector<ComponentReport> classify_directed(const SideGraph& g, const std::vector<DirectedEdge>& edges) {
  UnionFind uf(g.vertex_count() + 1);
  std::vector<char> touched(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (const auto& e : edges) {
    uf.unite(e.tail.vertex, e.head.vertex);
    touched[e.tail.vertex] = touched[e.head.vertex] = 1;
  }
  std::map<int, ComponentReport> comps;
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (touched[v]) comps[uf.find(v)].vertices.push_back(v);
  for (const auto& e : edges) comps[uf.find(e.tail.vertex)].edges.push_back(e);

  std::vector<ComponentReport> out;
  for (auto& [r, c] : comps) {
    std::map<int, std::vector<int>> succ;
    std::map<int, int> outdeg;
    for (const auto& e : c.edges) {
      succ[e.tail.vertex].push_back(e.head.vertex);
      ++outdeg[e.tail.vertex];
    }
    c.parallel = uniform_sign(g, c.vertices);
    c.undirected_acyclic = c.edges.size() + 1 == c.vertices.size();
    c.all_out = std::all_of(c.vertices.begin(), c.vertices.end(), [&](int v) { return outdeg[v] > 0; });
    // directed cycle search
    std::map<int, int> color;
    std::vector<int> stack;
    std::function<bool(int)> dfs = [&](int v) -> bool {
      color[v] = 1;
      stack.push_back(v);
      for (int w : succ[v]) {
        if (color[w] == 1) {
          auto it = std::find(stack.begin(), stack.end(), w);
          c.cycle.assign(it, stack.end());
          return true;
        }
        if (color[w] == 0 && dfs(w)) return true;
      }
      color[v] = 2;
      stack.pop_back();
      return false;
    };
    for (int v : c.vertices)
      if (!color[v] && dfs(v)) break;
    if (!c.cycle.empty()) {
      c.kind = ComponentKind::Cycle;
    } else if (c.undirected_acyclic) {
      int roots = 0, root = 0;
      bool in_tree = true;
      for (int v : c.vertices) {
        if (outdeg[v] == 0) {
          ++roots;
          root = v;
        } else if (outdeg[v] != 1) {
          in_tree = false;
        }
      }
      if (in_tree && roots == 1) {
        c.root = root;
        c.kind = (root == 1 || root == 2) ? ComponentKind::TreeAtSpecial : ComponentKind::Tree;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Orients each edge of G_S between a V label and a W label from the V end to the W end.
inline std::vector<ComponentReport> trees_or_cycles(const SideGraph& g, const std::vector<int>& V,
                                                    const std::vector<int>& W) {
  std::vector<char> inV(static_cast<std::size_t>(g.label_count()) + 1, 0), inW = inV;
  for (int v : V) inV.at(v) = 1;
  for (int w : W) inW.at(w) = 1;
  std::vector<DirectedEdge> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    Slot a = g.slot_of(2 * e), b = g.slot_of(2 * e + 1);
    if (inV[a.label] && inW[b.label])
      edges.push_back({e, a, b});
    else if (inV[b.label] && inW[a.label])
      edges.push_back({e, b, a});
  }
  return classify_directed(g, edges);
}

/// The two facts every classification must satisfy; returns a description of the first breach.
inline std::optional<std::string> tree_dichotomy_breach(const std::vector<ComponentReport>& comps) {
  for (const auto& c : comps) {
    if (c.all_out && c.cycle.empty()) return "component with out-degree >= 1 everywhere but no directed cycle";
    if (c.undirected_acyclic && !(c.vertices.size() > c.edges.size())) return "acyclic component with V <= E";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// properties and isolation

struct Properties {
  bool P = false;
  bool A = false;
};

inline Properties check_properties(const SideGraph& g, const std::vector<int>& V, const std::vector<int>& L) {
  Properties pr;
  pr.P = std::all_of(V.begin(), V.end(), [&](int x) {
    return std::any_of(L.begin(), L.end(), [&](int y) { return g.parallel(x, x_successor(g, x, y)); });
  });
  pr.A = std::all_of(L.begin(), L.end(), [&](int y) {
    return std::any_of(V.begin(), V.end(), [&](int x) { return !g.parallel(x, x_successor(g, x, y)); });
  });
  return pr;
}

inline VertexSet isolated_vertices(const SideGraph& g) {
  VertexSet out;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    bool iso = true;
    for (int x = 1; x <= g.label_count() && iso; ++x) iso = !g.parallel(v, x_successor(g, v, x));
    if (iso) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON certificates

inline nlohmann::json to_json(const XCycle& c) {
  nlohmann::json j;
  j["kind"] = c.scharlemann ? "scharlemann" : (c.great ? "great_x_cycle" : "x_cycle");
  j["label"] = c.label;
  j["vertices"] = c.vertices;
  j["edges"] = c.edges;
  j["sign"] = to_string(c.sign);
  j["order"] = c.order();
  j["great"] = c.great;
  j["new"] = c.is_new;
  if (c.scharlemann) j["labels"] = {c.corner_labels.first, c.corner_labels.second};
  return j;
}

inline nlohmann::json to_json(const GreatWeb& w) {
  return {{"kind", "great_web"}, {"vertices", w.vertices}, {"sign", to_string(w.sign)},
          {"m", w.leaving},      {"disk_witness", w.disk_witness}};
}

inline nlohmann::json to_json(const SSet& s) {
  nlohmann::json j = {{"kind", "s_set"},
                      {"sign", to_string(s.sign)},
                      {"vertices", s.vertices},
                      {"leave_labels", s.leave_labels},
                      {"innermost", s.innermost}};
  if (s.disk_witness) j["disk_witness"] = *s.disk_witness;
  if (s.innermost)
    j["flags"] = {{"size_ok", s.flags.size_ok},
                  {"covers_regular", s.flags.covers_regular},
                  {"full_when_no_scharlemann", s.flags.full_when_no_sch},
                  {"has_scharlemann", s.flags.has_scharlemann}};
  return j;
}

inline nlohmann::json to_json(const ComponentReport& c) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.edges)
    edges.push_back({{"edge", e.edge}, {"tail", slot_json(e.tail)}, {"head", slot_json(e.head)}});
  nlohmann::json j = {{"kind", to_string(c.kind)}, {"vertices", c.vertices}, {"edges", edges}, {"parallel", c.parallel}};
  if (c.kind == ComponentKind::Tree || c.kind == ComponentKind::TreeAtSpecial) j["root"] = c.root;
  if (!c.cycle.empty()) j["cycle"] = c.cycle;
  return j;
}

/// Everything `analyze` reports for one side.
inline nlohmann::json analyze_side(const SideGraph& g) {
  nlohmann::json j;
  j["side"] = std::string(1, to_char(g.side()));
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& c : find_all_x_cycles(g)) xs.push_back(to_json(c));
  j["x_cycles"] = xs;
  auto cons = scharlemann_consistency(g);
  nlohmann::json sch = nlohmann::json::array();
  for (const auto& c : cons.cycles) sch.push_back(to_json(c));
  j["scharlemann"] = sch;
  j["scharlemann_consistent"] = cons.consistent;
  nlohmann::json webs = nlohmann::json::array();
  for (const auto& w : find_great_webs(g, g.label_count() - 2)) webs.push_back(to_json(w));
  j["great_webs"] = webs;
  nlohmann::json ss = nlohmann::json::array();
  for (const auto& s : find_s_sets(g)) ss.push_back(to_json(s));
  j["s_sets"] = ss;
  j["isolated"] = isolated_vertices(g);
  return j;
}

}  // namespace schargraph

#endif  // SCHARGRAPH_CYCLE_ANALYSIS_HPP
