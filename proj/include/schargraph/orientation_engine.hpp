#ifndef SCHARGRAPH_ORIENTATION_ENGINE_HPP
#define SCHARGRAPH_ORIENTATION_ENGINE_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schargraph/cycle_analysis.hpp"
#include "schargraph/error.hpp"
#include "schargraph/graph_core.hpp"
#include "schargraph/planar_map.hpp"
#include "schargraph/star_calculus.hpp"

namespace schargraph {

// ---------------------------------------------------------------------------
// graphs with dual orientation
//
// A corner is named by the subgraph dart at its clockwise end. omega[d] is the
// orientation of the corner counterclockwise after d; entries for darts outside
// the subgraph are unused.

struct OrientedGraph {
  SubMap sub;
  std::vector<Dir> omega;
  std::shared_ptr<const SideGraph> side;  // labels and signs; null for bare plane maps
  std::optional<Star> source;

  const PlaneGraph& graph() const { return sub.graph(); }
  Dir corner(int d) const { return omega[static_cast<std::size_t>(d)]; }
  Dir ccw_side(int d) const { return corner(d); }
  Dir cw_side(int d) const { return corner(sub.cw_next(d)); }
  bool anticlockwise(int d) const { return cw_side(d) == Dir::Out && ccw_side(d) == Dir::In; }
  bool clockwise(int d) const { return cw_side(d) == Dir::In && ccw_side(d) == Dir::Out; }
  bool switch_at(int d) const { return cw_side(d) != ccw_side(d); }

  const SideGraph& labels() const {
    if (!side) throw Error("USAGE", "oriented graph carries no labels");
    return *side;
  }

  std::vector<int> darts() const {
    std::vector<int> out;
    for (int d = 0; d < graph().dart_count(); ++d)
      if (sub.has_dart(d)) out.push_back(d);
    return out;
  }

  bool operator==(const OrientedGraph& o) const {
    if (sub.edge_mask() != o.sub.edge_mask()) return false;
    for (int d : darts())
      if (corner(d) != o.corner(d)) return false;
    return true;
  }
};

/// Bare plane map with one orientation per corner.
inline OrientedGraph orient_map(std::shared_ptr<const Embedding> root, std::vector<Dir> omega) {
  if (static_cast<int>(omega.size()) != root->graph().dart_count()) throw Error("USAGE", "omega needs one entry per dart");
  return {SubMap::full(std::move(root)), std::move(omega), nullptr, std::nullopt};
}

/// Gap index of the gap counterclockwise after label x on a vertex of the given sign.
inline int ccw_gap(Sign vertex_sign, int x, int n) { return vertex_sign == Sign::Plus ? x - 1 : (x - 2 + n) % n; }

/// The dual orientation T generates on G_S(L(T)): T on vertices of its sign, -T elsewhere.
inline OrientedGraph induce_orientation(const std::shared_ptr<const SideGraph>& g, const Star& t) {
  const int n = g->label_count();
  if (t.n() != n) throw Error("USAGE", "star has " + std::to_string(t.n()) + " labels, graph has " + std::to_string(n));
  for (int x = 1; x <= n; ++x)
    if (t.parity[static_cast<std::size_t>(x - 1)] != g->parity(x))
      throw Error("USAGE", "star parity disagrees with the graph at label " + std::to_string(x));
  LabelSubgraph ls = subgraph_labels(g, t.L);
  std::vector<Dir> omega(static_cast<std::size_t>(g->embedding().graph().dart_count()), Dir::Out);
  for (int d = 0; d < static_cast<int>(omega.size()); ++d) {
    if (!ls.view.sub().has_dart(d)) continue;
    Sign s = g->sign(g->vertex_of(d));
    Dir dir = t.gap[static_cast<std::size_t>(ccw_gap(s, g->label_of(d), n))];
    omega[static_cast<std::size_t>(d)] = s == t.sign ? dir : flip(dir);
  }
  return {ls.view.sub(), std::move(omega), g, t};
}

/// The star seen at vertex v (1-based): its labels are the subgraph darts at v.
inline Star vertex_star(const OrientedGraph& G, int v) {
  const SideGraph& g = G.labels();
  const int n = g.label_count();
  Star t;
  t.sign = g.sign(v);
  for (int x = 1; x <= n; ++x) t.parity.push_back(g.parity(x));
  t.gap.assign(static_cast<std::size_t>(n), Dir::Out);
  const auto& darts = G.sub.darts_at(v - 1);
  for (int d : darts) {
    t.L.push_back(g.label_of(d));
    int end = g.label_of(G.sub.ccw_next(d));
    int x = g.label_of(d);
    do {
      t.gap[static_cast<std::size_t>(ccw_gap(t.sign, x, n))] = G.corner(d);
      x = g.label_ccw(v, x);
    } while (x != end);
  }
  std::sort(t.L.begin(), t.L.end());
  if (t.L.empty()) throw Error("USAGE", "vertex " + std::to_string(v) + " has no corners");
  return t;
}

// ---------------------------------------------------------------------------
// edges

enum class EdgeKind { Absent, Switch, Negative, Other };

inline std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Switch: return "switch";
    case EdgeKind::Negative: return "negative";
    case EdgeKind::Other: return "other";
    default: return "absent";
  }
}

inline EdgeKind classify_edge(const OrientedGraph& G, int e) {
  if (!G.sub.has_edge(e)) return EdgeKind::Absent;
  int a = 2 * e, b = 2 * e + 1;
  if ((G.anticlockwise(a) && G.anticlockwise(b)) || (G.clockwise(a) && G.clockwise(b))) return EdgeKind::Switch;
  Dir d = G.ccw_side(a);
  if (G.cw_side(a) == d && G.ccw_side(b) == d && G.cw_side(b) == d) return EdgeKind::Negative;
  return EdgeKind::Other;
}

/// Kind of every edge of the root map; edges outside the subgraph are Absent.
inline std::vector<EdgeKind> classify_edges(const OrientedGraph& G) {
  std::vector<EdgeKind> out;
  for (int e = 0; e < G.graph().edge_count(); ++e) out.push_back(classify_edge(G, e));
  return out;
}

inline std::vector<int> edges_of_kind(const OrientedGraph& G, EdgeKind kind) {
  std::vector<int> out;
  for (int e = 0; e < G.graph().edge_count(); ++e)
    if (classify_edge(G, e) == kind) out.push_back(e);
  return out;
}

/// Switch edges whose ends are anticlockwise (true) or clockwise (false).
inline bool anticlockwise_switch_edge(const OrientedGraph& G, int e) {
  return classify_edge(G, e) == EdgeKind::Switch && G.anticlockwise(2 * e);
}

// ---------------------------------------------------------------------------
// faces and boundary index

inline bool is_subgraph_of(const SubMap& K, const SubMap& H) {
  if (&K.root() != &H.root()) return false;
  for (int e = 0; e < H.graph().edge_count(); ++e)
    if (K.has_edge(e) && !H.has_edge(e)) return false;
  return true;
}

struct CornerIndex {
  int dart = -1;        // K dart at the clockwise end
  int switches = 0;     // switches of the oriented graph strictly inside
  int index = 1;
};

struct EdgeIndex {
  int dart = -1;  // walk dart
  int index = 0;  // -1 when the two adjacent corners agree
};

struct BoundaryIndex {
  std::vector<CornerIndex> corners;
  std::vector<EdgeIndex> edges;
  int total = 0;
};

/// Darts of the oriented graph strictly inside the K corner counterclockwise after K dart d.
inline std::vector<int> darts_inside(const OrientedGraph& G, const SubMap& K, int d) {
  std::vector<int> out;
  int stop = K.ccw_next(d);
  if (G.sub.degree(G.graph().vertex_of(d)) <= 1) return out;
  for (int cur = G.sub.ccw_next(d); cur != stop && cur != d; cur = G.sub.ccw_next(cur)) out.push_back(cur);
  return out;
}

inline const Region& disk_region(const SubMap& K, int region) {
  if (region < 0 || region >= K.region_count()) throw Error("USAGE", "face " + std::to_string(region) + " out of range");
  const Region& R = K.regions()[static_cast<std::size_t>(region)];
  if (!R.is_disk()) throw Error("NOT_A_DISK", "face " + std::to_string(region) + " is not a disk");
  return R;
}

/// index of the boundary of a disk face of a subgraph K of G, with respect to G.
inline BoundaryIndex boundary_index(const OrientedGraph& G, const SubMap& K, int region) {
  if (!is_subgraph_of(K, G.sub)) throw Error("USAGE", "face must come from a subgraph of the oriented graph");
  const Region& R = disk_region(K, region);
  BoundaryIndex out;
  for (int d : R.walks.front()) {
    CornerIndex c;
    c.dart = d;
    for (int x : darts_inside(G, K, d))
      if (G.switch_at(x)) ++c.switches;
    c.index = 1 - c.switches;
    out.corners.push_back(c);
    Dir here = G.ccw_side(d);
    Dir there = G.cw_side(PlaneGraph::twin(d));
    out.edges.push_back({d, here == there ? -1 : 0});
    out.total += c.index + out.edges.back().index;
  }
  return out;
}

inline BoundaryIndex boundary_index(const OrientedGraph& G, int region) { return boundary_index(G, G.sub, region); }

/// Disk faces of G whose corners all share one orientation.
inline std::optional<Dir> uniform_face(const OrientedGraph& G, int region) {
  const Region& R = G.sub.regions()[static_cast<std::size_t>(region)];
  if (!R.is_disk()) return std::nullopt;
  Dir d = G.corner(R.walks.front().front());
  for (int x : R.walks.front())
    if (G.corner(x) != d) return std::nullopt;
  return d;
}

inline std::optional<Dir> uniform_vertex(const OrientedGraph& G, int v0) {
  const auto& darts = G.sub.darts_at(v0);
  if (darts.empty()) return std::nullopt;
  Dir d = G.corner(darts.front());
  for (int x : darts)
    if (G.corner(x) != d) return std::nullopt;
  return d;
}

inline std::vector<int> representing_faces(const OrientedGraph& G) {
  std::vector<int> out;
  for (int r = 0; r < G.sub.region_count(); ++r)
    if (uniform_face(G, r)) out.push_back(r);
  return out;
}

inline bool representative(const OrientedGraph& G) { return !representing_faces(G).empty(); }

// ---------------------------------------------------------------------------
// directed graphs and the index census
//
// A directed plane graph is a PlaneGraph whose edge e runs from dart 2e to dart 2e+1.

struct IndexCensus {
  std::vector<int> vertex_switches, vertex_index;
  std::vector<int> face_switches, face_index;
  std::vector<std::vector<int>> faces;  // dart orbits
  int total = 0;
};

inline IndexCensus directed_index_census(const PlaneGraph& g) {
  int comps = 0;
  g.components(&comps);
  if (g.vertex_count() == 0) throw Error("DISCONNECTED", "empty graph");
  if (comps > 1) throw Error("DISCONNECTED", std::to_string(comps) + " components");
  Embedding emb(g);
  IndexCensus c;
  auto out_dart = [](int d) { return d % 2 == 0; };
  for (int v = 0; v < g.vertex_count(); ++v) {
    int s = 0;
    for (int d : emb.graph().rotation(v))
      if (out_dart(d) != out_dart(emb.graph().ccw_next(d))) ++s;
    c.vertex_switches.push_back(s);
    c.vertex_index.push_back(1 - s / 2);
    c.total += 1 - s / 2;
  }
  if (emb.orbits().empty()) {
    c.faces.push_back({});
    c.face_switches.push_back(0);
    c.face_index.push_back(1);
    c.total += 1;
    return c;
  }
  for (const auto& orbit : emb.orbits()) {
    int s = 0;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      if (out_dart(orbit[i]) != out_dart(orbit[(i + 1) % orbit.size()])) ++s;
    c.faces.push_back(orbit);
    c.face_switches.push_back(s);
    c.face_index.push_back(1 - s / 2);
    c.total += 1 - s / 2;
  }
  return c;
}

// ---------------------------------------------------------------------------
// dual graph: fat vertices, one dual vertex per disk face, one edge per corner

struct DualGraph {
  PlaneGraph graph;
  int fat_count = 0;
  std::vector<int> face_of_dual;  // region id per dual vertex
  std::vector<int> corner_of_edge;  // dart naming the corner

  bool is_dual(int v) const { return v >= fat_count; }
};

inline DualGraph dual_graph(const OrientedGraph& G) {
  DualGraph D;
  D.fat_count = G.graph().vertex_count();
  D.graph = PlaneGraph(D.fat_count);
  for (int r = 0; r < G.sub.region_count(); ++r) {
    const Region& R = G.sub.regions()[static_cast<std::size_t>(r)];
    if (!R.is_disk()) continue;
    int f = D.graph.add_vertex();
    D.face_of_dual.push_back(r);
    const auto& walk = R.walks.front();
    for (std::size_t i = 0; i < walk.size(); ++i) {
      int d = walk[i];
      int v = G.graph().vertex_of(d);
      int kv = G.sub.position(d), kf = static_cast<int>(i);
      if (G.corner(d) == Dir::Out)
        D.graph.add_keyed_edge(v, kv, f, kf);
      else
        D.graph.add_keyed_edge(f, kf, v, kv);
      D.corner_of_edge.push_back(d);
    }
  }
  D.graph.sort_rotations();
  return D;
}

struct HoffmanStats {
  int i = 0, u = 0, r = 0, s = 0, t = 0;
};

inline int dual_vertex_index_sum(const OrientedGraph& G) {
  int sum = 0;
  for (int r = 0; r < G.sub.region_count(); ++r) {
    const Region& R = G.sub.regions()[static_cast<std::size_t>(r)];
    if (!R.is_disk()) continue;
    const auto& walk = R.walks.front();
    int s = 0;
    for (std::size_t k = 0; k < walk.size(); ++k)
      if (G.corner(walk[k]) != G.corner(walk[(k + 1) % walk.size()])) ++s;
    sum += 1 - s / 2;
  }
  return sum;
}

struct Representation {
  std::vector<int> faces;
  std::vector<Dir> dirs;
  HoffmanStats stats;
  bool hoffman_applicable = false;       // r = 0, coherent, nontrivial, |L| >= 2
  bool new_x_cycle = false;              // conclusion (1)
  std::vector<std::string> flags;        // failed parts of conclusion (2)
};

/// Sink/source disk faces and the (i, u, r, s, t) statistics. With the other side
/// supplied and r = 0 under the coherence hypotheses, checks the structural
/// conclusions as instance flags.
inline Representation find_representing_faces(const OrientedGraph& G, const LType& tau,
                                              const SideGraph* other = nullptr) {
  if (!G.source) throw Error("USAGE", "oriented graph was not induced from a star");
  const Star& T = *G.source;
  if (!represents(T, tau)) throw Error("USAGE", "source star does not represent the type");
  Representation rep;
  for (int r = 0; r < G.sub.region_count(); ++r)
    if (auto d = uniform_face(G, r)) {
      rep.faces.push_back(r);
      rep.dirs.push_back(*d);
    }
  SwitchPartition part = partition_switches(T);
  auto& st = rep.stats;
  st.i = static_cast<int>(part.S().size()) / 2 - 1;
  st.u = static_cast<int>(edges_of_kind(G, EdgeKind::Negative).size());
  st.s = static_cast<int>(edges_of_kind(G, EdgeKind::Switch).size());
  st.r = static_cast<int>(rep.faces.size());
  st.t = st.r - dual_vertex_index_sum(G);

  rep.hoffman_applicable = st.r == 0 && T.L.size() >= 2 && !is_trivial(tau) && is_coherent(T);
  if (!rep.hoffman_applicable || !other) return rep;

  const SideGraph& P = G.labels();
  const SideGraph& Q = *other;
  auto subset = [](const VertexSet& a, const LabelSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (const auto& c : find_all_x_cycles(Q))
    if (c.is_new && (subset(c.vertices, part.C) || subset(c.vertices, part.A))) rep.new_x_cycle = true;
  if (rep.new_x_cycle) return rep;

  auto flag = [&](bool ok, const char* name) {
    if (!ok) rep.flags.push_back(name);
  };
  flag(G.sub.connected(), "connected");
  flag(st.t == 0 && st.u == 0, "t_u_zero");
  const int S = static_cast<int>(part.S().size());
  bool special_ok = true, regular_ok = true;
  for (int v = 1; v <= P.vertex_count(); ++v) {
    int all = 0, cw = 0, acw = 0;
    for (int d : G.sub.darts_at(v - 1)) {
      if (classify_edge(G, PlaneGraph::edge_of(d)) != EdgeKind::Switch) continue;
      ++all;
      (G.anticlockwise(d) ? acw : cw) += 1;
    }
    if (v <= 2)
      special_ok = special_ok && all == S;
    else
      regular_ok = regular_ok && cw == static_cast<int>(part.C.size()) - 1 && acw == static_cast<int>(part.A.size()) - 1;
  }
  flag(special_ok, "special_switch_edges");
  flag(regular_ok, "regular_switch_edges");
  bool onC = false, onA = false, order_ok = true;
  for (const auto& c : find_scharlemann_cycles(Q)) {
    if (c.corner_labels != std::pair<int, int>{1, 2}) continue;
    bool inC = subset(c.vertices, part.C), inA = subset(c.vertices, part.A);
    onC = onC || inC;
    onA = onA || inA;
    if ((inC || inA) && c.order() > static_cast<int>(part.C.size())) order_ok = false;
  }
  flag(onC && onA, "scharlemann_on_C_and_A");
  flag(order_ok && part.C.size() == part.A.size(), "order_bound");
  auto rest = [&](const LabelSet& X) {
    LabelSet out;
    std::set_difference(T.L.begin(), T.L.end(), X.begin(), X.end(), std::back_inserter(out));
    return out;
  };
  const int p = P.vertex_count();
  flag(static_cast<int>(edge_set_between(Q, part.C, rest(part.C)).size()) == p - 2 &&
           static_cast<int>(edge_set_between(Q, part.A, rest(part.A)).size()) == p - 2,
       "leaving_edges");
  flag(induced_connected(Q, part.C) && induced_connected(Q, part.A), "switch_sets_connected");
  return rep;
}

// ---------------------------------------------------------------------------
// index witness

struct Witness {
  std::string kind;  // "switch_edge", "face", "fat_vertex"
  int id = -1;       // edge, region of G, or 1-based vertex
  Dir dir = Dir::Out;
};

/// A switch edge, a sink/source face, or a uniform fat vertex of G inside a disk
/// face F of the subgraph K, whose boundary index must be at most 0.
inline std::optional<Witness> index_witness(const OrientedGraph& G, const SubMap& K, int region) {
  int ind = boundary_index(G, K, region).total;
  if (ind > 0) throw Error("PRECONDITION_INDEX", "boundary index " + std::to_string(ind) + " > 0");
  const Region& F = K.regions()[static_cast<std::size_t>(region)];
  std::set<int> roots(F.root_faces.begin(), F.root_faces.end());
  for (int e : F.interior_edges)
    if (G.sub.has_edge(e) && classify_edge(G, e) == EdgeKind::Switch) return Witness{"switch_edge", e, Dir::Out};
  for (int r = 0; r < G.sub.region_count(); ++r) {
    const Region& R = G.sub.regions()[static_cast<std::size_t>(r)];
    if (!roots.count(R.root_faces.front())) continue;
    if (auto d = uniform_face(G, r)) return Witness{"face", r, *d};
  }
  for (int v : F.interior_vertices)
    if (auto d = uniform_vertex(G, v)) return Witness{"fat_vertex", v + 1, *d};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// two-colouring, reversal, rotation-free graph

struct TwoColoring {
  SubMap map;                  // the even subgraph that was coloured
  std::vector<int> color;      // per region of map: 0 white, 1 black
  std::vector<int> peel_order; // region ids of successive peeled disks, outermost recursion first
};

/// Faces of an even-degree subgraph, coloured so every edge separates the colours.
/// Built by peeling the boundary of a disk face and colouring the rest first.
inline TwoColoring two_color_faces(const SubMap& even) {
  const PlaneGraph& g = even.graph();
  for (int v = 0; v < g.vertex_count(); ++v)
    if (even.degree(v) % 2 != 0)
      throw Error("ODD_DEGREE", "vertex " + std::to_string(v + 1) + " has degree " + std::to_string(even.degree(v)));
  std::vector<SubMap> stack{even};
  std::vector<int> peeled;
  for (;;) {
    const SubMap& cur = stack.back();
    bool any = false;
    for (int e = 0; e < g.edge_count(); ++e) any = any || cur.has_edge(e);
    if (!any) break;
    int pick = -1;
    for (int r = 0; r < cur.region_count(); ++r)
      if (cur.regions()[static_cast<std::size_t>(r)].walks.size() == 1) {
        pick = r;
        break;
      }
    if (pick < 0) throw Error("INTERNAL", "no disk face to peel");
    peeled.push_back(pick);
    std::vector<char> mask = cur.edge_mask();
    for (int d : cur.regions()[static_cast<std::size_t>(pick)].walks.front()) mask[PlaneGraph::edge_of(d)] = 0;
    stack.push_back(SubMap(cur.root_ptr(), mask, cur.vertex_mask()));
  }
  // innermost level: one colour everywhere
  std::vector<int> color(static_cast<std::size_t>(stack.back().region_count()), 0);
  for (int k = static_cast<int>(peeled.size()) - 1; k >= 0; --k) {
    const SubMap& level = stack[static_cast<std::size_t>(k)];
    const SubMap& below = stack[static_cast<std::size_t>(k + 1)];
    std::vector<int> up(static_cast<std::size_t>(level.region_count()));
    for (int r = 0; r < level.region_count(); ++r) {
      int f = level.regions()[static_cast<std::size_t>(r)].root_faces.front();
      int c = color[static_cast<std::size_t>(below.region_of_root_face(f))];
      up[static_cast<std::size_t>(r)] = r == peeled[static_cast<std::size_t>(k)] ? 1 - c : c;
    }
    color = std::move(up);
  }
  return {even, std::move(color), std::move(peeled)};
}

inline bool coloring_valid(const TwoColoring& c) {
  for (int e = 0; e < c.map.graph().edge_count(); ++e) {
    if (!c.map.has_edge(e)) continue;
    if (c.color[static_cast<std::size_t>(c.map.region_of_dart(2 * e))] ==
        c.color[static_cast<std::size_t>(c.map.region_of_dart(2 * e + 1))])
      return false;
  }
  return true;
}

inline SubMap switch_subgraph(const OrientedGraph& G) {
  std::vector<char> mask(static_cast<std::size_t>(G.graph().edge_count()), 0);
  for (int e : edges_of_kind(G, EdgeKind::Switch)) mask[static_cast<std::size_t>(e)] = 1;
  return SubMap(G.sub.root_ptr(), mask, G.sub.vertex_mask());
}

inline TwoColoring two_color_switch_faces(const OrientedGraph& G) { return two_color_faces(switch_subgraph(G)); }

/// Colour of each face of G inherited from a colouring of a subgraph.
inline std::vector<int> inherited_colors(const OrientedGraph& G, const TwoColoring& c) {
  std::vector<int> out;
  for (const auto& R : G.sub.regions())
    out.push_back(c.color[static_cast<std::size_t>(c.map.region_of_root_face(R.root_faces.front()))]);
  return out;
}

/// Rev(G, F): every corner of a face in F reversed.
inline OrientedGraph reverse_faces(const OrientedGraph& G, const std::set<int>& faces) {
  OrientedGraph out = G;
  out.source.reset();
  for (int d : G.darts())
    if (faces.count(G.sub.region_of_dart(d))) out.omega[static_cast<std::size_t>(d)] = flip(G.corner(d));
  return out;
}

struct RFGraph {
  OrientedGraph graph;
  TwoColoring coloring;
  std::set<int> black_faces;         // regions of the original graph
  int switch_edges = 0;              // after reversal; 0 whenever the colouring exists
  std::vector<Slot> A_rf, C_rf;      // (vertex, label) slots
  std::vector<ComponentReport> A_trees, C_trees;
  bool directed_cycle = false;       // A or C component with a directed cycle
};

inline std::vector<ComponentReport> switch_label_trees(const SideGraph& g, const std::vector<Slot>& slots) {
  std::vector<DirectedEdge> edges;
  for (Slot s : slots) {
    int d = g.dart_at(s);
    edges.push_back({PlaneGraph::edge_of(d), s, g.slot_of(PlaneGraph::twin(d))});
  }
  return classify_directed(g, edges);
}

inline RFGraph build_rf(const OrientedGraph& G) {
  RFGraph rf{G, two_color_switch_faces(G), {}, 0, {}, {}, {}, {}, false};
  auto colors = inherited_colors(G, rf.coloring);
  for (int r = 0; r < static_cast<int>(colors.size()); ++r)
    if (colors[static_cast<std::size_t>(r)] == 1) rf.black_faces.insert(r);
  rf.graph = reverse_faces(G, rf.black_faces);
  rf.switch_edges = static_cast<int>(edges_of_kind(rf.graph, EdgeKind::Switch).size());
  if (G.side) {
    for (int d : rf.graph.darts()) {
      if (rf.graph.anticlockwise(d)) rf.A_rf.push_back(G.side->slot_of(d));
      if (rf.graph.clockwise(d)) rf.C_rf.push_back(G.side->slot_of(d));
    }
    std::sort(rf.A_rf.begin(), rf.A_rf.end());
    std::sort(rf.C_rf.begin(), rf.C_rf.end());
    rf.A_trees = switch_label_trees(*G.side, rf.A_rf);
    rf.C_trees = switch_label_trees(*G.side, rf.C_rf);
    for (const auto* list : {&rf.A_trees, &rf.C_trees})
      for (const auto& c : *list) rf.directed_cycle = rf.directed_cycle || c.kind == ComponentKind::Cycle;
  }
  return rf;
}

// ---------------------------------------------------------------------------
// derivative of a graph with dual orientation

/// delta_0 Gamma: at each fat vertex the derivative relative to the labels there
/// that meet edges of G(L0). The result lives on the edges meeting the new label sets.
inline OrientedGraph derive_graph(const OrientedGraph& G, const LabelSet& L0, Sign chi) {
  const SideGraph& g = G.labels();
  const int n = g.label_count();
  std::vector<char> inL0(static_cast<std::size_t>(n) + 1, 0);
  for (int x : L0) inL0.at(static_cast<std::size_t>(x)) = 1;
  std::vector<std::set<int>> meet(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (int e = 0; e < g.edge_count(); ++e) {
    int a = 2 * e, b = 2 * e + 1;
    if (!inL0[static_cast<std::size_t>(g.label_of(a))] && !inL0[static_cast<std::size_t>(g.label_of(b))]) continue;
    for (int d : {a, b}) meet[static_cast<std::size_t>(g.vertex_of(d))].insert(g.label_of(d));
  }
  std::vector<Star> stars;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    Star t = vertex_star(G, v);
    const auto& m = meet[static_cast<std::size_t>(v)];
    stars.push_back(derivative_relative(t, LabelSet(m.begin(), m.end()), chi));
  }
  std::vector<char> keep_dart(static_cast<std::size_t>(G.graph().dart_count()), 0);
  std::vector<char> mask(static_cast<std::size_t>(G.graph().edge_count()), 0);
  for (int d = 0; d < G.graph().dart_count(); ++d) {
    const Star& t = stars[static_cast<std::size_t>(g.vertex_of(d) - 1)];
    if (t.has_label(g.label_of(d))) mask[static_cast<std::size_t>(PlaneGraph::edge_of(d))] = 1;
  }
  SubMap sub = SubMap::with_edges(G.sub.root_ptr(), mask);
  std::vector<Dir> omega(static_cast<std::size_t>(G.graph().dart_count()), Dir::Out);
  for (int d = 0; d < G.graph().dart_count(); ++d) {
    if (!sub.has_dart(d)) continue;
    const Star& t = stars[static_cast<std::size_t>(g.vertex_of(d) - 1)];
    omega[static_cast<std::size_t>(d)] = t.ccw_of(g.label_of(d));
  }
  return {std::move(sub), std::move(omega), G.side, std::nullopt};
}

/// A sink/source face of G inside the given face of a derived graph.
inline std::optional<int> trace_sink_source(const OrientedGraph& G, const OrientedGraph& derived, int region) {
  const Region& E = derived.sub.regions()[static_cast<std::size_t>(region)];
  std::set<int> roots(E.root_faces.begin(), E.root_faces.end());
  for (int r = 0; r < G.sub.region_count(); ++r)
    if (roots.count(G.sub.regions()[static_cast<std::size_t>(r)].root_faces.front()) && uniform_face(G, r)) return r;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// corners of faces and the good-corner index bound

/// Corner data of the K corner counterclockwise after K dart d, read from G.
inline CornerSpec face_corner(const OrientedGraph& G, const SubMap& K, int d) {
  const SideGraph& g = G.labels();
  CornerSpec x;
  int v = g.vertex_of(d);
  auto push_label = [&](int dart) {
    x.labels.push_back(g.label_of(dart));
    x.chars.push_back(g.character(v, g.label_of(dart)));
  };
  push_label(d);
  x.gaps.push_back(G.corner(d));
  for (int y : darts_inside(G, K, d)) {
    push_label(y);
    x.gaps.push_back(G.corner(y));
  }
  push_label(K.ccw_next(d));
  return x;
}

enum class BoundStatus { Holds, Violated, NotApplicable };

inline std::string_view to_string(BoundStatus s) {
  return s == BoundStatus::Holds ? "holds" : s == BoundStatus::Violated ? "violated" : "not_applicable";
}

struct BoundCheck {
  BoundStatus status = BoundStatus::NotApplicable;
  int index = 0;
  std::vector<Quality> corners;
};

/// Index of a face given corner data in walk order and edge indices between them.
/// Edge i joins corner i's clockwise end to corner i+1's counterclockwise end.
inline int face_index(const std::vector<CornerSpec>& corners) {
  int total = 0;
  const std::size_t k = corners.size();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& x = corners[i];
    int s = 0;
    for (std::size_t j = 1; j < x.gaps.size(); ++j) s += x.gaps[j] != x.gaps[j - 1];
    total += 1 - s;
    const auto& y = corners[(i + 1) % k];
    total += x.gaps.front() == y.gaps.back() ? -1 : 0;
  }
  return total;
}

inline BoundCheck good_corner_bound(const std::vector<CornerSpec>& corners, Sign eta_c, Sign eta_a) {
  BoundCheck b;
  b.index = face_index(corners);
  bool all_good = true;
  for (const auto& x : corners) {
    Quality q = classify_corner(x, eta_c, eta_a).quality;
    if (q == Quality::Ugly) throw Error("UGLY_PRESENT", "face has an ugly corner");
    b.corners.push_back(q);
    all_good = all_good && q == Quality::Good;
  }
  if (!all_good) return b;
  b.status = b.index <= 0 ? BoundStatus::Holds : BoundStatus::Violated;
  return b;
}

inline BoundCheck good_corner_index_bound(const OrientedGraph& G, const SubMap& K, int region, Sign eta_c, Sign eta_a) {
  const Region& R = disk_region(K, region);
  std::vector<CornerSpec> corners;
  for (int d : R.walks.front()) corners.push_back(face_corner(G, K, d));
  BoundCheck b = good_corner_bound(corners, eta_c, eta_a);
  if (b.index != boundary_index(G, K, region).total) throw Error("INTERNAL", "corner data and boundary index disagree");
  return b;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json orientation_to_json(const OrientedGraph& G) {
  const SideGraph& g = G.labels();
  nlohmann::json corners = nlohmann::json::array();
  for (int v = 1; v <= g.vertex_count(); ++v)
    for (int d : G.sub.darts_at(v - 1))
      corners.push_back({{"vertex", v},
                         {"interval", {g.label_of(d), g.label_of(G.sub.ccw_next(d))}},
                         {"dir", std::string(to_string(G.corner(d)))}});
  nlohmann::json j = {{"side", std::string(1, to_char(g.side()))}, {"corners", corners}};
  if (G.source) j["star"] = star_to_json(*G.source);
  return j;
}

inline nlohmann::json to_json(const IndexCensus& c) {
  nlohmann::json v = nlohmann::json::array(), f = nlohmann::json::array();
  for (std::size_t i = 0; i < c.vertex_index.size(); ++i)
    v.push_back({{"vertex", i + 1}, {"s", c.vertex_switches[i]}, {"I", c.vertex_index[i]}});
  for (std::size_t i = 0; i < c.face_index.size(); ++i)
    f.push_back({{"face", i}, {"s", c.face_switches[i]}, {"I", c.face_index[i]}});
  return {{"vertices", v}, {"faces", f}, {"total", c.total}};
}

inline nlohmann::json to_json(const HoffmanStats& s) {
  return {{"i", s.i}, {"u", s.u}, {"r", s.r}, {"s", s.s}, {"t", s.t}};
}

inline nlohmann::json to_json(const Representation& r) {
  nlohmann::json faces = nlohmann::json::array();
  for (std::size_t i = 0; i < r.faces.size(); ++i)
    faces.push_back({{"face", r.faces[i]}, {"dir", std::string(r.dirs[i] == Dir::Out ? "source" : "sink")}});
  return {{"faces", faces},
          {"stats", to_json(r.stats)},
          {"hoffman_applicable", r.hoffman_applicable},
          {"new_x_cycle", r.new_x_cycle},
          {"flags", r.flags}};
}

inline nlohmann::json to_json(const RFGraph& rf) {
  auto slots = [](const std::vector<Slot>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (Slot x : s) a.push_back({x.label, x.vertex});  // (label, vertex) pairs
    return a;
  };
  auto comps = [](const std::vector<ComponentReport>& cs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : cs)
      a.push_back({{"kind", to_string(c.kind)}, {"vertices", c.vertices}, {"root", c.root}, {"cycle", c.cycle}});
    return a;
  };
  return {{"black_faces", std::vector<int>(rf.black_faces.begin(), rf.black_faces.end())},
          {"switch_edges", rf.switch_edges},
          {"A_RF", slots(rf.A_rf)},
          {"C_RF", slots(rf.C_rf)},
          {"A_components", comps(rf.A_trees)},
          {"C_components", comps(rf.C_trees)},
          {"directed_cycle", rf.directed_cycle}};
}

}  // namespace schargraph

#endif  // SCHARGRAPH_ORIENTATION_ENGINE_HPP
