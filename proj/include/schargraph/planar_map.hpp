#ifndef SCHARGRAPH_PLANAR_MAP_HPP
#define SCHARGRAPH_PLANAR_MAP_HPP

// Rotation systems on the sphere.
//
// A PlaneGraph stores darts 2e and 2e+1 for every edge e together with a
// counterclockwise cyclic order of darts at each vertex. The face to the
// left of a dart d is traced by next(d) = cw_next(twin(d)); the corner that
// lies counterclockwise after d belongs to that face, so corners and darts
// are in one-to-one correspondence.
//
// An Embedding is a PlaneGraph plus optional glue between face orbits of
// different components (how disconnected pieces nest on one sphere). A SubMap
// selects edges and vertices of an Embedding and computes its faces as unions
// of root faces, so subgraphs inherit their nesting from the parent picture.

#include <algorithm>
#include <cassert>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace schargraph {

class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

  /// Dense relabeling 0..k-1 in order of first appearance.
  std::vector<int> classes(int* count = nullptr) {
    std::vector<int> id(parent_.size(), -1), out(parent_.size());
    int next = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) {
      int r = find(i);
      if (id[r] < 0) id[r] = next++;
      out[i] = id[r];
    }
    if (count) *count = next;
    return out;
  }

 private:
  std::vector<int> parent_;
};

class PlaneGraph {
 public:
  explicit PlaneGraph(int vertex_count = 0) : rotation_(static_cast<std::size_t>(vertex_count)) {}

  int vertex_count() const { return static_cast<int>(rotation_.size()); }
  int edge_count() const { return static_cast<int>(dart_vertex_.size() / 2); }
  int dart_count() const { return static_cast<int>(dart_vertex_.size()); }

  int add_vertex() {
    rotation_.emplace_back();
    return vertex_count() - 1;
  }

  /// Adds an edge whose darts are ordered later by sort_rotations() using the keys.
  int add_keyed_edge(int u, int key_u, int v, int key_v) {
    check_vertex(u);
    check_vertex(v);
    int e = edge_count();
    push_dart(u, key_u);
    push_dart(v, key_v);
    rotation_[u].push_back(2 * e);
    rotation_[v].push_back(2 * e + 1);
    sorted_ = false;
    return e;
  }

  /// Sorts every rotation by ascending key; ascending key is counterclockwise.
  void sort_rotations() {
    for (auto& rot : rotation_) {
      std::sort(rot.begin(), rot.end(), [&](int a, int b) {
        if (dart_key_[a] != dart_key_[b]) return dart_key_[a] < dart_key_[b];
        return a < b;
      });
    }
    reindex();
    sorted_ = true;
  }

  /// Inserts an edge u->v; its tail dart goes counterclockwise right after
  /// `after_u` (or alone when u has no darts) and likewise at v.
  int insert_edge(int u, int after_u, int v, int after_v) {
    check_vertex(u);
    check_vertex(v);
    int e = edge_count();
    push_dart(u, 0);
    push_dart(v, 0);
    place(2 * e, u, after_u);
    // For a loop inserted into the corner after `after_u`, the head goes after the tail
    // when the caller passes the same anchor.
    place(2 * e + 1, v, (u == v && after_v == after_u) ? 2 * e : after_v);
    sorted_ = true;
    return e;
  }

  static constexpr int twin(int d) { return d ^ 1; }
  static constexpr int edge_of(int d) { return d >> 1; }
  static constexpr int tail_dart(int e) { return 2 * e; }
  static constexpr int head_dart(int e) { return 2 * e + 1; }

  int vertex_of(int d) const { return dart_vertex_[d]; }
  int key_of(int d) const { return dart_key_[d]; }
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
  const std::vector<int>& rotation(int v) const { return rotation_[v]; }
  int position(int d) const { return dart_pos_[d]; }

  int ccw_next(int d) const {
    const auto& rot = rotation_[dart_vertex_[d]];
    return rot[(dart_pos_[d] + 1) % rot.size()];
  }

  int cw_next(int d) const {
    const auto& rot = rotation_[dart_vertex_[d]];
    return rot[(dart_pos_[d] + rot.size() - 1) % rot.size()];
  }

  /// Next dart along the face lying to the left of d.
  int face_next(int d) const { return cw_next(twin(d)); }

  /// Vertex components; isolated vertices form their own components.
  std::vector<int> components(int* count = nullptr) const {
    UnionFind uf(vertex_count());
    for (int e = 0; e < edge_count(); ++e) uf.unite(dart_vertex_[2 * e], dart_vertex_[2 * e + 1]);
    return uf.classes(count);
  }

  bool ready() const { return sorted_ || edge_count() == 0; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::out_of_range("PlaneGraph: vertex out of range");
  }

  void push_dart(int v, int key) {
    dart_vertex_.push_back(v);
    dart_key_.push_back(key);
    dart_pos_.push_back(-1);
  }

  void place(int d, int v, int after) {
    auto& rot = rotation_[v];
    if (rot.empty() || after < 0) {
      rot.push_back(d);
    } else {
      if (dart_vertex_[after] != v) throw std::invalid_argument("PlaneGraph: anchor dart at wrong vertex");
      rot.insert(rot.begin() + dart_pos_[after] + 1, d);
    }
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) dart_pos_[rot[i]] = i;
  }

  void reindex() {
    for (auto& rot : rotation_)
      for (int i = 0; i < static_cast<int>(rot.size()); ++i) dart_pos_[rot[i]] = i;
  }

  std::vector<std::vector<int>> rotation_;
  std::vector<int> dart_vertex_;
  std::vector<int> dart_key_;
  std::vector<int> dart_pos_;
  bool sorted_ = true;
};

/// Face orbits of a plane graph, with optional gluing of orbits from different components.
class Embedding {
 public:
  explicit Embedding(PlaneGraph graph, std::vector<std::pair<int, int>> glue = {})
      : graph_(std::move(graph)), glue_(std::move(glue)) {
    if (!graph_.ready()) graph_.sort_rotations();
    trace();
  }

  const PlaneGraph& graph() const { return graph_; }
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  int orbit_of(int d) const { return orbit_of_[d]; }

  int root_face_count() const { return root_face_count_; }
  int root_face_of_dart(int d) const { return root_face_of_orbit_[orbit_of_[d]]; }
  int root_face_of_orbit(int o) const { return root_face_of_orbit_[o]; }

  /// Root face holding a vertex; vertices without darts sit in root face 0.
  int root_face_of_vertex(int v) const {
    const auto& rot = graph_.rotation(v);
    return rot.empty() ? 0 : root_face_of_dart(rot.front());
  }

  int component_count() const { return component_count_; }
  const std::vector<int>& component_of_vertex() const { return component_; }

  /// V - E + F for each component, using its own face orbits (2 on a sphere).
  std::vector<int> component_euler() const {
    std::vector<int> chi(static_cast<std::size_t>(component_count_), 0);
    for (int v = 0; v < graph_.vertex_count(); ++v) {
      chi[component_[v]] += 1;
      if (graph_.degree(v) == 0) chi[component_[v]] += 1;  // the lone face around it
    }
    for (int e = 0; e < graph_.edge_count(); ++e) chi[component_[graph_.vertex_of(2 * e)]] -= 1;
    for (const auto& orbit : orbits_) chi[component_[graph_.vertex_of(orbit.front())]] += 1;
    return chi;
  }

  bool is_spherical() const {
    auto chi = component_euler();
    return std::all_of(chi.begin(), chi.end(), [](int c) { return c == 2; });
  }

 private:
  void trace() {
    const int darts = graph_.dart_count();
    orbit_of_.assign(static_cast<std::size_t>(darts), -1);
    for (int d = 0; d < darts; ++d) {
      if (orbit_of_[d] >= 0) continue;
      std::vector<int> walk;
      int cur = d;
      do {
        orbit_of_[cur] = static_cast<int>(orbits_.size());
        walk.push_back(cur);
        cur = graph_.face_next(cur);
      } while (cur != d);
      orbits_.push_back(std::move(walk));
    }
    component_ = graph_.components(&component_count_);
    UnionFind uf(static_cast<int>(orbits_.size()));
    for (auto [a, b] : glue_) uf.unite(orbit_of_[a], orbit_of_[b]);
    root_face_of_orbit_ = uf.classes(&root_face_count_);
    if (orbits_.empty()) root_face_count_ = 1;
  }

  PlaneGraph graph_;
  std::vector<std::pair<int, int>> glue_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
  std::vector<int> root_face_of_orbit_;
  int root_face_count_ = 0;
  std::vector<int> component_;
  int component_count_ = 0;
};

/// A face of a SubMap: a union of root faces bounded by zero or more walks.
struct Region {
  int id = 0;
  std::vector<std::vector<int>> walks;     // boundary walks (subgraph darts, face on the left)
  std::vector<int> isolated_vertices;      // subgraph vertices without subgraph darts
  std::vector<int> interior_vertices;      // root vertices outside the subgraph
  std::vector<int> interior_edges;         // root edges outside the subgraph
  std::vector<int> root_faces;

  bool is_disk() const { return walks.size() == 1 && isolated_vertices.empty(); }
};

class SubMap {
 public:
  SubMap(std::shared_ptr<const Embedding> root, std::vector<char> edge_in, std::vector<char> vertex_in)
      : root_(std::move(root)), edge_in_(std::move(edge_in)), vertex_in_(std::move(vertex_in)) {
    const PlaneGraph& g = root_->graph();
    if (static_cast<int>(edge_in_.size()) != g.edge_count() ||
        static_cast<int>(vertex_in_.size()) != g.vertex_count())
      throw std::invalid_argument("SubMap: mask size mismatch");
    for (int e = 0; e < g.edge_count(); ++e) {
      if (edge_in_[e] && (!vertex_in_[g.vertex_of(2 * e)] || !vertex_in_[g.vertex_of(2 * e + 1)]))
        throw std::invalid_argument("SubMap: edge endpoint outside vertex selection");
    }
    build();
  }

  /// Whole root as a SubMap.
  static SubMap full(std::shared_ptr<const Embedding> root) {
    const PlaneGraph& g = root->graph();
    return SubMap(root, std::vector<char>(static_cast<std::size_t>(g.edge_count()), 1),
                  std::vector<char>(static_cast<std::size_t>(g.vertex_count()), 1));
  }

  /// Edge subset together with all root vertices.
  static SubMap with_edges(std::shared_ptr<const Embedding> root, std::vector<char> edge_in) {
    std::vector<char> vin(static_cast<std::size_t>(root->graph().vertex_count()), 1);
    return SubMap(std::move(root), std::move(edge_in), std::move(vin));
  }

  /// Edge subset together with the endpoints of those edges only.
  static SubMap spanned_by(std::shared_ptr<const Embedding> root, std::vector<char> edge_in,
                           const std::vector<int>& extra_vertices = {}) {
    const PlaneGraph& g = root->graph();
    std::vector<char> vin(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e)
      if (edge_in[e]) vin[g.vertex_of(2 * e)] = vin[g.vertex_of(2 * e + 1)] = 1;
    for (int v : extra_vertices) vin[v] = 1;
    return SubMap(std::move(root), std::move(edge_in), std::move(vin));
  }

  const Embedding& root() const { return *root_; }
  std::shared_ptr<const Embedding> root_ptr() const { return root_; }
  const PlaneGraph& graph() const { return root_->graph(); }

  bool has_edge(int e) const { return edge_in_[e] != 0; }
  bool has_vertex(int v) const { return vertex_in_[v] != 0; }
  bool has_dart(int d) const { return edge_in_[PlaneGraph::edge_of(d)] != 0; }
  const std::vector<char>& edge_mask() const { return edge_in_; }
  const std::vector<char>& vertex_mask() const { return vertex_in_; }

  /// Subgraph darts at v in counterclockwise order.
  const std::vector<int>& darts_at(int v) const { return darts_at_[v]; }
  int degree(int v) const { return static_cast<int>(darts_at_[v].size()); }
  /// Position of subgraph dart d in the counterclockwise order at its vertex.
  int position(int d) const { return sub_pos_[d]; }

  int ccw_next(int d) const {
    const auto& rot = darts_at_[graph().vertex_of(d)];
    return rot[(sub_pos_[d] + 1) % rot.size()];
  }
  int cw_next(int d) const {
    const auto& rot = darts_at_[graph().vertex_of(d)];
    return rot[(sub_pos_[d] + rot.size() - 1) % rot.size()];
  }
  int face_next(int d) const { return cw_next(PlaneGraph::twin(d)); }

  const std::vector<Region>& regions() const { return regions_; }
  int region_count() const { return static_cast<int>(regions_.size()); }

  /// Region to the left of subgraph dart d; equivalently the region of the corner ccw after d.
  int region_of_dart(int d) const { return region_of_root_face_[root_->root_face_of_dart(d)]; }
  int region_of_root_face(int f) const { return region_of_root_face_[f]; }
  /// Region containing a vertex that has no subgraph darts.
  int region_of_vertex(int v) const { return region_of_root_face_[root_->root_face_of_vertex(v)]; }

  /// Root darts strictly inside the corner ccw after subgraph dart d.
  std::vector<int> root_darts_inside_corner(int d) const {
    std::vector<int> out;
    int stop = ccw_next(d);
    const PlaneGraph& g = graph();
    if (g.degree(g.vertex_of(d)) <= 1) return out;
    for (int cur = g.ccw_next(d); cur != stop && cur != d; cur = g.ccw_next(cur)) out.push_back(cur);
    return out;
  }

  /// Components of the subgraph (vertex ids of the root; -1 for vertices outside).
  std::vector<int> components(int* count = nullptr) const {
    const PlaneGraph& g = graph();
    UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
      if (edge_in_[e]) uf.unite(g.vertex_of(2 * e), g.vertex_of(2 * e + 1));
    std::vector<int> cls = uf.classes();
    std::vector<int> dense(static_cast<std::size_t>(g.vertex_count()), -1), out(cls.size(), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!vertex_in_[v]) continue;
      if (dense[cls[v]] < 0) dense[cls[v]] = next++;
      out[v] = dense[cls[v]];
    }
    if (count) *count = next;
    return out;
  }

  bool connected() const {
    int c = 0;
    components(&c);
    return c <= 1;
  }

 private:
  void build() {
    const PlaneGraph& g = graph();
    const int nv = g.vertex_count();
    darts_at_.assign(static_cast<std::size_t>(nv), {});
    sub_pos_.assign(static_cast<std::size_t>(g.dart_count()), -1);
    for (int v = 0; v < nv; ++v) {
      for (int d : g.rotation(v)) {
        if (has_dart(d)) {
          sub_pos_[d] = static_cast<int>(darts_at_[v].size());
          darts_at_[v].push_back(d);
        }
      }
    }
    UnionFind uf(root_->root_face_count());
    for (int e = 0; e < g.edge_count(); ++e)
      if (!edge_in_[e]) uf.unite(root_->root_face_of_dart(2 * e), root_->root_face_of_dart(2 * e + 1));
    int count = 0;
    region_of_root_face_ = uf.classes(&count);
    regions_.assign(static_cast<std::size_t>(count), {});
    for (int r = 0; r < count; ++r) regions_[r].id = r;
    for (int f = 0; f < root_->root_face_count(); ++f) regions_[region_of_root_face_[f]].root_faces.push_back(f);

    std::vector<char> seen(static_cast<std::size_t>(g.dart_count()), 0);
    for (int d = 0; d < g.dart_count(); ++d) {
      if (!has_dart(d) || seen[d]) continue;
      std::vector<int> walk;
      int cur = d;
      do {
        seen[cur] = 1;
        walk.push_back(cur);
        cur = face_next(cur);
      } while (cur != d);
      regions_[region_of_dart(d)].walks.push_back(std::move(walk));
    }
    for (int v = 0; v < nv; ++v) {
      if (vertex_in_[v] && darts_at_[v].empty()) regions_[region_of_vertex(v)].isolated_vertices.push_back(v);
      if (!vertex_in_[v]) regions_[region_of_vertex(v)].interior_vertices.push_back(v);
    }
    for (int e = 0; e < g.edge_count(); ++e)
      if (!edge_in_[e]) regions_[region_of_dart(2 * e)].interior_edges.push_back(e);
  }

  std::shared_ptr<const Embedding> root_;
  std::vector<char> edge_in_;
  std::vector<char> vertex_in_;
  std::vector<std::vector<int>> darts_at_;
  std::vector<int> sub_pos_;
  std::vector<int> region_of_root_face_;
  std::vector<Region> regions_;
};

}  // namespace schargraph

#endif  // SCHARGRAPH_PLANAR_MAP_HPP
