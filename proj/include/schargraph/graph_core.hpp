#ifndef SCHARGRAPH_GRAPH_CORE_HPP
#define SCHARGRAPH_GRAPH_CORE_HPP

// Dual fat-vertex graph pairs (G_P, G_Q).
//
// Only the P-side slot matching is stored. A P slot (v, x) is vertex v of G_P
// at label x; the same arc endpoint is the Q slot (x, v). Rotations are fixed
// by the signs: labels increase counterclockwise around positive vertices and
// decrease counterclockwise around negative ones.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "planar_map.hpp"
#include "sign.hpp"

namespace schargraph {

enum class Side { P, Q };

inline Side other(Side s) { return s == Side::P ? Side::Q : Side::P; }
inline char to_char(Side s) { return s == Side::P ? 'P' : 'Q'; }

inline Side parse_side(const std::string& text) {
  if (text == "P" || text == "p") return Side::P;
  if (text == "Q" || text == "q") return Side::Q;
  throw Error("USAGE", "side must be P or Q, got '" + text + "'");
}

struct Slot {
  int vertex = 0;
  int label = 0;

  Slot transposed() const { return {label, vertex}; }
  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// One arc of intersection; ends are stored as P slots.
struct EdgeArc {
  int id = 0;
  Slot p1, p2;

  Slot end(Side side, int which) const {
    const Slot& s = which == 0 ? p1 : p2;
    return side == Side::P ? s : s.transposed();
  }
};

/// Glue the face at the corner ccw after `corner` into the face ccw after `inside`.
struct NestingEntry {
  Slot corner;
  Slot inside;
};

struct IntersectionPair {
  int p = 0;
  int q = 0;
  std::vector<Sign> signsP;  // index v-1
  std::vector<Sign> signsQ;
  std::vector<EdgeArc> matching;
  std::optional<std::vector<NestingEntry>> nestingP;
  std::optional<std::vector<NestingEntry>> nestingQ;

  int vertex_count(Side s) const { return s == Side::P ? p : q; }
  int label_count(Side s) const { return s == Side::P ? q : p; }
  Sign sign(Side s, int v) const { return s == Side::P ? signsP.at(v - 1) : signsQ.at(v - 1); }
  /// Parity of a label on side s is the sign of that vertex in the other graph.
  Sign parity(Side s, int x) const { return sign(other(s), x); }
  const std::optional<std::vector<NestingEntry>>& nesting(Side s) const { return s == Side::P ? nestingP : nestingQ; }
};

/// char(x, v) = (parity x)(sign v).
inline Sign character(const IntersectionPair& pair, Side side, int label, int vertex) {
  return pair.parity(side, label) * pair.sign(side, vertex);
}

struct Issue {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Issue> issues;
  std::vector<std::string> notes;

  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const {
    return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.code == code; });
  }
};

inline std::string slot_text(Slot s) {
  return "(" + std::to_string(s.vertex) + "," + std::to_string(s.label) + ")";
}

/// Immutable embedded graph of one side with all of its edges.
class SideGraph {
 public:
  SideGraph(const IntersectionPair& pair, Side side, std::vector<std::string>* notes = nullptr)
      : side_(side), n_(pair.vertex_count(side)), m_(pair.label_count(side)) {
    sign_.assign(static_cast<std::size_t>(n_) + 1, Sign::Plus);
    parity_.assign(static_cast<std::size_t>(m_) + 1, Sign::Plus);
    for (int v = 1; v <= n_; ++v) sign_[v] = pair.sign(side, v);
    for (int x = 1; x <= m_; ++x) parity_[x] = pair.parity(side, x);
    slot_dart_.assign(static_cast<std::size_t>(n_) * m_, -1);

    PlaneGraph g(n_);
    for (std::size_t e = 0; e < pair.matching.size(); ++e) {
      Slot a = pair.matching[e].end(side, 0);
      Slot b = pair.matching[e].end(side, 1);
      g.add_keyed_edge(a.vertex - 1, key(a), b.vertex - 1, key(b));
      dart_label_.push_back(a.label);
      dart_label_.push_back(b.label);
      slot_dart_[index(a)] = static_cast<int>(2 * e);
      slot_dart_[index(b)] = static_cast<int>(2 * e + 1);
    }
    g.sort_rotations();

    std::vector<std::pair<int, int>> glue;
    const auto& nest = pair.nesting(side);
    if (nest) {
      for (const auto& entry : *nest) glue.emplace_back(dart_at(entry.corner), dart_at(entry.inside));
    } else {
      int count = 0;
      std::vector<int> comp = g.components(&count);
      if (count > 1) {
        // Without nesting data every other component sits in the corner after (1,1).
        std::vector<char> done(static_cast<std::size_t>(count), 0);
        done[comp[0]] = 1;
        for (int v = 0; v < n_; ++v) {
          if (done[comp[v]]) continue;
          done[comp[v]] = 1;
          glue.emplace_back(dart_at({v + 1, 1}), dart_at({1, 1}));
        }
        if (notes)
          notes->push_back(std::string("G_") + to_char(side) + " has " + std::to_string(count) +
                           " components; default nesting places them in the corner after (1,1)");
      }
    }
    glue_ = glue;
    embedding_ = std::make_shared<const Embedding>(std::move(g), std::move(glue));
  }

  Side side() const { return side_; }
  int vertex_count() const { return n_; }
  int label_count() const { return m_; }
  int edge_count() const { return embedding_->graph().edge_count(); }
  Sign sign(int v) const { return sign_[v]; }
  Sign parity(int x) const { return parity_[x]; }
  Sign character(int v, int x) const { return parity_[x] * sign_[v]; }
  bool parallel(int v, int w) const { return sign_[v] == sign_[w]; }

  const Embedding& embedding() const { return *embedding_; }
  std::shared_ptr<const Embedding> embedding_ptr() const { return embedding_; }
  const std::vector<std::pair<int, int>>& glue() const { return glue_; }

  /// Dart sitting at slot (v, x), or -1 if that slot is unused.
  int dart_at(Slot s) const {
    if (s.vertex < 1 || s.vertex > n_ || s.label < 1 || s.label > m_) return -1;
    return slot_dart_[index(s)];
  }
  int vertex_of(int d) const { return embedding_->graph().vertex_of(d) + 1; }
  int label_of(int d) const { return dart_label_[d]; }
  Slot slot_of(int d) const { return {vertex_of(d), label_of(d)}; }
  int far_dart(int d) const { return PlaneGraph::twin(d); }

  /// The label immediately counterclockwise of x on vertex v.
  int label_ccw(int v, int x) const {
    if (sign_[v] == Sign::Plus) return x % m_ + 1;
    return x == 1 ? m_ : x - 1;
  }
  int label_cw(int v, int x) const {
    if (sign_[v] == Sign::Plus) return x == 1 ? m_ : x - 1;
    return x % m_ + 1;
  }

  /// Labels met going counterclockwise from `from` to `to` on v, both ends included.
  /// from == to gives the full circle starting and ending at `from`.
  std::vector<int> labels_ccw(int v, int from, int to) const {
    std::vector<int> out{from};
    int x = label_ccw(v, from);
    for (;;) {
      out.push_back(x);
      if (x == to) break;
      x = label_ccw(v, x);
    }
    return out;
  }

 private:
  int key(Slot s) const { return sign_[s.vertex] == Sign::Plus ? s.label : -s.label; }
  std::size_t index(Slot s) const { return static_cast<std::size_t>(s.vertex - 1) * m_ + (s.label - 1); }

  Side side_;
  int n_, m_;
  std::vector<Sign> sign_, parity_;
  std::vector<int> dart_label_;
  std::vector<int> slot_dart_;
  std::vector<std::pair<int, int>> glue_;
  std::shared_ptr<const Embedding> embedding_;
};

/// A corner of a subgraph: the arc of a vertex boundary ccw from one subgraph dart to the next.
struct Corner {
  int vertex = 0;
  int dart = -1;          // subgraph dart at the clockwise end
  int next_dart = -1;     // subgraph dart at the counterclockwise end
  int start_label = 0;    // label of `dart`
  int end_label = 0;      // label of `next_dart`
  std::vector<int> labels;  // start_label .. end_label counterclockwise
};

/// A subgraph of one side, embedded by inheritance from the whole side.
class View {
 public:
  View(std::shared_ptr<const SideGraph> graph, SubMap sub) : graph_(std::move(graph)), sub_(std::move(sub)) {}

  static View full(std::shared_ptr<const SideGraph> graph) {
    auto emb = graph->embedding_ptr();
    return View(std::move(graph), SubMap::full(std::move(emb)));
  }

  const SideGraph& graph() const { return *graph_; }
  std::shared_ptr<const SideGraph> graph_ptr() const { return graph_; }
  const SubMap& sub() const { return sub_; }
  Side side() const { return graph_->side(); }

  std::vector<int> edges() const {
    std::vector<int> out;
    for (int e = 0; e < graph_->edge_count(); ++e)
      if (sub_.has_edge(e)) out.push_back(e);
    return out;
  }

  /// Corner lying ccw after subgraph dart d.
  Corner corner_after(int d) const {
    Corner c;
    c.dart = d;
    c.next_dart = sub_.ccw_next(d);
    c.vertex = graph_->vertex_of(d);
    c.start_label = graph_->label_of(d);
    c.end_label = graph_->label_of(c.next_dart);
    c.labels = graph_->labels_ccw(c.vertex, c.start_label, c.end_label);
    return c;
  }

  std::vector<Corner> corners() const {
    std::vector<Corner> out;
    for (int v = 1; v <= graph_->vertex_count(); ++v)
      for (int d : sub_.darts_at(v - 1)) out.push_back(corner_after(d));
    return out;
  }

  /// Subgraph with the given edges and every vertex.
  View with_edges(std::vector<char> mask) const {
    return View(graph_, SubMap::with_edges(graph_->embedding_ptr(), std::move(mask)));
  }

 private:
  std::shared_ptr<const SideGraph> graph_;
  SubMap sub_;
};

inline bool bad_slot(const IntersectionPair& pair, Slot s) {
  return s.vertex < 1 || s.vertex > pair.p || s.label < 1 || s.label > pair.q;
}

/// Checks slot coverage, parity, sign balance, nesting and sphericity of both sides.
inline ValidationReport validate_pair(const IntersectionPair& pair) {
  ValidationReport rep;
  auto add = [&](const char* code, std::string detail) { rep.issues.push_back({code, std::move(detail)}); };

  if (pair.p <= 0 || pair.q <= 0 || pair.p % 2 || pair.q % 2)
    add("SLOT_COVERAGE", "p and q must be positive and even (p=" + std::to_string(pair.p) +
                             ", q=" + std::to_string(pair.q) + ")");
  if (static_cast<int>(pair.signsP.size()) != pair.p || static_cast<int>(pair.signsQ.size()) != pair.q)
    add("SLOT_COVERAGE", "sign vectors do not match p and q");
  if (!rep.ok()) return rep;

  for (Side s : {Side::P, Side::Q}) {
    const auto& signs = s == Side::P ? pair.signsP : pair.signsQ;
    long plus = std::count(signs.begin(), signs.end(), Sign::Plus);
    long minus = static_cast<long>(signs.size()) - plus;
    if (plus != minus)
      add("SIGN_IMBALANCE", std::string("G_") + to_char(s) + " has " + std::to_string(plus) + " positive and " +
                                std::to_string(minus) + " negative vertices");
  }

  std::map<Slot, int> seen;
  for (const auto& e : pair.matching) {
    for (Slot s : {e.p1, e.p2}) {
      if (bad_slot(pair, s)) {
        add("SLOT_COVERAGE", "edge " + std::to_string(e.id) + " uses out-of-range slot " + slot_text(s));
        continue;
      }
      if (seen.count(s)) add("SLOT_COVERAGE", "slot " + slot_text(s) + " used twice");
      ++seen[s];
    }
  }
  for (int v = 1; v <= pair.p; ++v)
    for (int x = 1; x <= pair.q; ++x)
      if (!seen.count({v, x})) add("SLOT_COVERAGE", "slot " + slot_text({v, x}) + " not covered");
  if (!rep.ok() && rep.has("SLOT_COVERAGE")) return rep;

  for (const auto& e : pair.matching) {
    Sign c1 = character(pair, Side::P, e.p1.label, e.p1.vertex);
    Sign c2 = character(pair, Side::P, e.p2.label, e.p2.vertex);
    if (c1 == c2)
      add("PARITY_VIOLATION", "edge " + std::to_string(e.id) + " joins " + slot_text(e.p1) + " and " +
                                  slot_text(e.p2) + ", both of character " + to_string(c1));
  }
  if (!rep.ok()) return rep;

  for (Side s : {Side::P, Side::Q}) {
    const auto& nest = pair.nesting(s);
    const std::string name = std::string("G_") + to_char(s);
    PlaneGraph probe(pair.vertex_count(s));
    for (const auto& e : pair.matching) probe.add_keyed_edge(e.end(s, 0).vertex - 1, 0, e.end(s, 1).vertex - 1, 0);
    int count = 0;
    std::vector<int> comp = probe.components(&count);
    if (nest) {
      UnionFind uf(count);
      bool good = static_cast<int>(nest->size()) == count - 1;
      for (const auto& entry : *nest) {
        Slot a = entry.corner, b = entry.inside;
        bool range_ok = a.vertex >= 1 && a.vertex <= pair.vertex_count(s) && b.vertex >= 1 &&
                        b.vertex <= pair.vertex_count(s) && a.label >= 1 && a.label <= pair.label_count(s) &&
                        b.label >= 1 && b.label <= pair.label_count(s);
        if (!range_ok || !uf.unite(comp[a.vertex - 1], comp[b.vertex - 1])) good = false;
      }
      if (!good)
        add("NESTING_INCONSISTENT", name + " nesting must glue its " + std::to_string(count) +
                                        " components along a spanning tree");
    }
  }
  if (!rep.ok()) return rep;

  for (Side s : {Side::P, Side::Q}) {
    SideGraph g(pair, s, &rep.notes);
    auto chi = g.embedding().component_euler();
    for (std::size_t c = 0; c < chi.size(); ++c)
      if (chi[c] != 2)
        add("GENUS_NONZERO", std::string("G_") + to_char(s) + " component " + std::to_string(c) +
                                 " has V-E+F = " + std::to_string(chi[c]));
  }
  return rep;
}

/// Both embedded sides of a validated pair.
struct PairViews {
  IntersectionPair pair;
  std::shared_ptr<const SideGraph> P, Q;
  std::vector<std::string> notes;

  const std::shared_ptr<const SideGraph>& side(Side s) const { return s == Side::P ? P : Q; }
  View view(Side s) const { return View::full(side(s)); }
};

/// Validates and embeds; throws Error with the first issue code on invalid input.
inline PairViews make_views(IntersectionPair pair) {
  ValidationReport rep = validate_pair(pair);
  if (!rep.ok()) throw Error(rep.issues.front().code, rep.issues.front().detail);
  PairViews out;
  out.P = std::make_shared<const SideGraph>(pair, Side::P, &out.notes);
  out.Q = std::make_shared<const SideGraph>(pair, Side::Q, &out.notes);
  out.pair = std::move(pair);
  return out;
}

/// Faces of a view. Each region is a face; walks are its boundary components.
inline std::vector<Region> trace_faces(const View& view) { return view.sub().regions(); }

struct LabelSubgraph {
  View view;
  std::vector<Slot> exceptional;  // slots at non-L labels that carry kept edges
  std::set<int> exceptional_labels;
};

/// G_S(L): every vertex, and every edge with at least one end at a label of L.
inline LabelSubgraph subgraph_labels(const std::shared_ptr<const SideGraph>& graph, const std::vector<int>& L) {
  if (L.empty()) throw Error("EMPTY_SELECTION", "label set is empty");
  std::vector<char> inL(static_cast<std::size_t>(graph->label_count()) + 1, 0);
  for (int x : L) {
    if (x < 1 || x > graph->label_count()) throw Error("EMPTY_SELECTION", "label out of range");
    inL[x] = 1;
  }
  std::vector<char> mask(static_cast<std::size_t>(graph->edge_count()), 0);
  std::vector<Slot> exc;
  std::set<int> exc_labels;
  for (int e = 0; e < graph->edge_count(); ++e) {
    int a = 2 * e, b = 2 * e + 1;
    bool ia = inL[graph->label_of(a)], ib = inL[graph->label_of(b)];
    if (!ia && !ib) continue;
    mask[e] = 1;
    for (int d : {a, b}) {
      if (!inL[graph->label_of(d)]) {
        exc.push_back(graph->slot_of(d));
        exc_labels.insert(graph->label_of(d));
      }
    }
  }
  std::sort(exc.begin(), exc.end());
  View full = View::full(graph);
  return {full.with_edges(std::move(mask)), std::move(exc), std::move(exc_labels)};
}

/// [V, W]: edges with one end at a V vertex and the other at a W vertex.
inline std::vector<int> edge_set_between(const SideGraph& graph, const std::vector<int>& V, const std::vector<int>& W) {
  std::vector<char> inV(static_cast<std::size_t>(graph.vertex_count()) + 1, 0), inW = inV;
  for (int v : V) inV.at(v) = 1;
  for (int w : W) inW.at(w) = 1;
  std::vector<int> out;
  for (int e = 0; e < graph.edge_count(); ++e) {
    int a = graph.vertex_of(2 * e), b = graph.vertex_of(2 * e + 1);
    if ((inV[a] && inW[b]) || (inV[b] && inW[a])) out.push_back(e);
  }
  return out;
}

/// Width of a b-bridge presentation in bridge position: 2 + 4 + ... + 2b + (2b-2) + ... + 2.
inline long long bridge_width(int b) {
  if (b < 1) throw Error("USAGE", "bridge number must be positive");
  long long sum = 0;
  for (int i = 1; i <= b; ++i) sum += 2LL * i;
  for (int i = b - 1; i >= 1; --i) sum += 2LL * i;
  return sum;
}

// ---------------------------------------------------------------------------
// Fixture JSON

inline nlohmann::json slot_json(Slot s) { return nlohmann::json::array({s.vertex, s.label}); }

inline Slot parse_slot(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw Error("PARSE", "slot must be [vertex,label]");
  return {j[0].get<int>(), j[1].get<int>()};
}

inline nlohmann::json pair_to_json(const IntersectionPair& pair) {
  nlohmann::json j;
  j["p"] = pair.p;
  j["q"] = pair.q;
  auto signs = [](const std::vector<Sign>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (Sign x : s) a.push_back(to_string(x));
    return a;
  };
  j["signsP"] = signs(pair.signsP);
  j["signsQ"] = signs(pair.signsQ);
  nlohmann::json m = nlohmann::json::array();
  for (const auto& e : pair.matching) m.push_back(nlohmann::json::array({slot_json(e.p1), slot_json(e.p2)}));
  j["matching"] = m;
  if (pair.nestingP || pair.nestingQ) {
    nlohmann::json n = nlohmann::json::object();
    for (Side s : {Side::P, Side::Q}) {
      if (!pair.nesting(s)) continue;
      nlohmann::json list = nlohmann::json::array();
      for (const auto& entry : *pair.nesting(s))
        list.push_back({{"corner", slot_json(entry.corner)}, {"inside", slot_json(entry.inside)}});
      n[std::string(1, to_char(s))] = list;
    }
    j["nesting"] = n;
  }
  return j;
}

inline IntersectionPair pair_from_json(const nlohmann::json& j) {
  try {
    IntersectionPair pair;
    pair.p = j.at("p").get<int>();
    pair.q = j.at("q").get<int>();
    for (const auto& s : j.at("signsP")) pair.signsP.push_back(parse_sign(s.get<std::string>()));
    for (const auto& s : j.at("signsQ")) pair.signsQ.push_back(parse_sign(s.get<std::string>()));
    int id = 0;
    for (const auto& e : j.at("matching")) {
      if (!e.is_array() || e.size() != 2) throw Error("PARSE", "matching entry must be [[v,x],[v',x']]");
      pair.matching.push_back({id++, parse_slot(e[0]), parse_slot(e[1])});
    }
    if (j.contains("nesting") && !j["nesting"].is_null()) {
      const auto& n = j["nesting"];
      for (Side s : {Side::P, Side::Q}) {
        std::string key(1, to_char(s));
        if (!n.contains(key)) continue;
        std::vector<NestingEntry> list;
        for (const auto& entry : n[key]) list.push_back({parse_slot(entry.at("corner")), parse_slot(entry.at("inside"))});
        (s == Side::P ? pair.nestingP : pair.nestingQ) = std::move(list);
      }
    }
    return pair;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error("PARSE", ex.what());
  }
}

}  // namespace schargraph

#endif  // SCHARGRAPH_GRAPH_CORE_HPP
