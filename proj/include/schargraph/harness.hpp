#ifndef SCHARGRAPH_HARNESS_HPP
#define SCHARGRAPH_HARNESS_HPP

// Instance generators, the lemma registry and report generation.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "schargraph/cycle_analysis.hpp"
#include "schargraph/error.hpp"
#include "schargraph/fixtures.hpp"
#include "schargraph/graph_core.hpp"
#include "schargraph/oracles.hpp"
#include "schargraph/orientation_engine.hpp"
#include "schargraph/star_calculus.hpp"

namespace schargraph::harness {

constexpr std::uint64_t kDefaultSeed = 20240607;

/// Largest p*q enumerated exhaustively; SCHARGRAPH_BUDGET overrides.
inline int default_budget() {
  if (const char* env = std::getenv("SCHARGRAPH_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 16;
}

// ---------------------------------------------------------------------------
// enumeration of intersection pairs

struct EnumerationSpec {
  int p = 2, q = 2;
  std::optional<std::vector<Sign>> signsP, signsQ;  // default: alternating, starting with +
  bool all_sign_patterns = false;                   // every balanced pattern on both sides
  bool connected_only = false;
  bool iso_reduction = false;
  int budget = default_budget();
  int samples = 0;  // > 0: draw this many random valid pairs instead of enumerating
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

inline std::vector<Sign> alternating(int n) {
  std::vector<Sign> s;
  for (int i = 0; i < n; ++i) s.push_back(i % 2 ? Sign::Minus : Sign::Plus);
  return s;
}

inline bool balanced(const std::vector<Sign>& s) {
  return std::count(s.begin(), s.end(), Sign::Plus) * 2 == static_cast<long>(s.size());
}

inline std::vector<std::vector<Sign>> balanced_patterns(int n) {
  std::vector<std::vector<Sign>> out;
  for (unsigned m = 0; m < (1u << n); ++m) {
    std::vector<Sign> s;
    for (int i = 0; i < n; ++i) s.push_back(m >> i & 1 ? Sign::Minus : Sign::Plus);
    if (balanced(s)) out.push_back(s);
  }
  return out;
}

// Slot s = (v-1)*q + (x-1) on the P side; partner[s] is the other end of its edge.
struct SlotFrame {
  int p, q;
  std::vector<Sign> sp, sq;
  int vertex(int s) const { return s / q + 1; }
  int label(int s) const { return s % q + 1; }
  int slot(int v, int x) const { return (v - 1) * q + (x - 1); }
  Sign character(int s) const { return sp[static_cast<std::size_t>(vertex(s) - 1)] * sq[static_cast<std::size_t>(label(s) - 1)]; }

  // clockwise neighbour of slot s around its vertex on the given side
  int cw_next(int s, Side side) const {
    int v = vertex(s), x = label(s);
    if (side == Side::P) {
      int step = sp[static_cast<std::size_t>(v - 1)] == Sign::Plus ? -1 : 1;
      return slot(v, (x - 1 + step + q) % q + 1);
    }
    int step = sq[static_cast<std::size_t>(x - 1)] == Sign::Plus ? -1 : 1;
    return slot((v - 1 + step + p) % p + 1, x);
  }

  // 2*comps - (V - E + F) for one side: twice the total genus, 0 iff every component is a sphere
  int genus_defect(const std::vector<int>& partner, Side side, bool* connected = nullptr) const {
    const int n = side == Side::P ? p : q;
    const int slots = p * q;
    UnionFind uf(n);
    for (int s = 0; s < slots; ++s) {
      int a = side == Side::P ? vertex(s) : label(s), b = side == Side::P ? vertex(partner[static_cast<std::size_t>(s)]) : label(partner[static_cast<std::size_t>(s)]);
      uf.unite(a - 1, b - 1);
    }
    int comps = 0;
    for (int v = 0; v < n; ++v) comps += uf.find(v) == v;
    std::vector<char> seen(static_cast<std::size_t>(slots), 0);
    int faces = 0;
    for (int s = 0; s < slots; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      ++faces;
      for (int d = s; !seen[static_cast<std::size_t>(d)]; d = cw_next(partner[static_cast<std::size_t>(d)], side))
        seen[static_cast<std::size_t>(d)] = 1;
    }
    if (connected) *connected = comps == 1;
    return 2 * comps - (n - slots / 2 + faces);
  }

  bool spherical(const std::vector<int>& partner, Side side, bool* connected) const {
    return genus_defect(partner, side, connected) == 0;
  }

  IntersectionPair build(const std::vector<int>& partner) const {
    IntersectionPair pr;
    pr.p = p;
    pr.q = q;
    pr.signsP = sp;
    pr.signsQ = sq;
    for (int s = 0; s < p * q; ++s) {
      int t = partner[static_cast<std::size_t>(s)];
      if (t < s) continue;
      pr.matching.push_back({static_cast<int>(pr.matching.size()), {vertex(s), label(s)}, {vertex(t), label(t)}});
    }
    return pr;
  }
};

inline std::vector<std::pair<int, int>> matching_key(const IntersectionPair& pr) {
  std::vector<std::pair<int, int>> k;
  for (const auto& e : pr.matching) {
    int a = (e.p1.vertex - 1) * pr.q + e.p1.label - 1, b = (e.p2.vertex - 1) * pr.q + e.p2.label - 1;
    k.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(k.begin(), k.end());
  return k;
}

inline std::vector<std::vector<int>> sign_permutations(const std::vector<Sign>& s) {
  std::vector<int> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < s.size(); ++i) ok = ok && s[i] == s[static_cast<std::size_t>(perm[i])];
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Keep a pair iff no valid sign-preserving relabelling gives a smaller matching.
inline bool canonical(const SlotFrame& f, const std::vector<int>& partner, const std::vector<std::vector<int>>& pp,
                      const std::vector<std::vector<int>>& qq) {
  IntersectionPair base = f.build(partner);
  auto key = matching_key(base);
  std::vector<int> image(partner.size());
  for (const auto& a : pp)
    for (const auto& b : qq) {
      for (int s = 0; s < f.p * f.q; ++s) {
        int t = partner[static_cast<std::size_t>(s)];
        int s2 = f.slot(a[static_cast<std::size_t>(f.vertex(s) - 1)] + 1, b[static_cast<std::size_t>(f.label(s) - 1)] + 1);
        int t2 = f.slot(a[static_cast<std::size_t>(f.vertex(t) - 1)] + 1, b[static_cast<std::size_t>(f.label(t) - 1)] + 1);
        image[static_cast<std::size_t>(s2)] = t2;
      }
      if (!f.spherical(image, Side::P, nullptr) || !f.spherical(image, Side::Q, nullptr)) continue;
      if (matching_key(f.build(image)) < key) return false;
    }
  return true;
}

}  // namespace detail

/// Every valid pair for the spec, matchings in lexicographic order of their
/// sorted slot pairs; `emit` returns false to stop early.
inline void enumerate_pairs(const EnumerationSpec& spec, const std::function<bool(const IntersectionPair&)>& emit) {
  if (spec.p <= 0 || spec.q <= 0 || spec.p % 2 || spec.q % 2) throw Error("USAGE", "p and q must be positive and even");
  if (spec.p * spec.q > spec.budget && spec.samples == 0)
    throw Error("BUDGET_EXCEEDED", "p*q = " + std::to_string(spec.p * spec.q) + " exceeds the budget " +
                                       std::to_string(spec.budget) + "; pass samples or raise SCHARGRAPH_BUDGET");
  std::vector<std::vector<Sign>> ps, qs;
  if (spec.all_sign_patterns) {
    ps = detail::balanced_patterns(spec.p);
    qs = detail::balanced_patterns(spec.q);
  } else {
    ps = {spec.signsP.value_or(detail::alternating(spec.p))};
    qs = {spec.signsQ.value_or(detail::alternating(spec.q))};
    if (static_cast<int>(ps[0].size()) != spec.p || static_cast<int>(qs[0].size()) != spec.q)
      throw Error("USAGE", "sign vectors do not match p and q");
    if (!detail::balanced(ps[0]) || !detail::balanced(qs[0])) return;  // nothing satisfies the sign rule
  }
  const int slots = spec.p * spec.q;
  std::mt19937_64 rng(spec.seed);
  for (const auto& sp : ps)
    for (const auto& sq : qs) {
      detail::SlotFrame f{spec.p, spec.q, sp, sq};
      std::vector<std::vector<int>> pp, qq;
      if (spec.iso_reduction) {
        pp = detail::sign_permutations(sp);
        qq = detail::sign_permutations(sq);
      }
      std::vector<int> partner(static_cast<std::size_t>(slots), -1);
      auto accept = [&]() {
        bool cp = true, cq = true;
        if (!f.spherical(partner, Side::P, &cp) || !f.spherical(partner, Side::Q, &cq)) return true;
        if (spec.connected_only && !(cp && cq)) return true;
        if (spec.iso_reduction && !detail::canonical(f, partner, pp, qq)) return true;
        IntersectionPair pr = f.build(partner);
        if (!validate_pair(pr).ok()) return true;
        return emit(pr);
      };
      if (spec.samples > 0) {
        // Local search: from a random parity-respecting matching, swap the partners of
        // two same-character slots while the genus defect of both sides does not grow.
        // Restarts when stuck. Draws are distinct but not uniform.
        std::vector<int> plus, minus;
        for (int s = 0; s < slots; ++s) (f.character(s) == Sign::Plus ? plus : minus).push_back(s);
        auto defect = [&]() { return f.genus_defect(partner, Side::P) + f.genus_defect(partner, Side::Q); };
        std::set<std::vector<int>> drawn;
        const long step_cap = 400L * slots;
        int found = 0;
        for (int restart = 0; found < spec.samples && restart < 50 * spec.samples + 200; ++restart) {
          std::shuffle(minus.begin(), minus.end(), rng);
          for (std::size_t i = 0; i < plus.size(); ++i) {
            partner[static_cast<std::size_t>(plus[i])] = minus[i];
            partner[static_cast<std::size_t>(minus[i])] = plus[i];
          }
          int cur = defect();
          for (long step = 0; cur > 0 && step < step_cap; ++step) {
            int a = plus[rng() % plus.size()], c = plus[rng() % plus.size()];
            if (a == c) continue;
            int b = partner[static_cast<std::size_t>(a)], d = partner[static_cast<std::size_t>(c)];
            partner[static_cast<std::size_t>(a)] = d;
            partner[static_cast<std::size_t>(d)] = a;
            partner[static_cast<std::size_t>(c)] = b;
            partner[static_cast<std::size_t>(b)] = c;
            int next = defect();
            if (next <= cur) {
              cur = next;
              continue;
            }
            partner[static_cast<std::size_t>(a)] = b;
            partner[static_cast<std::size_t>(b)] = a;
            partner[static_cast<std::size_t>(c)] = d;
            partner[static_cast<std::size_t>(d)] = c;
          }
          if (cur > 0 || !drawn.insert(partner).second) continue;
          bool cp = true, cq = true;
          f.genus_defect(partner, Side::P, &cp);
          f.genus_defect(partner, Side::Q, &cq);
          if (spec.connected_only && !(cp && cq)) continue;
          IntersectionPair pr = f.build(partner);
          if (!validate_pair(pr).ok()) continue;
          ++found;
          if (!emit(pr)) return;
        }
        continue;
      }
      bool go = true;
      std::function<void()> rec = [&]() {
        if (!go) return;
        int a = 0;
        while (a < slots && partner[static_cast<std::size_t>(a)] >= 0) ++a;
        if (a == slots) {
          go = accept();
          return;
        }
        for (int b = a + 1; b < slots && go; ++b) {
          if (partner[static_cast<std::size_t>(b)] >= 0 || f.character(b) == f.character(a)) continue;
          partner[static_cast<std::size_t>(a)] = b;
          partner[static_cast<std::size_t>(b)] = a;
          rec();
          partner[static_cast<std::size_t>(a)] = partner[static_cast<std::size_t>(b)] = -1;
        }
      };
      rec();
      if (!go) return;
    }
}

inline std::vector<IntersectionPair> enumerate_pairs(const EnumerationSpec& spec) {
  std::vector<IntersectionPair> out;
  enumerate_pairs(spec, [&](const IntersectionPair& pr) {
    out.push_back(pr);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// random plane maps and directed graphs
//
// Generator: pick a vertex count uniformly in [1, n]; grow a tree by attaching
// each new vertex to a uniformly chosen corner of a uniformly chosen old vertex;
// then add a uniform number in [0, V+1] of extra edges, each joining two
// uniformly chosen corners of one uniformly chosen face (loops and multiple
// edges allowed). Each edge keeps the direction it was inserted with, except
// tree edges whose direction is a fair coin. All choices draw from mt19937_64.

inline std::vector<std::vector<int>> face_orbits(const PlaneGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(static_cast<std::size_t>(g.dart_count()), 0);
  for (int d = 0; d < g.dart_count(); ++d) {
    if (seen[static_cast<std::size_t>(d)]) continue;
    out.emplace_back();
    for (int x = d; !seen[static_cast<std::size_t>(x)]; x = g.face_next(x)) {
      seen[static_cast<std::size_t>(x)] = 1;
      out.back().push_back(x);
    }
  }
  return out;
}

inline PlaneGraph random_plane_map(std::mt19937_64& rng, int max_vertices) {
  if (max_vertices < 1) throw Error("USAGE", "vertex bound must be at least 1");
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const int v = 1 + pick(max_vertices);
  PlaneGraph g(1);
  for (int i = 1; i < v; ++i) {
    int u = pick(g.vertex_count());
    int anchor = g.degree(u) ? g.rotation(u)[static_cast<std::size_t>(pick(g.degree(u)))] : -1;
    int w = g.add_vertex();
    if (pick(2))
      g.insert_edge(u, anchor, w, -1);
    else
      g.insert_edge(w, -1, u, anchor);
  }
  const int extra = pick(v + 2);
  for (int i = 0; i < extra; ++i) {
    if (g.edge_count() == 0) {
      g.insert_edge(0, -1, 0, -1);
      continue;
    }
    auto orbits = face_orbits(g);
    const auto& o = orbits[static_cast<std::size_t>(pick(static_cast<int>(orbits.size())))];
    int a = o[static_cast<std::size_t>(pick(static_cast<int>(o.size())))];
    int b = o[static_cast<std::size_t>(pick(static_cast<int>(o.size())))];
    g.insert_edge(g.vertex_of(a), a, g.vertex_of(b), b);
  }
  return g;
}

/// Connected directed plane graph; edge e runs from dart 2e to dart 2e+1.
inline PlaneGraph random_directed_graph(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  return random_plane_map(rng, n);
}

/// Plane map with a random orientation on every corner.
inline OrientedGraph random_oriented_graph(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PlaneGraph g = random_plane_map(rng, n);
  std::vector<Dir> omega;
  for (int d = 0; d < g.dart_count(); ++d) omega.push_back(rng() & 1 ? Dir::In : Dir::Out);
  return orient_map(std::make_shared<const Embedding>(std::move(g)), std::move(omega));
}

// ---------------------------------------------------------------------------
// exhaustive connected plane maps

/// Canonical code of a connected plane map: least BFS code over all root darts.
inline std::vector<int> map_code(const PlaneGraph& g) {
  const int D = g.dart_count();
  std::vector<int> best;
  std::vector<int> idx(static_cast<std::size_t>(D)), order;
  for (int r = 0; r < D; ++r) {
    std::fill(idx.begin(), idx.end(), -1);
    order.assign(1, r);
    idx[static_cast<std::size_t>(r)] = 0;
    std::vector<int> code;
    bool worse = false, better = best.empty();
    for (std::size_t i = 0; i < order.size(); ++i) {
      int d = order[i];
      for (int nb : {PlaneGraph::twin(d), g.ccw_next(d)})
        if (idx[static_cast<std::size_t>(nb)] < 0) {
          idx[static_cast<std::size_t>(nb)] = static_cast<int>(order.size());
          order.push_back(nb);
        }
      for (int nb : {PlaneGraph::twin(d), g.ccw_next(d)}) {
        code.push_back(idx[static_cast<std::size_t>(nb)]);
        if (!better) {
          int k = static_cast<int>(code.size()) - 1;
          if (code[static_cast<std::size_t>(k)] < best[static_cast<std::size_t>(k)]) better = true;
          else if (code[static_cast<std::size_t>(k)] > best[static_cast<std::size_t>(k)]) worse = true;
        }
      }
      if (worse) break;
    }
    if (!worse && better) best = std::move(code);
  }
  return best;
}

/// Calls `f` on every connected plane map with 0..max_edges edges. Maps up to
/// max_edges - 1 edges are distinct up to orientation-preserving isomorphism;
/// the last level may repeat maps.
inline void enumerate_plane_maps(int max_edges, const std::function<void(const PlaneGraph&)>& f) {
  std::vector<PlaneGraph> level{PlaneGraph(1)};
  f(level.front());
  for (int e = 1; e <= max_edges; ++e) {
    const bool last = e == max_edges;
    std::set<std::vector<int>> codes;
    std::vector<PlaneGraph> next;
    auto offer = [&](PlaneGraph&& child) {
      if (last) {
        f(child);
        return;
      }
      if (codes.insert(map_code(child)).second) next.push_back(std::move(child));
    };
    for (const auto& g : level) {
      if (g.edge_count() == 0) {
        PlaneGraph a = g;
        a.insert_edge(0, -1, a.add_vertex(), -1);
        offer(std::move(a));
        PlaneGraph b = g;
        b.insert_edge(0, -1, 0, -1);
        offer(std::move(b));
        continue;
      }
      for (int d = 0; d < g.dart_count(); ++d) {
        PlaneGraph c = g;
        int w = c.add_vertex();
        c.insert_edge(c.vertex_of(d), d, w, -1);
        offer(std::move(c));
      }
      for (const auto& o : face_orbits(g))
        for (std::size_t i = 0; i < o.size(); ++i)
          for (std::size_t j = i; j < o.size(); ++j) {
            PlaneGraph c = g;
            c.insert_edge(c.vertex_of(o[i]), o[i], c.vertex_of(o[j]), o[j]);
            offer(std::move(c));
          }
    }
    if (!last) {
      for (const auto& g : next) f(g);
      level = std::move(next);
    }
  }
}

/// Every even-degree edge subset, via the cycle space of a spanning tree.
inline void for_each_even_subgraph(const PlaneGraph& g, const std::function<void(const std::vector<char>&)>& f) {
  const int E = g.edge_count();
  UnionFind uf(g.vertex_count());
  std::vector<int> tree, chords;
  for (int e = 0; e < E; ++e) (uf.unite(g.vertex_of(2 * e), g.vertex_of(2 * e + 1)) ? tree : chords).push_back(e);
  if (chords.size() > 16) throw Error("USAGE", "cycle space too large to enumerate");
  for (unsigned m = 0; m < (1u << chords.size()); ++m) {
    std::vector<char> mask(static_cast<std::size_t>(E), 0);
    std::vector<int> odd(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < chords.size(); ++i)
      if (m >> i & 1) {
        int e = chords[i];
        mask[static_cast<std::size_t>(e)] = 1;
        odd[static_cast<std::size_t>(g.vertex_of(2 * e))] ^= 1;
        odd[static_cast<std::size_t>(g.vertex_of(2 * e + 1))] ^= 1;
      }
    // fix parities with tree edges, leaves first
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e : tree) {
      ++deg[static_cast<std::size_t>(g.vertex_of(2 * e))];
      ++deg[static_cast<std::size_t>(g.vertex_of(2 * e + 1))];
    }
    std::vector<char> used(static_cast<std::size_t>(E), 0);
    bool progress = true;
    while (progress) {
      progress = false;
      for (int e : tree) {
        if (used[static_cast<std::size_t>(e)]) continue;
        int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
        int leaf = deg[static_cast<std::size_t>(a)] == 1 ? a : deg[static_cast<std::size_t>(b)] == 1 ? b : -1;
        if (leaf < 0) continue;
        int other = leaf == a ? b : a;
        used[static_cast<std::size_t>(e)] = 1;
        --deg[static_cast<std::size_t>(a)];
        --deg[static_cast<std::size_t>(b)];
        if (odd[static_cast<std::size_t>(leaf)]) {
          mask[static_cast<std::size_t>(e)] = 1;
          odd[static_cast<std::size_t>(leaf)] = 0;
          odd[static_cast<std::size_t>(other)] ^= 1;
        }
        progress = true;
      }
    }
    f(mask);
  }
}

// ---------------------------------------------------------------------------
// face sweep for the good-corner index bound

/// Faces of k corners, each with 1..max_gaps gaps and every character pattern,
/// consecutive corners obeying the parity rule, at most max_switches switches.
inline void sweep_faces(int k, int max_gaps, int max_switches,
                        const std::function<void(const std::vector<CornerSpec>&)>& f) {
  std::vector<CornerSpec> pool;
  std::vector<int> switches;
  for (int g = 1; g <= max_gaps; ++g)
    oracle::for_each_corner(g, [&](const CornerSpec& x) {
      int s = 0;
      for (std::size_t j = 1; j < x.gaps.size(); ++j) s += x.gaps[j] != x.gaps[j - 1];
      if (s > max_switches) return;
      pool.push_back(x);
      switches.push_back(s);
    });
  std::vector<CornerSpec> face;
  std::function<void(int)> rec = [&](int used) {
    if (static_cast<int>(face.size()) == k) {
      // edge from the last corner's clockwise end back to the first corner's counterclockwise end
      if (face.back().chars.front() == -face.front().chars.back()) f(face);
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used + switches[i] > max_switches) continue;
      if (!face.empty() && face.back().chars.front() != -pool[i].chars.back()) continue;
      face.push_back(pool[i]);
      rec(used + switches[i]);
      face.pop_back();
    }
  };
  rec(0);
}

// ---------------------------------------------------------------------------
// lemma registry

enum class LemmaClass { U, T };

inline char to_char(LemmaClass c) { return c == LemmaClass::U ? 'U' : 'T'; }

struct LemmaInfo {
  std::string id;
  LemmaClass cls;
  std::string statement;
};

inline const std::vector<LemmaInfo>& registry() {
  static const std::vector<LemmaInfo> list = {
      {"EULER_INDEX", LemmaClass::U, "sum of vertex and face indices of a directed sphere graph is 2"},
      {"GL_2_1_2", LemmaClass::U, "C(DT) in C(D0T) and A~(DT) contains A~(D0T) for compositions of derivatives"},
      {"GL_2_6_1", LemmaClass::U, "splitting a corner at a switch: double-sided needs both halves good, single-sided one"},
      {"GL_2_6_2", LemmaClass::U, "char A(X) = -eta_a and a clockwise switch of character eta_c make X good"},
      {"GL_2_7_1", LemmaClass::U, "a face whose corners are all good has boundary index at most 0"},
      {"INDEX_WITNESS", LemmaClass::U, "a disk face of index <= 0 holds a switch edge, a sink/source face or fat vertex"},
      {"TWO_COLOR", LemmaClass::U, "even-degree plane graphs two-colour with both colours along every edge"},
      {"REV_REPRESENTATIVE", LemmaClass::U, "reversing any set of faces preserves representativeness"},
      {"RF_NO_SWITCH", LemmaClass::U, "reversing the black faces of the switch-edge colouring leaves no switch edges"},
      {"COHERENCE_SEQ", LemmaClass::U, "sequences of coherence satisfy their defining clauses"},
      {"TREE_DICHOTOMY", LemmaClass::U, "directed components with out-degree >= 1 have cycles; acyclic ones have V > E"},
      {"SCH_UNIQUE", LemmaClass::T, "all Scharlemann cycles of G_Q share labels and order"},
      {"NO_ISOLATED", LemmaClass::T, "G_Q has no isolated vertices"},
      {"NO_NEW_GREAT_XCYCLE", LemmaClass::T, "G_Q has no new great x-cycle when p > 2"},
      {"SDISK_PROPS", LemmaClass::T, "innermost (s)-sets: |V| >= 2, V* covers V_r, G_P has P(V_r, V), V* = V_P without Scharlemann cycle"},
      {"EDGES_IN_SDISKS", LemmaClass::T, "innermost (s)-sets with p-2 leaving edges meet every regular label |V|-1 times"},
      {"WEB_DIVISIBILITY", LemmaClass::T, "the Scharlemann order divides and differs from the great web size, which is >= 4"},
      {"HOFFMAN_CONDITIONS", LemmaClass::T, "coherent non-representing stars give a new x-cycle or all structural conditions"},
      {"DELTA_DISJOINT_LABELS", LemmaClass::T, "faces of G_P(E) for Scharlemann edges E have disjoint X_- and X_+"},
      {"NO_AH_CIRCUITS", LemmaClass::T, "RF_P has no directed cycle with tails at A(RF) or at C(RF)"},
      {"TRIVIAL_TYPE_TREES", LemmaClass::T, "innermost (s)-sets not representing the trivial type satisfy the four tree conclusions"},
  };
  return list;
}

inline const LemmaInfo& lemma_info(const std::string& id) {
  for (const auto& l : registry())
    if (l.id == id) return l;
  throw Error("UNKNOWN_LEMMA", "no lemma '" + id + "'");
}

// ---------------------------------------------------------------------------
// corpus

struct NamedPair {
  std::string name;
  PairViews views;
};

struct Corpus {
  std::string description;
  std::uint64_t seed = kDefaultSeed;
  std::vector<NamedPair> pairs;
  int random_graphs = 100;       // EULER_INDEX and INDEX_WITNESS
  int random_vertices = 12;
  int star_labels = 4;           // GL_2_1_2: all stars on up to this many labels
  int composition_length = 3;
  int corner_gaps = 6;           // GL_2_6_x
  int type_labels = 6;           // COHERENCE_SEQ
  int map_edges = 5;             // TWO_COLOR
  int even_subgraph_edges = 4;   // TWO_COLOR: even subgraphs of maps up to this size
  std::vector<std::pair<int, int>> face_sweeps{{1, 4}, {2, 3}, {3, 2}};  // (corners, gaps) for GL_2_7_1
  int max_switches = 6;
  int face_subset_samples = 16;  // REV: random face subsets once all subsets are too many
  int star_samples = 64;         // stars per pair once all stars are too many
};

inline void add_pair(Corpus& c, std::string name, const IntersectionPair& pr) {
  c.pairs.push_back({std::move(name), make_views(pr)});
}

inline void add_fixture_pairs(Corpus& c) {
  for (const auto& f : fixtures::all())
    if (f.kind == "pair") add_pair(c, f.name, fixtures::pair(f.name));
}

inline const std::vector<std::string>& profiles() {
  static const std::vector<std::string> names = {"smoke", "desk", "full"};
  return names;
}

inline Corpus make_corpus(const std::string& profile, std::uint64_t seed = kDefaultSeed) {
  Corpus c;
  c.seed = seed;
  if (profile == "smoke") {
    add_fixture_pairs(c);
    c.description = "figure fixtures; 100 random graphs (n <= 12); stars <= 4 labels; types <= 6; maps <= 5 edges";
    return c;
  }
  if (profile == "desk" || profile == "full") {
    const bool full = profile == "full";
    add_fixture_pairs(c);
    EnumerationSpec spec;
    spec.p = spec.q = 4;
    spec.budget = std::max(spec.budget, 16);
    spec.all_sign_patterns = full;
    spec.iso_reduction = true;
    int i = 0;
    enumerate_pairs(spec, [&](const IntersectionPair& pr) {
      add_pair(c, "p4q4#" + std::to_string(i++), pr);
      return true;
    });
    c.random_graphs = full ? 10000 : 1000;
    c.star_labels = full ? 6 : 5;
    c.type_labels = 8;
    c.map_edges = full ? 8 : 7;
    c.even_subgraph_edges = full ? 7 : 6;
    c.face_sweeps = {{1, 7}, {2, 4}, {3, 3}, {4, 2}};
    c.face_subset_samples = full ? 64 : 16;
    c.star_samples = full ? 256 : 64;
    c.description = std::string("figure fixtures and p=q=4 exhaustive (") +
                    (full ? "all sign patterns" : "alternating signs") + ", isomorphism-reduced, " +
                    std::to_string(i) + " pairs); " + std::to_string(c.random_graphs) +
                    " random graphs (n <= 12); stars <= " + std::to_string(c.star_labels) +
                    " labels; types <= 8; maps <= " + std::to_string(c.map_edges) + " edges";
    return c;
  }
  throw Error("USAGE", "unknown profile '" + profile + "' (expected smoke, desk or full)");
}

// ---------------------------------------------------------------------------
// results

struct Outcome {
  long pass = 0, flagged = 0;
  std::vector<nlohmann::json> witnesses;

  void ok(long n = 1) { pass += n; }
  void flag(nlohmann::json w) {
    ++flagged;
    if (witnesses.size() < 5) witnesses.push_back(std::move(w));
  }
};

struct LemmaResult {
  std::string id;
  LemmaClass cls = LemmaClass::U;
  long pass = 0, flagged = 0;
  nlohmann::json witnesses = nlohmann::json::array();
  double seconds = 0;
};

struct Report {
  std::string profile;
  std::uint64_t seed = kDefaultSeed;
  std::string corpus;
  std::vector<LemmaResult> lemmas;
  double seconds = 0;

  bool class_u_failure() const {
    return std::any_of(lemmas.begin(), lemmas.end(),
                       [](const LemmaResult& l) { return l.cls == LemmaClass::U && l.flagged > 0; });
  }

  // deterministic: timings appear only in the text form
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["profile"] = profile;
    j["seed"] = seed;
    j["lemmas"] = nlohmann::json::array();
    for (const auto& l : lemmas)
      j["lemmas"].push_back({{"id", l.id},
                             {"class", std::string(1, to_char(l.cls))},
                             {"pass", l.pass},
                             {"flagged", l.flagged},
                             {"witnesses", l.witnesses}});
    return j;
  }

  std::string text() const {
    std::ostringstream os;
    os << "profile " << profile << ", seed " << seed << "\n";
    if (!corpus.empty()) os << "corpus: " << corpus << "\n";
    for (const auto& l : lemmas) {
      const char* verdict = l.flagged == 0 ? "ok" : l.cls == LemmaClass::U ? "FAIL" : "flagged";
      os << std::left << std::setw(22) << l.id << ' ' << to_char(l.cls) << "  pass " << std::setw(9) << l.pass
         << " flagged " << std::setw(6) << l.flagged << ' ' << std::setw(8) << verdict << std::right << std::fixed
         << std::setprecision(2) << l.seconds << " s\n";
      for (const auto& w : l.witnesses)
        if (w.contains("detail")) os << "    " << w["detail"].get<std::string>() << "\n";
    }
    os << (class_u_failure() ? "class-U failure\n" : "no class-U failures\n");
    os << "total " << std::fixed << std::setprecision(2) << seconds << " s\n";
    return os.str();
  }
};

/// Runs f(i) for i < count over a work queue; results are kept by index.
inline std::vector<Outcome> parallel_outcomes(std::size_t count, const std::function<void(std::size_t, Outcome&)>& f,
                                              LemmaClass cls) {
  std::vector<Outcome> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next++) < count;) {
      try {
        f(i, out[i]);
      } catch (const std::exception& e) {
        // class-T checkers never abort: an exception is a flag; for class U it is a failure
        out[i].flag({{"detail", std::string(cls == LemmaClass::U ? "exception: " : "not evaluable: ") + e.what()},
                     {"instance", i}});
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// checkers

namespace checks {

using nlohmann::json;

inline json pair_witness(const NamedPair& np, const std::string& detail) {
  return {{"detail", np.name + ": " + detail}, {"fixture", pair_to_json(np.views.pair)}};
}

inline std::string labels_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

// Stars on the P side of a pair: all of them for up to 6 labels, otherwise full-L
// stars with sampled orientations.
inline std::vector<Star> pair_stars(const SideGraph& g, std::uint64_t seed, int samples, bool full_only = false) {
  const int n = g.label_count();
  std::vector<Sign> parity;
  for (int x = 1; x <= n; ++x) parity.push_back(g.parity(x));
  std::vector<Star> out;
  auto add_all = [&](const LabelSet& L) {
    for (unsigned om = 0; om < (1u << L.size()); ++om) {
      std::vector<Dir> omega;
      for (std::size_t i = 0; i < L.size(); ++i) omega.push_back(om >> i & 1 ? Dir::In : Dir::Out);
      for (Sign s : {Sign::Plus, Sign::Minus}) out.push_back(make_star(s, parity, L, omega));
    }
  };
  LabelSet all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  if (n <= 6) {
    if (full_only) {
      add_all(all);
      return out;
    }
    for (unsigned lm = 1; lm < (1u << n); ++lm) {
      LabelSet L;
      for (int i = 0; i < n; ++i)
        if (lm >> i & 1) L.push_back(i + 1);
      add_all(L);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    std::vector<Dir> omega;
    for (int i = 0; i < n; ++i) omega.push_back(rng() & 1 ? Dir::In : Dir::Out);
    out.push_back(make_star(rng() & 1 ? Sign::Minus : Sign::Plus, parity, all, omega));
  }
  return out;
}

inline std::string star_text(const Star& t) { return star_to_json(t).dump(); }

// nothing when the switch subgraph has a vertex of odd degree
inline std::optional<RFGraph> try_rf(const OrientedGraph& G) {
  try {
    return build_rf(G);
  } catch (const Error& e) {
    if (e.code() != "ODD_DEGREE") throw;
    return std::nullopt;
  }
}

// --- class U ---------------------------------------------------------------

inline void euler_index(const Corpus& c, std::size_t i, Outcome& o) {
  std::uint64_t seed = c.seed + i;
  PlaneGraph g = random_directed_graph(seed, c.random_vertices);
  IndexCensus census = directed_index_census(g);
  int V = g.vertex_count(), E = g.edge_count(), F = static_cast<int>(census.faces.size());
  if (census.total == 2 && V - E + F == 2)
    o.ok();
  else
    o.flag({{"detail", "seed " + std::to_string(seed) + ": index sum " + std::to_string(census.total) +
                           ", V-E+F = " + std::to_string(V - E + F)},
            {"seed", seed},
            {"census", to_json(census)}});
}

// unit i: stars on n labels with parity pattern pm, (n, pm) enumerated in order
inline void gl_2_1_2(const Corpus& c, std::size_t i, Outcome& o) {
  int n = 1;
  std::size_t k = i;
  while (n <= c.star_labels && k >= (1u << n)) k -= 1u << n++;
  if (n > c.star_labels) return;
  const auto parity = oracle::parity_pattern(n, static_cast<unsigned>(k));
  for (unsigned lm = 1; lm < (1u << n); ++lm) {
    LabelSet L;
    for (int b = 0; b < n; ++b)
      if (lm >> b & 1) L.push_back(b + 1);
    for (unsigned om = 0; om < (1u << L.size()); ++om) {
      std::vector<Dir> omega;
      for (std::size_t b = 0; b < L.size(); ++b) omega.push_back(om >> b & 1 ? Dir::In : Dir::Out);
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        Star t = make_star(s, parity, L, omega);
        // every word of length <= composition_length, as a tree of prefixes
        std::function<void(const Star&, const std::vector<Star>&, int, std::string)> walk =
            [&](const Star& d, const std::vector<Star>& d0s, int depth, std::string word) {
              if (depth > 0) {
                auto C = partition_switches(d).C;
                for (unsigned m = 0; m < (1u << n); ++m) {
                  LabelSet L0;
                  for (int b = 0; b < n; ++b)
                    if (m >> b & 1) L0.push_back(b + 1);
                  const Star& d0 = d0s[m];
                  auto C0 = partition_switches(d0).C;
                  auto At = a_tilde(d, L0), At0 = a_tilde(d0, L0);
                  bool good = std::includes(C0.begin(), C0.end(), C.begin(), C.end()) &&
                              std::includes(At.begin(), At.end(), At0.begin(), At0.end());
                  if (good)
                    o.ok();
                  else
                    o.flag({{"detail", "word " + word + " L0 " + labels_text(L0) + " on " + star_text(t)},
                            {"star", star_to_json(t)}});
                }
              }
              if (depth == c.composition_length || partition_switches(d).C.empty()) return;
              for (Sign chi : {Sign::Plus, Sign::Minus}) {
                Star next = derivative(d, chi);
                std::vector<Star> next0;
                for (unsigned m = 0; m < (1u << n); ++m) {
                  LabelSet L0;
                  for (int b = 0; b < n; ++b)
                    if (m >> b & 1) L0.push_back(b + 1);
                  next0.push_back(derivative_relative(d0s[m], L0, chi));
                }
                walk(next, next0, depth + 1, word + (chi == Sign::Plus ? "d+" : "d-"));
              }
            };
        walk(t, std::vector<Star>(1u << n, t), 0, "");
      }
    }
  }
}

inline std::size_t gl_2_1_2_units(const Corpus& c) {
  std::size_t u = 0;
  for (int n = 1; n <= c.star_labels; ++n) u += 1u << n;
  return u;
}

inline json corner_json(const CornerSpec& x) {
  std::string chars, gaps;
  for (Sign s : x.chars) chars += to_char(s);
  for (Dir d : x.gaps) gaps += d == Dir::In ? 'i' : 'o';
  return {{"chars", chars}, {"gaps", gaps}};
}

// unit k - 1: corners with k gaps
inline void gl_2_6_1(const Corpus&, std::size_t i, Outcome& o) {
  const int k = static_cast<int>(i) + 1;
  oracle::for_each_corner(k, [&](const CornerSpec& x) {
    for (Sign ec : {Sign::Plus, Sign::Minus})
      for (Sign ea : {Sign::Plus, Sign::Minus}) {
        auto q = classify_corner(x, ec, ea);
        if (q.quality == Quality::Ugly) continue;
        bool good = q.quality == Quality::Good;
        for (int pos = 1; pos < k; ++pos) {
          bool is_a = std::count(q.A.begin(), q.A.end(), pos) > 0, is_c = std::count(q.C.begin(), q.C.end(), pos) > 0;
          if (!is_a && !is_c) continue;
          Sign ch = x.chars[static_cast<std::size_t>(pos)];
          bool double_sided = is_c ? ch == ec : ch == ea;
          bool g1 = classify_corner(oracle::slice(x, 0, pos), ec, ea).quality == Quality::Good;
          bool g2 = classify_corner(oracle::slice(x, pos, k), ec, ea).quality == Quality::Good;
          if (good == (double_sided ? (g1 && g2) : (g1 || g2)))
            o.ok();
          else
            o.flag({{"detail", "split at " + std::to_string(pos)}, {"corner", corner_json(x)}});
        }
      }
  });
}

inline void gl_2_6_2(const Corpus&, std::size_t i, Outcome& o) {
  const int k = static_cast<int>(i) + 1;
  oracle::for_each_corner(k, [&](const CornerSpec& x) {
    for (Sign ec : {Sign::Plus, Sign::Minus})
      for (Sign ea : {Sign::Plus, Sign::Minus}) {
        auto q = classify_corner(x, ec, ea);
        if (q.quality == Quality::Ugly || q.A.empty() || x.chars[static_cast<std::size_t>(q.A.front())] != -ea) continue;
        bool has_c = std::any_of(q.C.begin(), q.C.end(), [&](int c) { return x.chars[static_cast<std::size_t>(c)] == ec; });
        if (!has_c) continue;
        if (q.quality == Quality::Good)
          o.ok();
        else
          o.flag({{"detail", "hypotheses hold but corner is not good"}, {"corner", corner_json(x)}});
      }
  });
}

inline void gl_2_7_1(const Corpus& c, std::size_t i, Outcome& o) {
  auto [k, gaps] = c.face_sweeps[i];
  sweep_faces(k, gaps, c.max_switches, [&](const std::vector<CornerSpec>& face) {
    for (Sign ec : {Sign::Plus, Sign::Minus})
      for (Sign ea : {Sign::Plus, Sign::Minus}) {
        BoundCheck b;
        try {
          b = good_corner_bound(face, ec, ea);
        } catch (const Error& e) {
          if (e.code() != "UGLY_PRESENT") throw;
          o.ok();
          continue;
        }
        if (b.status != BoundStatus::Violated) {
          o.ok();
          continue;
        }
        json corners = json::array();
        for (const auto& x : face) corners.push_back(corner_json(x));
        o.flag({{"detail", "all-good face with index " + std::to_string(b.index)}, {"corners", corners}});
      }
  });
}

inline bool witness_region_ok(const OrientedGraph& G, const SubMap& K, int r, Outcome& o, std::uint64_t seed) {
  if (!K.regions()[static_cast<std::size_t>(r)].is_disk()) return true;
  if (boundary_index(G, K, r).total > 0) return true;
  if (index_witness(G, K, r)) {
    o.ok();
    return true;
  }
  o.flag({{"detail", "seed " + std::to_string(seed) + ": face " + std::to_string(r) + " of index <= 0 without witness"},
          {"seed", seed},
          {"orientation", orientation_to_json(G)}});
  return false;
}

inline void index_witness_check(const Corpus& c, std::size_t i, Outcome& o) {
  std::uint64_t seed = c.seed + i;
  OrientedGraph G = random_oriented_graph(seed, c.random_vertices);
  if (G.graph().edge_count() == 0) return;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  // the graph itself and three random subgraphs
  std::vector<SubMap> subs{G.sub};
  for (int k = 0; k < 3; ++k) {
    std::vector<char> mask(static_cast<std::size_t>(G.graph().edge_count()), 0);
    for (auto& m : mask) m = rng() & 1;
    if (std::none_of(mask.begin(), mask.end(), [](char m) { return m; })) continue;
    subs.push_back(SubMap::spanned_by(G.sub.root_ptr(), mask));
  }
  for (const auto& K : subs)
    for (int r = 0; r < K.region_count(); ++r)
      if (!witness_region_ok(G, K, r, o, seed)) return;
}

// unit e: connected maps with exactly e edges (and their even subgraphs)
inline void two_color(const Corpus& c, Outcome& o) {
  auto check = [&](const SubMap& sub, const PlaneGraph& g) {
    TwoColoring col = two_color_faces(sub);
    if (coloring_valid(col)) {
      o.ok();
      return;
    }
    json rot = json::array();
    for (int v = 0; v < g.vertex_count(); ++v) rot.push_back(g.rotation(v));
    o.flag({{"detail", "invalid colouring"}, {"rotations", rot}, {"edges", sub.edge_mask()}});
  };
  enumerate_plane_maps(c.map_edges, [&](const PlaneGraph& g) {
    bool even = true;
    for (int v = 0; v < g.vertex_count(); ++v) even = even && g.degree(v) % 2 == 0;
    auto emb = std::make_shared<const Embedding>(g);
    if (even) check(SubMap::full(emb), g);
    if (g.edge_count() <= c.even_subgraph_edges)
      for_each_even_subgraph(g, [&](const std::vector<char>& mask) { check(SubMap::with_edges(emb, mask), g); });
  });
}

inline std::vector<std::set<int>> face_subsets(int faces, int samples, std::uint64_t seed) {
  std::vector<std::set<int>> out;
  if (faces <= 6) {
    for (unsigned m = 0; m < (1u << faces); ++m) {
      std::set<int> s;
      for (int f = 0; f < faces; ++f)
        if (m >> f & 1) s.insert(f);
      out.push_back(s);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::set<int> all;
  for (int f = 0; f < faces; ++f) all.insert(f);
  out.push_back({});
  out.push_back(all);
  for (int k = 0; k < samples; ++k) {
    std::set<int> s;
    for (int f = 0; f < faces; ++f)
      if (rng() & 1) s.insert(f);
    out.push_back(s);
  }
  return out;
}

inline void rev_representative(const Corpus& c, const NamedPair& np, Outcome& o) {
  const auto& P = np.views.P;
  std::uint64_t k = 0;
  for (const Star& t : pair_stars(*P, c.seed, c.star_samples)) {
    OrientedGraph G = induce_orientation(P, t);
    bool rep = representative(G);
    for (const auto& F : face_subsets(G.sub.region_count(), c.face_subset_samples, c.seed + k++)) {
      if (representative(reverse_faces(G, F)) == rep)
        o.ok();
      else
        o.flag(pair_witness(np, "Rev changes representativeness for star " + star_text(t)));
    }
  }
}

inline void rf_no_switch(const Corpus& c, const NamedPair& np, Outcome& o) {
  const auto& P = np.views.P;
  for (const Star& t : pair_stars(*P, c.seed, c.star_samples)) {
    OrientedGraph G = induce_orientation(P, t);
    auto rf = try_rf(G);
    if (!rf) continue;  // colouring precondition fails
    if (rf->switch_edges == 0 && coloring_valid(rf->coloring))
      o.ok();
    else
      o.flag(pair_witness(np, std::to_string(rf->switch_edges) + " switch edges after reversal for star " + star_text(t)));
  }
}

// unit i: types on n labels with parity pattern pm
inline void coherence_seq(const Corpus& c, std::size_t i, Outcome& o) {
  int n = 2;
  std::size_t k = i;
  while (n <= c.type_labels && k >= (1u << n)) k -= 1u << n++;
  if (n > c.type_labels) return;
  const auto parity = oracle::parity_pattern(n, static_cast<unsigned>(k));
  LabelSet L(static_cast<std::size_t>(n));
  std::iota(L.begin(), L.end(), 1);
  for (unsigned tm = 1; tm + 1 < (1u << n); ++tm) {
    LType tau;
    for (int b = 0; b < n; ++b) tau.push_back(tm >> b & 1 ? Sign::Minus : Sign::Plus);
    auto bad = oracle::check_sequence(sequence_of_coherence(tau, parity, L), tau);
    if (bad.empty())
      o.ok();
    else
      o.flag({{"detail", bad.front()}, {"type", type_to_json(tau)}, {"n", n}});
  }
}

inline std::size_t coherence_units(const Corpus& c) {
  std::size_t u = 0;
  for (int n = 2; n <= c.type_labels; ++n) u += 1u << n;
  return u;
}

inline void tree_dichotomy(const Corpus& c, const NamedPair& np, Outcome& o) {
  auto judge = [&](const std::vector<ComponentReport>& comps, const std::string& what) {
    if (auto breach = tree_dichotomy_breach(comps))
      o.flag(pair_witness(np, what + ": " + *breach));
    else
      o.ok();
  };
  std::mt19937_64 rng(c.seed);
  for (Side s : {Side::P, Side::Q}) {
    const SideGraph& g = *np.views.side(s);
    const int n = g.label_count();
    if (n <= 6) {
      // every disjoint (V, W), as base-3 digits
      int total = 1;
      for (int b = 0; b < n; ++b) total *= 3;
      for (int m = 0; m < total; ++m) {
        std::vector<int> V, W;
        for (int b = 0, x = m; b < n; ++b, x /= 3) {
          if (x % 3 == 1) V.push_back(b + 1);
          if (x % 3 == 2) W.push_back(b + 1);
        }
        judge(trees_or_cycles(g, V, W), std::string("G_") + to_char(s) + " V=" + labels_text(V) + " W=" + labels_text(W));
      }
    } else {
      for (int k = 0; k < 64; ++k) {
        std::vector<int> V, W;
        for (int x = 1; x <= n; ++x) {
          auto r = rng() % 3;
          if (r == 1) V.push_back(x);
          if (r == 2) W.push_back(x);
        }
        judge(trees_or_cycles(g, V, W), std::string("G_") + to_char(s) + " V=" + labels_text(V) + " W=" + labels_text(W));
      }
    }
  }
  // switch-label trees of the rotation-free graph
  const auto& P = np.views.P;
  for (const Star& t : pair_stars(*P, c.seed, c.star_samples / 4 + 1, true)) {
    OrientedGraph G = induce_orientation(P, t);
    auto rf = try_rf(G);
    if (!rf) continue;
    judge(rf->A_trees, "A(RF) for " + star_text(t));
    judge(rf->C_trees, "C(RF) for " + star_text(t));
  }
}

// --- class T: each returns a failure description or nothing -----------------

using Verdict = std::optional<std::string>;

inline Verdict sch_unique(const NamedPair& np) {
  auto r = scharlemann_consistency(*np.views.Q);
  if (r.clash) {
    const auto& a = r.cycles[static_cast<std::size_t>(r.clash->first)];
    const auto& b = r.cycles[static_cast<std::size_t>(r.clash->second)];
    return "Scharlemann cycles on " + labels_text(a.vertices) + " and " + labels_text(b.vertices) + " disagree";
  }
  return std::nullopt;
}

inline Verdict no_isolated(const NamedPair& np) {
  auto iso = isolated_vertices(*np.views.Q);
  if (iso.empty()) return std::nullopt;
  return "isolated vertices " + labels_text(iso);
}

inline Verdict no_new_great(const NamedPair& np) {
  const SideGraph& Q = *np.views.Q;
  if (Q.label_count() <= 2) return std::nullopt;
  for (const auto& cyc : find_all_x_cycles(Q))
    if (cyc.is_new && cyc.great)
      return "new great " + std::to_string(cyc.label) + "-cycle on " + labels_text(cyc.vertices);
  return std::nullopt;
}

inline Verdict sdisk_props(const NamedPair& np) {
  const SideGraph& Q = *np.views.Q;
  const SideGraph& P = *np.views.P;
  auto Vr = regular_labels(Q);
  for (const auto& s : find_s_sets(Q)) {
    if (!s.innermost) continue;
    std::string where = "innermost (s)-set " + labels_text(s.vertices) + ": ";
    if (!s.flags.size_ok) return where + "|V| < 2";
    if (!s.flags.covers_regular) return where + "V* misses a regular label";
    if (!s.flags.full_when_no_sch) return where + "no Scharlemann cycle but V* != V_P";
    if (!check_properties(P, Vr, s.vertices).P) return where + "G_P lacks P(V_r, V)";
  }
  return std::nullopt;
}

inline Verdict edges_in_sdisks(const NamedPair& np) {
  const SideGraph& Q = *np.views.Q;
  for (const auto& s : find_s_sets(Q)) {
    auto bad = edges_in_s_disk_violations(Q, s);
    if (!bad.empty()) return "(s)-set " + labels_text(s.vertices) + " miscounts labels " + labels_text(bad);
  }
  return std::nullopt;
}

inline Verdict web_divisibility(const NamedPair& np) {
  const SideGraph& Q = *np.views.Q;
  auto sch = find_scharlemann_cycles(Q);
  auto webs = find_great_webs(Q, Q.label_count() - 2);
  for (const auto& w : webs) {
    int v = static_cast<int>(w.vertices.size());
    if (v < 4) return "great web " + labels_text(w.vertices) + " has fewer than 4 vertices";
    for (const auto& cyc : sch) {
      auto f = web_number_check(cyc.order(), v);
      if (!f.all())
        return "Scharlemann order " + std::to_string(cyc.order()) + " against web " + labels_text(w.vertices) +
               (f.divides ? "" : ": n does not divide v") + (f.proper ? "" : ": n = v");
    }
  }
  return std::nullopt;
}

inline Verdict hoffman_conditions(const Corpus& c, const NamedPair& np) {
  const auto& P = np.views.P;
  for (const Star& t : pair_stars(*P, c.seed, c.star_samples, true)) {
    if (!is_coherent(t)) continue;
    LType tau = type_of(t);
    if (is_trivial(tau)) continue;
    OrientedGraph G = induce_orientation(P, t);
    Representation rep = find_representing_faces(G, tau, np.views.Q.get());
    if (!rep.hoffman_applicable || rep.new_x_cycle || rep.flags.empty()) continue;
    std::string f;
    for (const auto& s : rep.flags) f += (f.empty() ? "" : ",") + s;
    return "star " + star_text(t) + " fails " + f;
  }
  return std::nullopt;
}

inline Verdict no_ah_circuits(const Corpus& c, const NamedPair& np) {
  const auto& P = np.views.P;
  for (const Star& t : pair_stars(*P, c.seed, c.star_samples, true)) {
    if (!is_coherent(t)) continue;
    LType tau = type_of(t);
    if (is_trivial(tau)) continue;
    OrientedGraph G = induce_orientation(P, t);
    Representation rep = find_representing_faces(G, tau, np.views.Q.get());
    if (!rep.hoffman_applicable || rep.new_x_cycle) continue;
    auto rf = try_rf(G);
    if (!rf) continue;
    if (rf->directed_cycle) return "RF_P has a switch-label directed cycle for star " + star_text(t);
  }
  return std::nullopt;
}

inline Verdict delta_disjoint(const NamedPair& np) {
  const SideGraph& P = *np.views.P;
  const SideGraph& Q = *np.views.Q;
  for (const auto& cyc : find_scharlemann_cycles(Q)) {
    std::vector<char> mask(static_cast<std::size_t>(P.edge_count()), 0);
    for (int e : cyc.edges) mask[static_cast<std::size_t>(e)] = 1;
    SubMap K = SubMap::spanned_by(P.embedding_ptr(), mask);
    for (const auto& R : K.regions()) {
      if (!R.is_disk() || !R.interior_edges.empty()) continue;
      std::set<int> xm, xp;
      for (int d : R.walks.front()) {
        int v = P.vertex_of(d);
        int a = P.label_of(d), b = P.label_of(K.ccw_next(d));
        auto between = P.labels_ccw(v, a, b);
        auto& target = P.sign(v) == Sign::Minus ? xm : xp;
        for (std::size_t j = 1; j + 1 < between.size(); ++j) target.insert(between[j]);
      }
      std::vector<int> common;
      std::set_intersection(xm.begin(), xm.end(), xp.begin(), xp.end(), std::back_inserter(common));
      if (!common.empty())
        return "face of G_P(E) for the Scharlemann cycle on " + labels_text(cyc.vertices) + " shares labels " +
               labels_text(common);
    }
  }
  return std::nullopt;
}

inline Verdict trivial_type_trees(const NamedPair& np) {
  const auto& P = np.views.P;
  const SideGraph& Q = *np.views.Q;
  const int p = Q.label_count();
  auto Vr = regular_labels(Q);
  for (const auto& s : find_s_sets(Q)) {
    if (!s.innermost) continue;
    const auto& V = s.vertices;
    std::set<int> Wset;
    for (int v : V)
      for (int x = 1; x <= p; ++x) {
        int w = x_successor(Q, v, x);
        if (Q.sign(w) != s.sign) Wset.insert(w);
      }
    std::vector<int> W(Wset.begin(), Wset.end());
    std::vector<Sign> parity;
    for (int x = 1; x <= P->label_count(); ++x) parity.push_back(P->parity(x));
    Star trivial = make_star(Sign::Plus, parity, V, std::vector<Dir>(V.size(), Dir::Out));
    if (representative(induce_orientation(P, trivial))) continue;
    std::string where = "(s)-set " + labels_text(V) + " not representing the trivial type: ";
    if (s.leave_labels != Vr) return where + "V* != V_r";
    if (static_cast<int>(edge_set_between(Q, V, W).size()) != p - 2) return where + "|[V,W]| != p - 2";
    if (!s.flags.has_scharlemann) return where + "no Scharlemann cycle";
    auto comps = trees_or_cycles(*P, V, W);
    std::set<int> roots;
    bool trees = comps.size() == 2;
    for (const auto& comp : comps) {
      trees = trees && comp.kind == ComponentKind::TreeAtSpecial;
      roots.insert(comp.root);
    }
    if (!trees || roots != std::set<int>{1, 2}) return where + "G_P([V,W]) is not a (V->W->1), (V->W->2) tree pair";
  }
  return std::nullopt;
}

}  // namespace checks

// ---------------------------------------------------------------------------
// verification

namespace detail {

inline LemmaResult aggregate(const LemmaInfo& info, const std::vector<Outcome>& outcomes) {
  LemmaResult r;
  r.id = info.id;
  r.cls = info.cls;
  for (const auto& o : outcomes) {
    r.pass += o.pass;
    r.flagged += o.flagged;
    for (const auto& w : o.witnesses)
      if (r.witnesses.size() < 5) r.witnesses.push_back(w);
  }
  return r;
}

inline std::vector<Outcome> over_pairs(const Corpus& c, LemmaClass cls,
                                       const std::function<void(const NamedPair&, Outcome&)>& f) {
  return parallel_outcomes(c.pairs.size(), [&](std::size_t i, Outcome& o) { f(c.pairs[i], o); }, cls);
}

inline std::vector<Outcome> over_pairs_t(const Corpus& c,
                                         const std::function<checks::Verdict(const NamedPair&)>& f) {
  return over_pairs(c, LemmaClass::T, [&](const NamedPair& np, Outcome& o) {
    if (auto v = f(np))
      o.flag(checks::pair_witness(np, *v));
    else
      o.ok();
  });
}

}  // namespace detail

inline LemmaResult verify_lemma(const std::string& id, const Corpus& c) {
  const LemmaInfo& info = lemma_info(id);
  auto start = std::chrono::steady_clock::now();
  using namespace checks;
  std::vector<Outcome> out;
  auto units = [&](std::size_t n, void (*f)(const Corpus&, std::size_t, Outcome&)) {
    return parallel_outcomes(n, [&](std::size_t i, Outcome& o) { f(c, i, o); }, info.cls);
  };
  if (id == "EULER_INDEX") out = units(static_cast<std::size_t>(c.random_graphs), euler_index);
  else if (id == "GL_2_1_2") out = units(gl_2_1_2_units(c), gl_2_1_2);
  else if (id == "GL_2_6_1") out = units(static_cast<std::size_t>(c.corner_gaps), gl_2_6_1);
  else if (id == "GL_2_6_2") out = units(static_cast<std::size_t>(c.corner_gaps), gl_2_6_2);
  else if (id == "GL_2_7_1") out = units(c.face_sweeps.size(), gl_2_7_1);
  else if (id == "INDEX_WITNESS") out = units(static_cast<std::size_t>(c.random_graphs), index_witness_check);
  else if (id == "TWO_COLOR") out = parallel_outcomes(1, [&](std::size_t, Outcome& o) { two_color(c, o); }, info.cls);
  else if (id == "REV_REPRESENTATIVE")
    out = detail::over_pairs(c, info.cls, [&](const NamedPair& np, Outcome& o) { rev_representative(c, np, o); });
  else if (id == "RF_NO_SWITCH")
    out = detail::over_pairs(c, info.cls, [&](const NamedPair& np, Outcome& o) { rf_no_switch(c, np, o); });
  else if (id == "COHERENCE_SEQ") out = units(coherence_units(c), coherence_seq);
  else if (id == "TREE_DICHOTOMY")
    out = detail::over_pairs(c, info.cls, [&](const NamedPair& np, Outcome& o) { tree_dichotomy(c, np, o); });
  else if (id == "SCH_UNIQUE") out = detail::over_pairs_t(c, sch_unique);
  else if (id == "NO_ISOLATED") out = detail::over_pairs_t(c, no_isolated);
  else if (id == "NO_NEW_GREAT_XCYCLE") out = detail::over_pairs_t(c, no_new_great);
  else if (id == "SDISK_PROPS") out = detail::over_pairs_t(c, sdisk_props);
  else if (id == "EDGES_IN_SDISKS") out = detail::over_pairs_t(c, edges_in_sdisks);
  else if (id == "WEB_DIVISIBILITY") out = detail::over_pairs_t(c, web_divisibility);
  else if (id == "HOFFMAN_CONDITIONS")
    out = detail::over_pairs_t(c, [&](const NamedPair& np) { return hoffman_conditions(c, np); });
  else if (id == "DELTA_DISJOINT_LABELS") out = detail::over_pairs_t(c, delta_disjoint);
  else if (id == "NO_AH_CIRCUITS")
    out = detail::over_pairs_t(c, [&](const NamedPair& np) { return no_ah_circuits(c, np); });
  else if (id == "TRIVIAL_TYPE_TREES") out = detail::over_pairs_t(c, trivial_type_trees);
  else throw Error("INTERNAL", "lemma '" + id + "' has no checker");
  LemmaResult r = detail::aggregate(info, out);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline Report verify(const std::vector<std::string>& ids, const Corpus& c, const std::string& profile) {
  for (const auto& id : ids) lemma_info(id);  // reject unknown ids before running anything
  Report rep;
  rep.profile = profile;
  rep.seed = c.seed;
  rep.corpus = c.description;
  auto start = std::chrono::steady_clock::now();
  for (const auto& id : ids) rep.lemmas.push_back(verify_lemma(id, c));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline std::vector<std::string> all_lemma_ids() {
  std::vector<std::string> ids;
  for (const auto& l : registry()) ids.push_back(l.id);
  return ids;
}

/// Every registered lemma over the profile's corpus.
inline Report run_suite(const std::string& profile, std::uint64_t seed = kDefaultSeed) {
  Corpus c = make_corpus(profile, seed);
  return verify(all_lemma_ids(), c, profile);
}

}  // namespace schargraph::harness

#endif  // SCHARGRAPH_HARNESS_HPP
