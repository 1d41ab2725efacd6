// Simulated-annealing search for intersection pairs with prescribed features.
//
// Used once to produce fixtures shipped in fixtures.hpp:
//   fixture_search greatweb|clash [seed] [steps]
// prints a fixture JSON on success. Moves swap the negative-character ends of
// two edges, so every state satisfies the parity rule; the energy is the total
// genus of both sides plus penalties for missing features.

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include "schargraph/cycle_analysis.hpp"

using namespace schargraph;

namespace {

struct State {
  IntersectionPair pair;
  std::vector<char> locked;
};

// 2 * (total genus) + (components - 1) per side, straight from slot permutations.
int topo_energy(const IntersectionPair& pr) {
  int energy = 0;
  static const int sides = std::getenv("FS_SIDES") ? std::atoi(std::getenv("FS_SIDES")) : 3;
  for (Side s : {Side::P, Side::Q}) {
    if (!((s == Side::P ? 1 : 2) & sides)) continue;
    int n = pr.vertex_count(s), m = pr.label_count(s);
    std::vector<int> partner(static_cast<std::size_t>(n * m));
    UnionFind uf(n);
    for (const auto& e : pr.matching) {
      Slot a = e.end(s, 0), b = e.end(s, 1);
      int ia = (a.vertex - 1) * m + a.label - 1, ib = (b.vertex - 1) * m + b.label - 1;
      partner[ia] = ib;
      partner[ib] = ia;
      uf.unite(a.vertex - 1, b.vertex - 1);
    }
    std::vector<char> seen(partner.size(), 0);
    int faces = 0;
    for (std::size_t i = 0; i < partner.size(); ++i) {
      if (seen[i]) continue;
      ++faces;
      for (int c = static_cast<int>(i); !seen[c];) {
        seen[c] = 1;
        int d = partner[c];
        int v = d / m + 1, x = d % m + 1;
        int nx = pr.sign(s, v) == Sign::Plus ? x % m + 1 : (x == 1 ? m : x - 1);
        c = (v - 1) * m + nx - 1;
      }
    }
    int comps = 0;
    uf.classes(&comps);
    int E = static_cast<int>(pr.matching.size());
    energy += 2 * comps - (n - E + faces) + 2 * (comps - 1);
  }
  return energy;
}

// Penalties for the great-web picture, evaluated only on spherical connected states.
int greatweb_penalty(const IntersectionPair& pr, bool verbose = false) {
  // Q is read as embedded even when it is not yet spherical, as a heuristic.
  const SideGraph g(pr, Side::Q);
  const int p = pr.p;
  int pen = 0;
  auto note = [&](const char* what, int w) {
    pen += w;
    if (verbose) std::cerr << "  missing: " << what << "\n";
  };

  auto sch = scharlemann_consistency(g);
  bool sch24 = false;
  for (const auto& c : sch.cycles) {
    VertexSet vs = c.vertices;
    std::sort(vs.begin(), vs.end());
    if (vs == VertexSet{2, 4} && c.corner_labels == std::pair<int, int>{1, 2}) sch24 = true;
  }
  if (!sch24) note("scharlemann {2,4} on labels 1,2", 3);
  if (!sch.consistent) note("scharlemann consistency", 2);

  const VertexSet web{2, 4, 6, 8};
  auto symdiff = [](const VertexSet& a, const VertexSet& b) {
    VertexSet d;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
    return static_cast<int>(d.size());
  };

  // sigma: the 5-cycle 1 -> 3 -> 1 with one side holding exactly the web
  int sigma_pen = 2 * ((x_successor(g, 1, 5) != 3) + (x_successor(g, 3, 5) != 1));
  if (sigma_pen == 0) {
    int side_pen = 100;
    for (const auto& c : find_x_cycles(g, 5)) {
      VertexSet vs = c.vertices;
      std::sort(vs.begin(), vs.end());
      if (vs != VertexSet{1, 3}) continue;
      for (const auto& side : c.sides) side_pen = std::min(side_pen, symdiff(side.inside, web) + (c.scharlemann ? 1 : 0));
    }
    sigma_pen = side_pen;
  } else {
    sigma_pen += 4;
  }
  if (sigma_pen) note("sigma 5-cycle on {1,3} bounding {2,4,6,8}", sigma_pen);

  VertexSet comp2;
  for (const auto& c : parallel_components(g))
    if (std::binary_search(c.begin(), c.end(), 2)) comp2 = c;
  if (int d = symdiff(comp2, web)) note("parallel component of 2", d);
  if (int d = std::abs(leaving_count(g, web) - (p - 2))) note("web leaving count", d);
  if (!region_holding_rest(g, web)) note("web disk", 2);
  for (const auto& s : find_s_sets(g)) {
    if (s.innermost) {
      if (!s.flags.size_ok) note("sdisk size", 1);
      if (!s.flags.covers_regular) note("sdisk covers regular", 1);
      if (!s.flags.full_when_no_sch) note("sdisk full star", 1);
      if (!edges_in_s_disk_violations(g, s).empty()) note("edges in sdisk", 1);
    }
  }
  if (pen == 0)
    for (const auto& w : find_great_webs(g, p - 2)) {
      auto f = web_number_check(2, static_cast<int>(w.vertices.size()));
      if (!f.all()) note("web divisibility", 1);
    }
  if (!isolated_vertices(g).empty()) note("isolated vertex", 1);
  for (const auto& c : find_all_x_cycles(g))
    if (c.great && c.is_new) note("new great x-cycle", 1);
  return pen;
}

// Cheap local requirements of the picture: sigma's two edges, and the web keeping
// labels 1, 2 inside while exactly one edge leaves from each other label, to 1 or 3.
int structure_penalty(const IntersectionPair& pr) {
  std::map<Slot, Slot> far;
  for (const auto& e : pr.matching) {
    far[e.end(Side::Q, 0)] = e.end(Side::Q, 1);
    far[e.end(Side::Q, 1)] = e.end(Side::Q, 0);
  }
  static const int mode = std::getenv("FS_MODE") ? std::atoi(std::getenv("FS_MODE")) : 3;
  int pen = (mode & 1) ? (far[{1, 5}].vertex != 3) + (far[{3, 5}].vertex != 1) : 0;
  if (!(mode & 2)) return pen;
  auto in_web = [](int v) { return v == 2 || v == 4 || v == 6 || v == 8; };
  for (int x = 1; x <= pr.p; ++x) {
    int leave = 0;
    for (int v : {2, 4, 6, 8}) {
      int w = far[{v, x}].vertex;
      if (in_web(w)) continue;
      ++leave;
      if (w != 1 && w != 3 && !(mode & 8)) ++pen;
    }
    if (mode & 4)
      pen += x <= 2 ? 3 * leave : leave;
    else
      pen += x <= 2 ? leave : std::abs(leave - 1);
  }
  return pen;
}

// Loops on either side, which the figure does not have.
int loop_count(const IntersectionPair& pr) {
  int n = 0;
  for (const auto& e : pr.matching) n += (e.p1.vertex == e.p2.vertex) + (e.p1.label == e.p2.label);
  return n;
}

// Two Scharlemann cycles of orders 2 and 3, which no realizable pair can have.
int clash_penalty(const IntersectionPair& pr) {
  const SideGraph g(pr, Side::Q);
  auto sch = scharlemann_consistency(g);
  bool two = false, three = false;
  for (const auto& c : sch.cycles) {
    two |= c.order() == 2;
    three |= c.order() == 3;
  }
  return !two + !three + !sch.consistent;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string target = argc > 1 ? argv[1] : "";
  if (target != "greatweb" && target != "clash") {
    std::cerr << "usage: fixture_search greatweb|clash [seed] [steps]\n";
    return 2;
  }
  const bool web = target == "greatweb";
  unsigned long long seed = argc > 2 ? std::stoull(argv[2]) : 1;
  long steps = argc > 3 ? std::stol(argv[3]) : 2000000;
  std::mt19937_64 rng(seed);

  State st;
  IntersectionPair& pr = st.pair;
  pr.p = std::getenv("FS_P") ? std::atoi(std::getenv("FS_P")) : 6;
  pr.q = std::getenv("FS_Q") ? std::atoi(std::getenv("FS_Q")) : web ? 12 : 6;
  if (!web) pr.p = 4;
  const char* ps = std::getenv("FS_PSIGNS");
  for (int v = 1; v <= pr.p; ++v)
    pr.signsP.push_back(ps ? parse_sign(std::string(1, ps[v - 1])) : (v % 2 ? Sign::Plus : Sign::Minus));
  for (int v = 1; v <= pr.q; ++v) pr.signsQ.push_back(v % 2 ? Sign::Minus : Sign::Plus);

  // Edges are kept as (positive-character P slot, negative-character P slot).
  // The Scharlemann bigon is fixed: Q slots (2,1)-(4,2) and (4,1)-(2,2).
  std::vector<Slot> plus, minus;
  for (int v = 1; v <= pr.p; ++v)
    for (int x = 1; x <= pr.q; ++x)
      (character(pr, Side::P, x, v) == Sign::Plus ? plus : minus).push_back({v, x});
  auto take = [](std::vector<Slot>& from, Slot s) {
    from.erase(std::find(from.begin(), from.end(), s));
  };
  auto fixed_edge = [&](Slot q1, Slot q2) {
    Slot a = q1.transposed(), b = q2.transposed();
    if (character(pr, Side::P, a.label, a.vertex) == Sign::Minus) std::swap(a, b);
    take(plus, a);
    take(minus, b);
    pr.matching.push_back({static_cast<int>(pr.matching.size()), a, b});
    st.locked.push_back(1);
  };
  if (web && !std::getenv("FS_NOLOCK")) {
    fixed_edge({2, 1}, {4, 2});
    fixed_edge({4, 1}, {2, 2});
  }
  if (!web) {
    // Scharlemann triangle on Q vertices 1, 3, 5 with labels 1, 2
    fixed_edge({1, 1}, {3, 2});
    fixed_edge({3, 1}, {5, 2});
    fixed_edge({5, 1}, {1, 2});
  }
  std::shuffle(minus.begin(), minus.end(), rng);
  for (std::size_t i = 0; i < plus.size(); ++i) {
    pr.matching.push_back({static_cast<int>(pr.matching.size()), plus[i], minus[i]});
    st.locked.push_back(0);
  }

  auto energy = [&](const IntersectionPair& x) {
    if (!web) return 3 * topo_energy(x) + clash_penalty(x);
    int t = 3 * topo_energy(x) + 2 * structure_penalty(x) + (std::getenv("FS_LOOPS") ? loop_count(x) : 0);
    return t > 0 ? 20 + t : greatweb_penalty(x);
  };
  int cur = energy(pr);
  int best = cur;
  const int E = static_cast<int>(pr.matching.size());
  for (long step = 0; step < steps && cur > 0; ++step) {
    double temp = 3.0 * std::pow(0.02 / 3.0, static_cast<double>(step) / steps);
    int i = static_cast<int>(rng() % E), j = static_cast<int>(rng() % E);
    if (i == j || st.locked[i] || st.locked[j]) continue;
    std::swap(pr.matching[i].p2, pr.matching[j].p2);
    int next = energy(pr);
    double u = static_cast<double>(rng() % 1000000) / 1000000.0;
    if (next <= cur || u < std::exp((cur - next) / temp)) {
      cur = next;
      if (cur < best) {
        best = cur;
        std::cerr << "step " << step << " energy " << cur << "\n";
      }
    } else {
      std::swap(pr.matching[i].p2, pr.matching[j].p2);
    }
  }
  if (cur != 0) {
    std::cerr << "no fixture found; final energy " << cur << "\n";
    if (web && topo_energy(pr) == 0) greatweb_penalty(pr, true);
    if (std::getenv("FS_DUMP")) std::cout << pair_to_json(pr).dump() << "\n";
    return 1;
  }
  std::cout << pair_to_json(pr).dump() << "\n";
  return 0;
}
