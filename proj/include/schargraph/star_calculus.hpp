#ifndef SCHARGRAPH_STAR_CALCULUS_HPP
#define SCHARGRAPH_STAR_CALCULUS_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schargraph/error.hpp"
#include "schargraph/sign.hpp"

namespace schargraph {

using LabelSet = std::vector<int>;  // sorted, 1-based
using LType = std::vector<Sign>;

// ---------------------------------------------------------------------------
// stars
//
// A star keeps the whole ambient circle of labels 1..n. The orientation is stored
// per gap, gap j (0-based) lying between labels j+1 and j+2 (cyclically), and is
// constant along each L-interval. On V+ labels increase counterclockwise; V- is
// the mirror image, so there they increase clockwise.

struct Star {
  Sign sign = Sign::Plus;
  std::vector<Sign> parity;  // parity[l-1] is the parity of label l
  LabelSet L;
  std::vector<Dir> gap;

  int n() const { return static_cast<int>(parity.size()); }
  Sign character(int l) const { return sign * parity[static_cast<std::size_t>(l - 1)]; }
  bool has_label(int l) const { return std::binary_search(L.begin(), L.end(), l); }
  int interval_count() const { return L.empty() ? 1 : static_cast<int>(L.size()); }
  Dir gap_after(int l) const { return gap[static_cast<std::size_t>(l - 1)]; }
  Dir gap_before(int l) const { return gap[static_cast<std::size_t>((l - 2 + n()) % n())]; }
  Dir cw_of(int l) const { return sign == Sign::Plus ? gap_before(l) : gap_after(l); }
  Dir ccw_of(int l) const { return sign == Sign::Plus ? gap_after(l) : gap_before(l); }

  /// Orientation of the i-th L-interval, the one starting at L[i] in label order.
  Dir omega(int i) const {
    return L.empty() ? gap[0] : gap[static_cast<std::size_t>(L[static_cast<std::size_t>(i)] - 1)];
  }
  std::vector<Dir> omegas() const {
    std::vector<Dir> out;
    for (int i = 0; i < interval_count(); ++i) out.push_back(omega(i));
    return out;
  }

  bool operator==(const Star&) const = default;
};

/// Labels strictly inside the interval of `S` starting at S[i], in label order.
inline LabelSet interior_labels(const LabelSet& S, std::size_t i, int n) {
  LabelSet out;
  int a = S[i], b = S[(i + 1) % S.size()];
  for (int l = a % n + 1; l != b; l = l % n + 1) out.push_back(l);
  return out;
}

/// Gap indices covered by the interval of `S` starting at S[i].
inline std::vector<int> interval_gaps(const LabelSet& S, std::size_t i, int n) {
  std::vector<int> out;
  int a = S[i], b = S[(i + 1) % S.size()];
  int l = a;
  do {
    out.push_back(l - 1);
    l = l % n + 1;
  } while (l != b);
  return out;
}

inline Star make_star(Sign sign, std::vector<Sign> parity, LabelSet L, const std::vector<Dir>& omega) {
  Star t;
  t.sign = sign;
  t.parity = std::move(parity);
  const int n = t.n();
  if (n < 1) throw Error("USAGE", "a star needs at least one label");
  std::sort(L.begin(), L.end());
  L.erase(std::unique(L.begin(), L.end()), L.end());
  for (int l : L)
    if (l < 1 || l > n) throw Error("USAGE", "label " + std::to_string(l) + " outside 1.." + std::to_string(n));
  t.L = std::move(L);
  if (static_cast<int>(omega.size()) != t.interval_count())
    throw Error("USAGE", "omega needs " + std::to_string(t.interval_count()) + " entries");
  t.gap.assign(static_cast<std::size_t>(n), omega.empty() ? Dir::Out : omega[0]);
  if (!t.L.empty())
    for (std::size_t i = 0; i < t.L.size(); ++i)
      for (int g : interval_gaps(t.L, i, n)) t.gap[static_cast<std::size_t>(g)] = omega[i];
  return t;
}

/// Star carrying every label 1..n of `parity`.
inline Star make_full_star(Sign sign, std::vector<Sign> parity, const std::vector<Dir>& omega) {
  LabelSet L;
  for (int l = 1; l <= static_cast<int>(parity.size()); ++l) L.push_back(l);
  return make_star(sign, std::move(parity), std::move(L), omega);
}

/// bar(T): same star, every orientation reversed.
inline Star bar(const Star& t) {
  Star out = t;
  for (auto& d : out.gap) d = flip(d);
  return out;
}

/// -T: the mirror image of bar(T), living on the opposite model vertex.
inline Star reflect(const Star& t) {
  Star out = bar(t);
  out.sign = -t.sign;
  return out;
}

// ---------------------------------------------------------------------------
// switches

struct SwitchPartition {
  LabelSet A, C, Bplus, Bminus;
  std::vector<std::pair<int, Sign>> phi;  // non-switch labels

  LabelSet S() const {
    LabelSet s;
    std::set_union(A.begin(), A.end(), C.begin(), C.end(), std::back_inserter(s));
    return s;
  }
};

inline bool is_anticlockwise(const Star& t, int l) { return t.cw_of(l) == Dir::Out && t.ccw_of(l) == Dir::In; }
inline bool is_clockwise(const Star& t, int l) { return t.cw_of(l) == Dir::In && t.ccw_of(l) == Dir::Out; }

inline SwitchPartition partition_switches(const Star& t) {
  SwitchPartition p;
  for (int l : t.L) {
    if (is_anticlockwise(t, l)) {
      p.A.push_back(l);
    } else if (is_clockwise(t, l)) {
      p.C.push_back(l);
    } else {
      Sign phi = t.gap_after(l) == Dir::Out ? Sign::Plus : Sign::Minus;
      p.phi.emplace_back(l, phi);
      (t.sign * t.parity[static_cast<std::size_t>(l - 1)] * phi == Sign::Plus ? p.Bplus : p.Bminus).push_back(l);
    }
  }
  return p;
}

/// Anticlockwise and clockwise switches alternate around the star.
inline bool switches_alternate(const Star& t) {
  int prev = 0, count = 0, first = 0;
  for (int l : t.L) {
    int kind = is_anticlockwise(t, l) ? 1 : is_clockwise(t, l) ? 2 : 0;
    if (!kind) continue;
    if (kind == prev) return false;
    if (!count++) first = kind;
    prev = kind;
  }
  return count == 0 || (count % 2 == 0 && first != prev);
}

inline bool uniform_parity(const Star& t, const LabelSet& s) {
  for (int l : s)
    if (t.parity[static_cast<std::size_t>(l - 1)] != t.parity[static_cast<std::size_t>(s.front() - 1)]) return false;
  return true;
}

inline bool is_coherent(const Star& t) {
  auto p = partition_switches(t);
  return uniform_parity(t, p.A) && uniform_parity(t, p.C);
}

inline bool is_bicoherent(const Star& t) {
  auto p = partition_switches(t);
  return uniform_parity(t, p.A) && uniform_parity(t, p.C) && uniform_parity(t, p.Bplus) &&
         uniform_parity(t, p.Bminus);
}

// ---------------------------------------------------------------------------
// types

/// [T] under the dictionary source = +.
inline LType type_of(const Star& t) {
  LType out;
  for (Dir d : t.omegas()) out.push_back(dir_to_sign(d));
  return out;
}

inline LType negate(LType tau) {
  for (auto& s : tau) s = -s;
  return tau;
}

inline bool is_trivial(const LType& tau) {
  return std::all_of(tau.begin(), tau.end(), [&](Sign s) { return s == tau.front(); });
}

/// Dictionary under which T represents tau: + when source reads as +, - when
/// source reads as -, nothing when neither matches.
inline std::optional<Sign> represents(const Star& t, const LType& tau) {
  LType mine = type_of(t);
  if (mine == tau) return Sign::Plus;
  if (negate(mine) == tau) return Sign::Minus;
  return std::nullopt;
}

inline Star star_for_type(const LType& tau, Sign sign, std::vector<Sign> parity, LabelSet L) {
  std::vector<Dir> omega;
  for (Sign s : tau) omega.push_back(sign_to_dir(s));
  return make_star(sign, std::move(parity), std::move(L), omega);
}

/// A type is coherent when some coherent star represents it. Bar and reflection
/// both preserve coherence, so one representative decides.
inline bool is_coherent_type(const LType& tau, const std::vector<Sign>& parity, const LabelSet& L) {
  return is_coherent(star_for_type(tau, Sign::Plus, parity, L));
}

// ---------------------------------------------------------------------------
// derivatives

namespace detail {

inline Dir derived_dir(const Star& t, int a, Sign chirality) {
  return t.character(a) * chirality == Sign::Plus ? Dir::Out : Dir::In;
}

// Derivative onto the label set `keep`; intervals without an anticlockwise switch
// inherit T's orientation, which is constant there.
inline Star derive_onto(const Star& t, LabelSet keep, Sign chirality, bool allow_inherit) {
  const int n = t.n();
  auto part = partition_switches(t);
  Star out = t;
  out.L = keep;
  if (keep.empty()) return out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    std::vector<int> inside;
    for (int l : interior_labels(keep, i, n))
      if (std::binary_search(part.A.begin(), part.A.end(), l)) inside.push_back(l);
    if (inside.size() > 1) throw Error("INTERNAL", "switches fail to alternate");
    Dir d;
    if (inside.empty()) {
      if (!allow_inherit) throw Error("INTERNAL", "clockwise interval without an anticlockwise switch");
      d = t.gap_after(keep[i]);
    } else {
      d = derived_dir(t, inside.front(), chirality);
    }
    for (int g : interval_gaps(keep, i, n)) out.gap[static_cast<std::size_t>(g)] = d;
  }
  return out;
}

}  // namespace detail

/// d+ (chirality +) or d- (chirality -): keep C(T), orient each C-interval by the
/// character of its anticlockwise switch.
inline Star derivative(const Star& t, Sign chirality) {
  auto part = partition_switches(t);
  if (part.C.empty()) throw Error("NO_SWITCHES", "derivative of a star without clockwise switches");
  return detail::derive_onto(t, part.C, chirality, false);
}

/// d0 relative to L0: keep C(T) together with L0.
inline Star derivative_relative(const Star& t, const LabelSet& L0, Sign chirality) {
  auto part = partition_switches(t);
  LabelSet keep;
  std::set_union(part.C.begin(), part.C.end(), L0.begin(), L0.end(), std::back_inserter(keep));
  return detail::derive_onto(t, keep, chirality, true);
}

/// A(T) - L0.
inline LabelSet a_tilde(const Star& t, const LabelSet& L0) {
  auto A = partition_switches(t).A;
  LabelSet out;
  std::set_difference(A.begin(), A.end(), L0.begin(), L0.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// sequences of coherence

struct CoherenceSequence {
  std::vector<Star> stars;
  std::vector<Sign> d_signs;  // d_signs[i] produced stars[i + 1]
  int m = 0;                  // number of leading d+ steps; 0 when tau is coherent
};

/// The constructive proof: T1 on V+, barred if its anticlockwise switches are
/// already uniform, then d+ until A is uniform, with one d- detour when C is not.
inline CoherenceSequence sequence_of_coherence(const LType& tau, const std::vector<Sign>& parity,
                                               const LabelSet& L) {
  if (tau.empty() || is_trivial(tau)) throw Error("TRIVIAL_TYPE", "a sequence of coherence needs a nontrivial type");
  CoherenceSequence seq;
  Star t1 = star_for_type(tau, Sign::Plus, parity, L);
  if (is_coherent(t1)) {
    seq.stars.push_back(t1);
    return seq;
  }
  if (uniform_parity(t1, partition_switches(t1).A)) t1 = bar(t1);
  const int cap = static_cast<int>(t1.L.size());
  std::vector<Star> powers{t1};  // powers[k] = (d+)^k T1
  while (true) {
    if (static_cast<int>(powers.size()) > cap)
      throw Error("COHERENCE_DIVERGENCE", "no uniform anticlockwise set within " + std::to_string(cap) + " steps");
    powers.push_back(derivative(powers.back(), Sign::Plus));
    if (uniform_parity(powers.back(), partition_switches(powers.back()).A)) break;
  }
  const int m = static_cast<int>(powers.size()) - 1;
  seq.m = m;
  if (uniform_parity(powers.back(), partition_switches(powers.back()).C)) {
    seq.stars = powers;
    seq.d_signs.assign(static_cast<std::size_t>(m), Sign::Plus);
    return seq;
  }
  seq.stars.assign(powers.begin(), powers.begin() + m);  // T1 .. Tm
  seq.d_signs.assign(static_cast<std::size_t>(m - 1), Sign::Plus);
  seq.stars.push_back(derivative(seq.stars.back(), Sign::Minus));
  seq.d_signs.push_back(Sign::Minus);
  seq.stars.push_back(derivative(seq.stars.back(), Sign::Plus));
  seq.d_signs.push_back(Sign::Plus);
  return seq;
}

/// R1 = T1 and R_i = d0 R_{i-1} with the chiralities of the sequence.
inline std::vector<Star> l0_sequence(const CoherenceSequence& seq, const LabelSet& L0) {
  std::vector<Star> r{seq.stars.front()};
  for (Sign s : seq.d_signs) r.push_back(derivative_relative(r.back(), L0, s));
  return r;
}

// ---------------------------------------------------------------------------
// corners and their quality

/// A corner read counterclockwise: labels with their characters, and the
/// orientation of each gap between consecutive labels.
struct CornerSpec {
  std::vector<int> labels;
  std::vector<Sign> chars;
  std::vector<Dir> gaps;  // gaps.size() == labels.size() - 1
};

/// -X: mirror of bar X, so the order reverses and characters and orientations flip.
inline CornerSpec negate(const CornerSpec& x) {
  CornerSpec out;
  out.labels.assign(x.labels.rbegin(), x.labels.rend());
  for (auto it = x.chars.rbegin(); it != x.chars.rend(); ++it) out.chars.push_back(-*it);
  for (auto it = x.gaps.rbegin(); it != x.gaps.rend(); ++it) out.gaps.push_back(flip(*it));
  return out;
}

/// The part of T between labels a and b, a and b included, taken in label order.
/// With a == b the corner runs once around the star.
inline CornerSpec corner_of(const Star& t, int a, int b) {
  const int n = t.n();
  CornerSpec x;
  int l = a;
  do {
    x.labels.push_back(l);
    x.chars.push_back(t.character(l));
    x.gaps.push_back(t.gap_after(l));
    l = l % n + 1;
  } while (l != b);
  x.labels.push_back(b);
  x.chars.push_back(t.character(b));
  if (t.sign == Sign::Minus) {
    // label order is clockwise on V-
    std::reverse(x.labels.begin(), x.labels.end());
    std::reverse(x.chars.begin(), x.chars.end());
    std::reverse(x.gaps.begin(), x.gaps.end());
  }
  return x;
}

enum class Quality { Good, Bad, Ugly };

inline std::string_view to_string(Quality q) {
  return q == Quality::Good ? "good" : q == Quality::Bad ? "bad" : "ugly";
}

struct Atom {
  int first = 0, last = 0;  // positions in the corner's label list
  Dir dir = Dir::Out;
  bool good = false;
};

struct CornerQuality {
  Quality quality = Quality::Bad;
  Sign eta_c = Sign::Plus, eta_a = Sign::Plus;
  std::vector<int> A, C;  // positions of interior switches
  std::vector<Atom> atoms;
};

/// Good atoms, encoded from the figure: a source atom is good when the label on
/// its clockwise end has character eta_c, a sink when the label on its
/// counterclockwise end does. Next to a clockwise switch both atoms share that
/// label, and the table is antisymmetric under X -> -X.
inline bool atom_good(Dir dir, Sign cw_end, Sign ccw_end, Sign eta_c) {
  return dir == Dir::Out ? cw_end == eta_c : ccw_end == eta_c;
}

inline CornerQuality classify_corner(const CornerSpec& x, Sign eta_c, Sign eta_a) {
  CornerQuality q;
  q.eta_c = eta_c;
  q.eta_a = eta_a;
  const int k = static_cast<int>(x.gaps.size());
  int start = 0;
  for (int i = 1; i <= k; ++i) {
    bool sw = i < k && x.gaps[static_cast<std::size_t>(i - 1)] != x.gaps[static_cast<std::size_t>(i)];
    if (sw) (x.gaps[static_cast<std::size_t>(i - 1)] == Dir::Out ? q.A : q.C).push_back(i);
    if (sw || i == k) {
      Dir d = x.gaps[static_cast<std::size_t>(start)];
      q.atoms.push_back({start, i, d,
                         atom_good(d, x.chars[static_cast<std::size_t>(start)], x.chars[static_cast<std::size_t>(i)], eta_c)});
      start = i;
    }
  }
  for (int a : q.A)
    if (x.chars[static_cast<std::size_t>(a)] != x.chars[static_cast<std::size_t>(q.A.front())]) {
      q.quality = Quality::Ugly;
      return q;
    }
  bool all = std::all_of(q.atoms.begin(), q.atoms.end(), [](const Atom& a) { return a.good; });
  bool some = std::any_of(q.atoms.begin(), q.atoms.end(), [](const Atom& a) { return a.good; });
  // With no anticlockwise switch there is at most one clockwise switch, and the
  // atoms on its two sides agree, so either rule gives the same answer.
  bool strict = q.A.empty() || x.chars[static_cast<std::size_t>(q.A.front())] == eta_a;
  q.quality = (strict ? all : some) ? Quality::Good : Quality::Bad;
  return q;
}

// ---------------------------------------------------------------------------
// inherited types

struct InheritedType {
  std::vector<Star> R;
  LabelSet L0;
  Sign eta_c = Sign::Plus, eta_a = Sign::Plus;
  bool eta_a_free = false;  // A~(Rn) empty, eta_a chosen as +
  std::vector<Sign> epsilon;
  LType tau0;
};

inline InheritedType inherited_type(const CoherenceSequence& seq, LabelSet L0) {
  std::sort(L0.begin(), L0.end());
  L0.erase(std::unique(L0.begin(), L0.end()), L0.end());
  const Star& tn = seq.stars.back();
  for (int l : L0)
    if (!seq.stars.front().has_label(l)) throw Error("USAGE", "L0 must lie inside L");
  InheritedType it;
  it.L0 = L0;
  it.R = l0_sequence(seq, L0);
  const Star& rn = it.R.back();
  auto cn = partition_switches(tn).C;
  if (cn.empty()) throw Error("TRIVIAL_TYPE", "last star of the sequence has no clockwise switch");
  it.eta_c = tn.character(cn.front());
  auto at = a_tilde(rn, L0);
  if (!uniform_parity(rn, at)) throw Error("UGLY_CORNER", "A~(Rn) has mixed characters");
  it.eta_a_free = at.empty();
  it.eta_a = at.empty() ? Sign::Plus : -rn.character(at.front());
  for (std::size_t i = 0; i < L0.size(); ++i) {
    auto x = corner_of(rn, L0[i], L0[(i + 1) % L0.size()]);
    auto q = classify_corner(x, it.eta_c, it.eta_a);
    if (q.quality == Quality::Ugly) throw Error("UGLY_CORNER", "corner at label " + std::to_string(L0[i]) + " is ugly");
    Sign e = q.quality == Quality::Good ? Sign::Plus : Sign::Minus;
    it.epsilon.push_back(e);
    it.tau0.push_back(e);
  }
  return it;
}

// ---------------------------------------------------------------------------
// conjugates

/// Conjugate of a star carrying every label: the corners following a label of
/// character + are reversed. Needs characters alternating around the vertex, as
/// they do when the faces of G_P are two-coloured.
inline Star conjugate_star(const Star& t) {
  if (static_cast<int>(t.L.size()) != t.n()) throw Error("PARTIAL_TYPE", "conjugate needs a star on every label");
  for (int l = 1; l <= t.n(); ++l)
    if (t.character(l) == t.character(l % t.n() + 1))
      throw Error("NON_ALTERNATING_PARITY", "labels " + std::to_string(l) + " and " +
                                                std::to_string(l % t.n() + 1) + " share a parity");
  Star out = t;
  for (int l = 1; l <= t.n(); ++l)
    if (t.character(l) == Sign::Plus) out.gap[static_cast<std::size_t>(l - 1)] = flip(out.gap[static_cast<std::size_t>(l - 1)]);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json star_to_json(const Star& t) {
  nlohmann::json labels = nlohmann::json::array();
  for (int l = 1; l <= t.n(); ++l) labels.push_back({{"id", l}, {"parity", to_string(t.parity[static_cast<std::size_t>(l - 1)])}});
  nlohmann::json omega = nlohmann::json::array();
  for (Dir d : t.omegas()) omega.push_back(std::string(to_string(d)));
  return {{"sign", to_string(t.sign)}, {"labels", labels}, {"L", t.L}, {"omega", omega}};
}

inline Star star_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::pair<int, Sign>> labels;
    for (const auto& l : j.at("labels")) labels.emplace_back(l.at("id").get<int>(), parse_sign(l.at("parity").get<std::string>()));
    std::sort(labels.begin(), labels.end());
    std::vector<Sign> parity;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].first != static_cast<int>(i) + 1) throw Error("PARSE", "label ids must be 1..n");
      parity.push_back(labels[i].second);
    }
    std::vector<Dir> omega;
    for (const auto& d : j.at("omega")) omega.push_back(parse_dir(d.get<std::string>()));
    return make_star(parse_sign(j.at("sign").get<std::string>()), parity, j.at("L").get<LabelSet>(), omega);
  } catch (const nlohmann::json::exception& e) {
    throw Error("PARSE", e.what());
  } catch (const std::invalid_argument& e) {
    throw Error("PARSE", e.what());
  } catch (const Error& e) {
    if (e.code() == "PARSE") throw;
    throw Error("PARSE", e.what());
  }
}

inline nlohmann::json type_to_json(const LType& tau) {
  nlohmann::json out = nlohmann::json::array();
  for (Sign s : tau) out.push_back(to_string(s));
  return out;
}

inline LType type_from_json(const nlohmann::json& j) {
  try {
    LType tau;
    for (const auto& s : j) tau.push_back(parse_sign(s.get<std::string>()));
    return tau;
  } catch (const std::exception& e) {
    throw Error("PARSE", e.what());
  }
}

inline nlohmann::json to_json(const SwitchPartition& p) {
  nlohmann::json phi = nlohmann::json::object();
  for (const auto& [l, s] : p.phi) phi[std::to_string(l)] = to_string(s);
  return {{"A", p.A}, {"C", p.C}, {"Bplus", p.Bplus}, {"Bminus", p.Bminus}, {"phi", phi}};
}

inline nlohmann::json to_json(const CoherenceSequence& seq) {
  nlohmann::json stars = nlohmann::json::array(), d = nlohmann::json::array();
  for (const auto& t : seq.stars) stars.push_back(star_to_json(t));
  for (Sign s : seq.d_signs) d.push_back(to_string(s));
  return {{"stars", stars}, {"d_signs", d}, {"n", seq.stars.size()}, {"m", seq.m}};
}

inline nlohmann::json to_json(const InheritedType& it) {
  nlohmann::json r = nlohmann::json::array();
  for (const auto& t : it.R) r.push_back(star_to_json(t));
  return {{"L0", it.L0},
          {"R", r},
          {"eta_c", to_string(it.eta_c)},
          {"eta_a", to_string(it.eta_a)},
          {"eta_a_free", it.eta_a_free},
          {"epsilon", type_to_json(it.epsilon)},
          {"tau0", type_to_json(it.tau0)}};
}

}  // namespace schargraph

#endif  // SCHARGRAPH_STAR_CALCULUS_HPP
