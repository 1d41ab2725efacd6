#ifndef SCHARGRAPH_ORACLES_HPP
#define SCHARGRAPH_ORACLES_HPP

// Independent re-implementations used to cross-check the star calculus. They work
// on L-intervals directly instead of the per-gap storage the library uses.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "schargraph/star_calculus.hpp"

namespace schargraph::oracle {

// interval i runs from L[i] to L[i+1] in label order, so label L[i] sits between intervals i-1 and i
struct OracleStar {
  Sign sign;
  std::vector<Sign> parity;
  LabelSet L;
  std::vector<Dir> omega;
};

inline OracleStar of(const Star& t) { return {t.sign, t.parity, t.L, t.omegas()}; }

inline void switches(const OracleStar& t, LabelSet& A, LabelSet& C) {
  A.clear();
  C.clear();
  const std::size_t k = t.L.size();
  for (std::size_t i = 0; i < k; ++i) {
    Dir before = t.omega[(i + k - 1) % k], after = t.omega[i];
    Dir cw = t.sign == Sign::Plus ? before : after, ccw = t.sign == Sign::Plus ? after : before;
    if (cw == Dir::Out && ccw == Dir::In) A.push_back(t.L[i]);
    if (cw == Dir::In && ccw == Dir::Out) C.push_back(t.L[i]);
  }
}

// x strictly inside the label-order walk from a to b
inline bool between(int a, int x, int b, int n) {
  for (int l = a % n + 1; l != b; l = l % n + 1)
    if (l == x) return true;
  return false;
}

inline OracleStar derivative(const OracleStar& t, Sign chi, const LabelSet& L0 = {}) {
  LabelSet A, C;
  switches(t, A, C);
  const int n = static_cast<int>(t.parity.size());
  LabelSet keep = C;
  for (int l : L0)
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) keep.push_back(l);
  std::sort(keep.begin(), keep.end());
  OracleStar out{t.sign, t.parity, keep, {}};
  for (std::size_t i = 0; i < keep.size(); ++i) {
    int a = keep[i], b = keep[(i + 1) % keep.size()];
    int found = 0;
    for (int x : A)
      if (between(a, x, b, n) || (keep.size() == 1 && x != a)) found = x;
    if (found) {
      Sign ch = t.sign * t.parity[static_cast<std::size_t>(found - 1)] * chi;
      out.omega.push_back(ch == Sign::Plus ? Dir::Out : Dir::In);
    } else {
      std::size_t j = 0;
      for (std::size_t s = 0; s < t.L.size(); ++s)
        if (t.L[s] <= a) j = s + 1;
      out.omega.push_back(t.omega[(j + t.L.size() - 1) % t.L.size()]);
    }
  }
  return out;
}

inline std::vector<Sign> parity_pattern(int n, unsigned mask) {
  std::vector<Sign> p;
  for (int i = 0; i < n; ++i) p.push_back(mask >> i & 1 ? Sign::Minus : Sign::Plus);
  return p;
}

// Every star on n ambient labels with nonempty L, both signs, all parities.
inline void for_each_star(int n, const std::function<void(const Star&)>& f) {
  for (unsigned pm = 0; pm < (1u << n); ++pm)
    for (unsigned lm = 1; lm < (1u << n); ++lm) {
      LabelSet L;
      for (int i = 0; i < n; ++i)
        if (lm >> i & 1) L.push_back(i + 1);
      for (unsigned om = 0; om < (1u << L.size()); ++om) {
        std::vector<Dir> omega;
        for (std::size_t i = 0; i < L.size(); ++i) omega.push_back(om >> i & 1 ? Dir::In : Dir::Out);
        for (Sign s : {Sign::Plus, Sign::Minus}) f(make_star(s, parity_pattern(n, pm), L, omega));
      }
    }
}

/// Defining clauses of a sequence of coherence; empty when all hold.
inline std::vector<std::string> check_sequence(const CoherenceSequence& seq, const LType& tau) {
  std::vector<std::string> bad;
  if (seq.stars.empty()) return {"empty sequence"};
  if (!represents(seq.stars.front(), tau)) bad.push_back("T1 does not represent tau");
  if (seq.d_signs.size() + 1 != seq.stars.size()) bad.push_back("step count");
  for (std::size_t i = 0; i < seq.stars.size(); ++i) {
    if (is_trivial(type_of(seq.stars[i]))) bad.push_back("trivial T" + std::to_string(i + 1));
    if (i > 0 && i - 1 < seq.d_signs.size()) {
      auto o = derivative(of(seq.stars[i - 1]), seq.d_signs[i - 1]);
      if (o.L != seq.stars[i].L || o.omega != seq.stars[i].omegas()) bad.push_back("step " + std::to_string(i + 1));
    }
  }
  LabelSet A, C;
  const auto& tn = seq.stars.back();
  switches(of(tn), A, C);
  auto uniform = [&](const LabelSet& s) {
    for (int l : s)
      if (tn.parity[static_cast<std::size_t>(l - 1)] != tn.parity[static_cast<std::size_t>(s.front() - 1)]) return false;
    return true;
  };
  if (!uniform(A) || !uniform(C)) bad.push_back("Tn not coherent");
  return bad;
}

// Every corner with k gaps, as counterclockwise character/orientation lists.
inline void for_each_corner(int k, const std::function<void(const CornerSpec&)>& f) {
  for (unsigned cm = 0; cm < (1u << (k + 1)); ++cm)
    for (unsigned gm = 0; gm < (1u << k); ++gm) {
      CornerSpec x;
      for (int i = 0; i <= k; ++i) {
        x.labels.push_back(i + 1);
        x.chars.push_back(cm >> i & 1 ? Sign::Minus : Sign::Plus);
      }
      for (int i = 0; i < k; ++i) x.gaps.push_back(gm >> i & 1 ? Dir::In : Dir::Out);
      f(x);
    }
}

inline CornerSpec slice(const CornerSpec& x, int from, int to) {
  CornerSpec out;
  out.labels.assign(x.labels.begin() + from, x.labels.begin() + to + 1);
  out.chars.assign(x.chars.begin() + from, x.chars.begin() + to + 1);
  out.gaps.assign(x.gaps.begin() + from, x.gaps.begin() + to);
  return out;
}

}  // namespace schargraph::oracle

#endif  // SCHARGRAPH_ORACLES_HPP
