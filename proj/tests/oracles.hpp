#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library's equality machinery so the two can check each other.

#include <deque>
#include <random>
#include <set>
#include <vector>

#include "strands/coxeter.hpp"
#include "strands/rational.hpp"
#include "strands/trajectory.hpp"
#include "strands/word.hpp"

namespace oracles {

using GenWord = std::vector<std::uint8_t>;

inline GenWord genword_of(const strands::Word& w) {
  GenWord out;
  for (const auto& l : w.letters) out.push_back(static_cast<std::uint8_t>(l.index));
  return out;
}

// Closure of a word under length-preserving moves plus deletion of equal
// adjacent pairs.  Its minimal-length layer is exactly the set of reduced
// expressions of the element, so two words are equal iff those layers meet.
// No reflection matrices anywhere in this path.
inline std::set<GenWord> reduced_expressions(const strands::Word& w,
                                             std::size_t cap = 500000) {
  strands::CoxeterMatrix cox(w.pres);
  GenWord start = genword_of(w);
  std::set<GenWord> seen{start};
  std::deque<GenWord> queue{start};
  while (!queue.empty()) {
    GenWord cur = queue.front();
    queue.pop_front();
    auto push = [&](GenWord next) {
      if (seen.insert(next).second) queue.push_back(std::move(next));
    };
    for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
      int a = cur[p], b = cur[p + 1];
      if (a == b) {
        GenWord shorter;
        shorter.insert(shorter.end(), cur.begin(), cur.begin() + p);
        shorter.insert(shorter.end(), cur.begin() + p + 2, cur.end());
        push(std::move(shorter));
        continue;
      }
      int m = cox.order(a, b);
      if (m == 2) {
        GenWord next = cur;
        std::swap(next[p], next[p + 1]);
        push(std::move(next));
      } else if (m == 3 && p + 2 < cur.size() && cur[p + 2] == a) {
        GenWord next = cur;
        next[p] = b;
        next[p + 1] = a;
        next[p + 2] = b;
        push(std::move(next));
      }
    }
    if (seen.size() > cap) throw std::runtime_error("oracle closure cap exceeded");
  }
  std::size_t min_len = SIZE_MAX;
  for (const auto& g : seen) min_len = std::min(min_len, g.size());
  std::set<GenWord> out;
  for (const auto& g : seen)
    if (g.size() == min_len) out.insert(g);
  return out;
}

inline bool equal_by_rewriting(const strands::Word& u, const strands::Word& v) {
  auto ru = reduced_expressions(u);
  auto rv = reduced_expressions(v);
  for (const auto& g : ru)
    if (rv.count(g)) return true;
  return false;
}

// Fraction-free determinant over exact integers; used to spot-check that
// transform matrices coming out of the Smith reduction are unimodular.
inline strands::Int bareiss_det(std::vector<std::vector<strands::Int>> m) {
  using strands::Int;
  std::size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Deterministic fuzz input; seeds are fixed per test site so failures replay.
inline strands::Word random_sigma_word(const strands::Presentation& pres,
                                       std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(1, pres.n - 1);
  strands::Word w{pres, {}};
  for (std::size_t i = 0; i < length; ++i)
    w.letters.push_back(strands::sigma(pick(rng)));
  return w;
}

inline strands::Word random_ring_word(const strands::Presentation& pres,
                                      std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::uniform_int_distribution<int> s_pick(1, pres.n - 1);
  std::uniform_int_distribution<int> t_pick(1, pres.n);
  strands::Word w{pres, {}};
  for (std::size_t i = 0; i < length; ++i) {
    int k = kind(rng);
    if (k <= 1)
      w.letters.push_back(strands::sigma(s_pick(rng)));
    else if (k == 2)
      w.letters.push_back(strands::trans(t_pick(rng), sgn(rng) ? 1 : -1));
    else
      w.letters.push_back(strands::zeta_letter(sgn(rng) ? 1 : -1));
  }
  return w;
}

// Straight-line trajectory realizing a word, one unit-time tile per letter.
// Particles rest at slot positions (2r-1)/(2n); a sigma tile swaps the two
// occupants linearly, a t tile sends one occupant a full turn around the
// ring (positive exponent moves downward, the positive winding direction),
// and a z tile shifts every particle down (or up) one slot in parallel.
// Every coincidence and cut crossing this produces is transversal and all
// event times inside a tile are distinct, so compiling the result exercises
// the full detection pipeline with the word itself as the expected element.
inline strands::Trajectory synth_trajectory(const strands::Word& w,
                                            std::vector<int> occ = {}) {
  using strands::Rat;
  const int n = w.pres.n;
  const bool ring = w.pres.geometry == strands::Geometry::Ring;
  if (occ.empty())
    for (int i = 1; i <= n; ++i) occ.push_back(i);
  auto slot = [&](int rank) { return Rat(2 * rank - 1, 2 * n); };

  std::vector<Rat> x(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<strands::Breakpoint>> paths(n);
  for (int r = 1; r <= n; ++r) x[occ[r - 1]] = slot(r);
  for (int p = 1; p <= n; ++p) paths[p - 1].push_back({Rat(0), x[p]});

  Rat t = 0;
  auto emit_tile = [&]() {
    t += 1;
    for (int p = 1; p <= n; ++p) paths[p - 1].push_back({t, x[p]});
  };
  for (const strands::Letter& l : w.letters) {
    switch (l.kind) {
      case strands::LetterKind::Sigma: {
        int u = occ[l.index - 1], v = occ[l.index];
        x[u] += Rat(1, n);
        x[v] -= Rat(1, n);
        std::swap(occ[l.index - 1], occ[l.index]);
        emit_tile();
        break;
      }
      case strands::LetterKind::Trans: {
        int u = occ[l.index - 1];
        x[u] -= l.exp;  // one full circumference; occupancy returns to itself
        emit_tile();
        break;
      }
      case strands::LetterKind::Zeta: {
        for (int p = 1; p <= n; ++p) x[p] -= Rat(l.exp, n);
        if (l.exp > 0)
          std::rotate(occ.begin(), occ.begin() + 1, occ.end());
        else
          std::rotate(occ.begin(), occ.end() - 1, occ.end());
        emit_tile();
        break;
      }
    }
  }
  if (w.letters.empty()) emit_tile();  // a loop still needs positive duration
  return strands::make_trajectory(
      ring ? strands::Geometry::Ring : strands::Geometry::Interval,
      std::move(paths), Rat(1));
}

}  // namespace oracles
