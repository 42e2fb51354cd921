#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "strands/error.hpp"
#include "strands/matrix.hpp"
#include "strands/presentation.hpp"
#include "strands/word.hpp"

namespace strands {

// m(i,j) value standing for "no relation between s_i and s_j".
constexpr int kOrderInfinity = 0;

// Pairwise orders of products of distinct generators.  Only the four values
// 2, 3, infinity (and 1 on the diagonal) occur across the supported families.
class CoxeterMatrix {
 public:
  explicit CoxeterMatrix(const Presentation& pres) : pres_(pres) {}

  int gens() const { return pres_.n - 1; }
  const Presentation& presentation() const { return pres_; }

  // 1-based generator indices.
  int order(int i, int j) const {
    if (i == j) return 1;
    bool adjacent = (i - j == 1) || (j - i == 1);
    switch (pres_.family) {
      case Family::S: return adjacent ? 3 : 2;
      case Family::T: return adjacent ? kOrderInfinity : 2;
      case Family::F: return adjacent ? 3 : kOrderInfinity;
      case Family::W: return kOrderInfinity;
    }
    return kOrderInfinity;
  }

 private:
  Presentation pres_;
};

// ---------------------------------------------------------------------------
// Reflection representation.  On the root basis a_1..a_{n-1} the form is
// B(a_i,a_j) = -cos(pi/m(i,j)), which over our m-values is 1, 0, -1/2 or -1,
// and s_i acts by v -> v - 2B(v,a_i) a_i.  The doubled coefficients are
// integers, so the generator matrices are integral and products stay exact.
// The representation is faithful, which is what makes matrix comparison a
// complete equality test for words in the s-generators.

// minus_two_b = -2 * B(a_i, a_j)
inline Rat minus_two_b(const CoxeterMatrix& cox, int i, int j) {
  switch (cox.order(i, j)) {
    case 1: return Rat(-2);
    case 2: return Rat(0);
    case 3: return Rat(1);
    default: return Rat(2);  // infinity
  }
}

inline RationalMatrix reflection_generator(const CoxeterMatrix& cox, int gen) {
  int k = cox.gens();
  RationalMatrix m = RationalMatrix::identity(k);
  // Column j holds the image of a_j; only row gen-1 changes.
  for (int j = 1; j <= k; ++j) {
    Rat delta = minus_two_b(cox, j, gen);
    if (j == gen)
      m.at(gen - 1, j - 1) = Rat(-1);
    else
      m.at(gen - 1, j - 1) = delta;
  }
  return m;
}

inline void require_sigma_word(const Word& w, const char* what) {
  for (const Letter& l : w.letters)
    if (l.kind != LetterKind::Sigma)
      throw DomainError("word", std::string(what) + ": only s-letters act on the root space; "
                                                    "fold ring words into winding/strand pairs first");
}

inline RationalMatrix reflection_matrix(const Word& w) {
  CoxeterMatrix cox(w.pres);
  require_sigma_word(w, "reflection_matrix");
  RationalMatrix out = RationalMatrix::identity(cox.gens());
  for (const Letter& l : w.letters) out = out * reflection_generator(cox, l.index);
  return out;
}

inline bool elements_equal(const Word& u, const Word& v) {
  require_same_group(u.pres, v.pres, "elements_equal");
  return reflection_matrix(u) == reflection_matrix(v);
}

// ---------------------------------------------------------------------------
// Word rewriting.  Length-preserving moves: swap an adjacent pair when
// m(i,j) = 2, rewrite aba -> bab when m(a,b) = 3.  For involution generators
// every non-reduced word admits a deletion somewhere in the move-orbit of the
// word, so closing under moves and deleting equal adjacent pairs terminates
// in the full set of reduced expressions.

namespace detail {

using GenWord = std::vector<std::uint8_t>;

inline GenWord to_genword(const Word& w) {
  require_sigma_word(w, "rewriting");
  GenWord out;
  out.reserve(w.letters.size());
  for (const Letter& l : w.letters) out.push_back(static_cast<std::uint8_t>(l.index));
  return out;
}

inline Word from_genword(const GenWord& g, const Presentation& pres) {
  Word out{pres, {}};
  out.letters.reserve(g.size());
  for (std::uint8_t i : g) out.letters.push_back(sigma(i));
  return out;
}

// Closure of w under length-preserving moves.  Throws when the orbit exceeds
// node_cap; orbits grow combinatorially in family S for long words.
inline std::set<GenWord> move_closure(const GenWord& w, const CoxeterMatrix& cox,
                                      std::size_t node_cap) {
  std::set<GenWord> seen{w};
  std::deque<GenWord> queue{w};
  while (!queue.empty()) {
    GenWord cur = queue.front();
    queue.pop_front();
    for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
      int a = cur[p], b = cur[p + 1];
      if (a == b) continue;
      int m = cox.order(a, b);
      if (m == 2) {
        GenWord next = cur;
        std::swap(next[p], next[p + 1]);
        if (seen.insert(next).second) queue.push_back(next);
      } else if (m == 3 && p + 2 < cur.size() && cur[p + 2] == a) {
        GenWord next = cur;
        next[p] = b;
        next[p + 1] = a;
        next[p + 2] = b;
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    if (seen.size() > node_cap)
      throw DomainError("resource", "rewriting orbit exceeded " + std::to_string(node_cap) +
                                        " words; input word is too long to normalize");
  }
  return seen;
}

inline bool has_adjacent_equal(const GenWord& w, std::size_t* at = nullptr) {
  for (std::size_t p = 0; p + 1 < w.size(); ++p)
    if (w[p] == w[p + 1]) {
      if (at) *at = p;
      return true;
    }
  return false;
}

}  // namespace detail

constexpr std::size_t kRewriteNodeCap = 2'000'000;

// A word is reduced when no word in its move-orbit contains an equal adjacent
// pair.  The input is taken as written; no cancellation is applied first.
inline bool is_reduced(const Word& w) {
  CoxeterMatrix cox(w.pres);
  detail::GenWord g = detail::to_genword(w);
  if (detail::has_adjacent_equal(g)) return false;
  auto orbit = detail::move_closure(g, cox, kRewriteNodeCap);
  for (const auto& o : orbit)
    if (detail::has_adjacent_equal(o)) return false;
  return true;
}

// An element of an exchange group: the shortlex-least reduced word plus the
// reflection matrix, which serves as the equality certificate.
struct ElementHandle {
  Presentation pres;
  Word word;                  // shortlex normal form, s-letters only
  RationalMatrix certificate; // reflection matrix of the element

  bool operator==(const ElementHandle& o) const {
    return pres.family == o.pres.family && pres.n == o.pres.n &&
           certificate == o.certificate;
  }
  bool operator!=(const ElementHandle& o) const { return !(*this == o); }
};

namespace detail {

inline Word normal_form_by_rewriting(const Word& w) {
  CoxeterMatrix cox(w.pres);
  detail::GenWord g = detail::to_genword(w);
  for (;;) {
    auto orbit = detail::move_closure(g, cox, kRewriteNodeCap);
    bool deleted = false;
    for (const auto& o : orbit) {
      std::size_t p;
      if (detail::has_adjacent_equal(o, &p)) {
        detail::GenWord shorter;
        shorter.reserve(o.size() - 2);
        shorter.insert(shorter.end(), o.begin(), o.begin() + p);
        shorter.insert(shorter.end(), o.begin() + p + 2, o.end());
        g = std::move(shorter);
        deleted = true;
        break;
      }
    }
    if (deleted) continue;
    // Everything in the orbit is reduced; same length, so lex-least is
    // shortlex-least, and the orbit is exactly the set of reduced words.
    return detail::from_genword(*orbit.begin(), w.pres);
  }
}

// Family S only.  The permutation image determines the element, every reduced
// expression has the inversion count as its length, and the smallest left
// descent always starts one, so picking it greedily writes down the lex-least
// (hence shortlex-least) reduced word without touching the move orbit.
inline Word normal_form_by_descents(const Word& w) {
  require_sigma_word(w, "rewriting");
  Permutation pi = permutation_image(w);
  int n = pi.n();
  std::vector<int> pos(n);  // pos[v]: where value v sits in the one-line form
  for (int x = 0; x < n; ++x) pos[pi.apply(x)] = x;
  Word nf{w.pres, {}};
  for (;;) {
    int i = 0;
    while (i + 1 < n && pos[i] < pos[i + 1]) ++i;
    if (i + 1 == n) return nf;
    nf.letters.push_back(sigma(i + 1));
    std::swap(pos[i], pos[i + 1]);
  }
}

}  // namespace detail

inline ElementHandle normal_form_shortlex(const Word& w) {
  Word nf = w.pres.family == Family::S ? detail::normal_form_by_descents(w)
                                       : detail::normal_form_by_rewriting(w);
  RationalMatrix cert = reflection_matrix(nf);
  return ElementHandle{w.pres, std::move(nf), std::move(cert)};
}

inline ElementHandle identity_element(const Presentation& pres) {
  return normal_form_shortlex(Word{pres, {}});
}

// ---------------------------------------------------------------------------
// Cayley balls.  Breadth-first over right multiplication by generators.
// Each level is scanned in shortlex order with generators appended in
// ascending order, so the first word reaching an element is its shortlex
// normal form (any shortlex normal form of length L is some length L-1
// normal form plus one letter, and normal-form prefixes are normal forms).

struct BallEntry {
  ElementHandle element;
  int length = 0;
};

inline std::vector<BallEntry> cayley_ball(const Presentation& pres, int radius,
                                          std::size_t element_cap = 1'000'000) {
  if (radius < 0) throw DomainError("ball", "radius must be nonnegative");
  CoxeterMatrix cox(pres);
  int k = cox.gens();
  std::vector<RationalMatrix> gen_mats;
  for (int i = 1; i <= k; ++i) gen_mats.push_back(reflection_generator(cox, i));

  std::vector<BallEntry> out;
  std::set<std::string> seen;
  ElementHandle id = identity_element(pres);
  seen.insert(id.certificate.key());
  out.push_back(BallEntry{id, 0});

  std::size_t level_begin = 0, level_end = out.size();
  for (int len = 1; len <= radius && level_begin < level_end; ++len) {
    for (std::size_t e = level_begin; e < level_end; ++e) {
      for (int gidx = 0; gidx < k; ++gidx) {
        RationalMatrix cert = out[e].element.certificate * gen_mats[gidx];
        std::string key = cert.key();
        if (!seen.insert(key).second) continue;
        if (seen.size() > element_cap)
          throw DomainError("resource", "cayley ball exceeded element cap of " +
                                            std::to_string(element_cap));
        Word word = out[e].element.word;
        word.letters.push_back(sigma(gidx + 1));
        out.push_back(BallEntry{ElementHandle{pres, std::move(word), std::move(cert)}, len});
      }
    }
    level_begin = level_end;
    level_end = out.size();
  }
  return out;
}

}  // namespace strands
