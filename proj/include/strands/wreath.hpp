#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "strands/coxeter.hpp"
#include "strands/error.hpp"
#include "strands/presentation.hpp"
#include "strands/word.hpp"

namespace strands {

// ---------------------------------------------------------------------------
// Ring exchange groups are winding-vector extensions: every element is a pair
// (winding, strand) with winding in Z^n and strand in the interval group on
// the same generators.  Multiplication permutes the right factor's winding:
//
//   (t, g)(t', g') = (t + g.t', g g')      where (g.t')[pi(g)(j)] = t'[j]
//
// so conjugation moves translation indices along the strand permutation,
// g t_j g^{-1} = t_{pi(g)(j)}.  Windings count signed passes through the
// ring's cut point; they stay machine integers (anything near overflow would
// need ~10^18 letters of input first).

struct WreathElement {
  Presentation pres;                // ring geometry
  std::vector<long long> winding;   // index j-1 holds the t_j coordinate
  ElementHandle strand;             // element of the interval group

  bool operator==(const WreathElement& o) const {
    return pres.family == o.pres.family && pres.n == o.pres.n &&
           winding == o.winding && strand == o.strand;
  }
  bool operator!=(const WreathElement& o) const { return !(*this == o); }
};

inline void require_ring(const Presentation& pres, const char* what) {
  if (pres.geometry != Geometry::Ring)
    throw DomainError("geometry", std::string(what) + " needs ring geometry");
}

inline Presentation interval_twin(const Presentation& pres) {
  return Presentation{pres.family, pres.n, Geometry::Interval};
}

inline WreathElement wreath_identity(const Presentation& pres) {
  require_ring(pres, "wreath_identity");
  return WreathElement{pres, std::vector<long long>(pres.n, 0),
                       identity_element(interval_twin(pres))};
}

// Applies the placement rule (g.t)[pi(j)] = t[j].
inline std::vector<long long> permute_winding(const Permutation& pi,
                                              const std::vector<long long>& t) {
  std::vector<long long> out(t.size(), 0);
  for (std::size_t j = 0; j < t.size(); ++j) out[pi.apply(static_cast<int>(j))] = t[j];
  return out;
}

inline WreathElement wreath_multiply(const WreathElement& a, const WreathElement& b) {
  require_same_group(a.pres, b.pres, "wreath_multiply");
  Permutation pi = permutation_image(a.strand.word);
  std::vector<long long> winding = a.winding;
  std::vector<long long> moved = permute_winding(pi, b.winding);
  for (std::size_t j = 0; j < winding.size(); ++j) winding[j] += moved[j];
  ElementHandle strand = normal_form_shortlex(word_concat(a.strand.word, b.strand.word));
  return WreathElement{a.pres, std::move(winding), std::move(strand)};
}

inline WreathElement wreath_inverse(const WreathElement& a) {
  Permutation pi = permutation_image(a.strand.word);
  // (t, g)^-1 = (-g^-1.t, g^-1); with the placement rule that reads
  // out[j] = -t[pi(j)].
  std::vector<long long> winding(a.winding.size(), 0);
  for (std::size_t j = 0; j < winding.size(); ++j)
    winding[j] = -a.winding[pi.apply(static_cast<int>(j))];
  ElementHandle strand = normal_form_shortlex(word_inverse(a.strand.word));
  return WreathElement{a.pres, std::move(winding), std::move(strand)};
}

inline bool wreath_equal(const WreathElement& a, const WreathElement& b) {
  require_same_group(a.pres, b.pres, "wreath_equal");
  return a.winding == b.winding && a.strand.certificate == b.strand.certificate;
}

// Folds a ring word into its pair form in one pass.  The strand permutation
// is tracked incrementally so each t-letter lands at the right index, and the
// strand word is normalized once at the end.  z-letters expand through
// z = t_1 s_1 .. s_{n-1}.
inline WreathElement wreath_from_word(const Word& w) {
  require_ring(w.pres, "wreath_from_word");
  int n = w.pres.n;
  std::vector<long long> winding(n, 0);
  Word strand_raw{interval_twin(w.pres), {}};
  Permutation pi = Permutation::identity(n);
  Permutation cycle = Permutation::cycle_up(n);

  for (const Letter& l : w.letters) {
    switch (l.kind) {
      case LetterKind::Sigma:
        strand_raw.letters.push_back(l);
        pi = pi * Permutation::transposition(n, l.index - 1, l.index);
        break;
      case LetterKind::Trans:
        winding[pi.apply(l.index - 1)] += l.exp;
        break;
      case LetterKind::Zeta:
        if (l.exp > 0) {
          winding[pi.apply(0)] += 1;
          for (int i = 1; i <= n - 1; ++i) strand_raw.letters.push_back(sigma(i));
          pi = pi * cycle;
        } else {
          winding[pi.apply(n - 1)] -= 1;
          for (int i = n - 1; i >= 1; --i) strand_raw.letters.push_back(sigma(i));
          pi = pi * cycle.inverse();
        }
        break;
    }
  }
  return WreathElement{w.pres, std::move(winding), normal_form_shortlex(strand_raw)};
}

inline bool is_pure(const WreathElement& e) {
  return permutation_image(e.strand.word).is_identity();
}

inline long long total_winding(const WreathElement& e) {
  long long sum = 0;
  for (long long t : e.winding) sum += t;
  return sum;
}

// The affine subgroup is the kernel of total winding; on the ring it is the
// subgroup of loops whose net drift around the ring vanishes.
inline bool in_affine_subgroup(const WreathElement& e) { return total_winding(e) == 0; }

inline bool in_affine_subgroup(const Word& w) {
  return in_affine_subgroup(wreath_from_word(w));
}

// ---------------------------------------------------------------------------
// Distinguished elements.

// s_1 .. s_{n-2} s_{n-1} s_{n-2} .. s_1: carries strand 1 over all others and
// back, i.e. the long exchange through the far end.
inline Word long_exchange_word_ascending(const Presentation& pres) {
  Word w{pres, {}};
  for (int i = 1; i <= pres.n - 1; ++i) w.letters.push_back(sigma(i));
  for (int i = pres.n - 2; i >= 1; --i) w.letters.push_back(sigma(i));
  return w;
}

// Mirror form s_{n-1} .. s_2 s_1 s_2 .. s_{n-1}.  Equal to the ascending form
// in family S; inequivalent in T and F for n >= 4, which is why both spellings
// are exposed.
inline Word long_exchange_word_descending(const Presentation& pres) {
  Word w{pres, {}};
  for (int i = pres.n - 1; i >= 1; --i) w.letters.push_back(sigma(i));
  for (int i = 2; i <= pres.n - 1; ++i) w.letters.push_back(sigma(i));
  return w;
}

// sigma_0 = t_1 sigma_N t_1^{-1}: the exchange of strands 1 and n through the
// cut.  Its pair form is (e_1 - e_n, long exchange) in every family.
inline WreathElement cut_exchange(const Presentation& pres) {
  require_ring(pres, "cut_exchange");
  Word w{pres, {}};
  w.letters.push_back(trans(1, 1));
  Word core = long_exchange_word_ascending(pres);
  w.letters.insert(w.letters.end(), core.letters.begin(), core.letters.end());
  w.letters.push_back(trans(1, -1));
  return wreath_from_word(w);
}

// zeta = t_1 s_1 .. s_{n-1} = (e_1, ascending sweep): everyone drifts down one
// slot and the bottom strand wraps through the cut to the top.
inline WreathElement drift(const Presentation& pres) {
  require_ring(pres, "drift");
  return wreath_from_word(Word{pres, {zeta_letter(1)}});
}

inline WreathElement wreath_from_text(const std::string& text, const Presentation& pres) {
  return wreath_from_word(parse_word(text, pres));
}

// ---------------------------------------------------------------------------
// Affine relation report.  For family S on the ring, the cut exchange
// completes s_1..s_{n-1} to a cyclic generator set a_0..a_{n-1} satisfying the
// affine symmetric relations, with zeta rotating the set and zeta^n central.

struct AffineRelationCheck {
  std::string relation;
  bool holds = false;
};

struct AffineReport {
  Presentation pres;
  std::vector<AffineRelationCheck> checks;
  bool all_hold = true;
};

inline AffineReport verify_affine_presentation(int n) {
  if (n < 3)
    throw DomainError("presentation",
                      "affine relation check needs n >= 3 (cyclic adjacency is "
                      "degenerate below that)");
  Presentation pres = make_presentation(Family::S, n, Geometry::Ring);
  AffineReport report{pres, {}, true};

  std::vector<WreathElement> a;
  a.push_back(cut_exchange(pres));  // a_0
  for (int i = 1; i <= n - 1; ++i)
    a.push_back(wreath_from_word(Word{pres, {sigma(i)}}));
  WreathElement z = drift(pres);
  WreathElement zn = wreath_identity(pres);
  for (int i = 0; i < n; ++i) zn = wreath_multiply(zn, z);
  WreathElement id = wreath_identity(pres);

  auto record = [&](std::string name, bool ok) {
    report.checks.push_back(AffineRelationCheck{std::move(name), ok});
    if (!ok) report.all_hold = false;
  };
  auto name_of = [&](int i) { return "a" + std::to_string(i); };

  for (int i = 0; i < n; ++i)
    record(name_of(i) + "^2 = 1",
           wreath_equal(wreath_multiply(a[i], a[i]), id));

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool adjacent = (j - i == 1) || (i == 0 && j == n - 1);
      WreathElement ab = wreath_multiply(a[i], a[j]);
      WreathElement ba = wreath_multiply(a[j], a[i]);
      if (adjacent) {
        record(name_of(i) + " " + name_of(j) + " " + name_of(i) + " = " +
                   name_of(j) + " " + name_of(i) + " " + name_of(j),
               wreath_equal(wreath_multiply(ab, a[i]), wreath_multiply(ba, a[j])));
      } else {
        record(name_of(i) + " " + name_of(j) + " = " + name_of(j) + " " + name_of(i),
               wreath_equal(ab, ba));
      }
    }

  WreathElement z_inv = wreath_inverse(z);
  for (int i = 0; i < n; ++i) {
    WreathElement conj = wreath_multiply(wreath_multiply(z, a[i]), z_inv);
    record("z " + name_of(i) + " z^-1 = " + name_of((i + 1) % n),
           wreath_equal(conj, a[(i + 1) % n]));
  }

  // zeta^n is the full translation t_1 .. t_n; check that and centrality.
  {
    Word all_t{pres, {}};
    for (int i = 1; i <= n; ++i) all_t.letters.push_back(trans(i, 1));
    record("z^" + std::to_string(n) + " = t1 .. t" + std::to_string(n),
           wreath_equal(zn, wreath_from_word(all_t)));
    bool central = true;
    for (int i = 0; i < n; ++i)
      central = central && wreath_equal(wreath_multiply(zn, a[i]),
                                        wreath_multiply(a[i], zn));
    record("z^" + std::to_string(n) + " central", central);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cayley balls on the ring, over generators s_1..s_{n-1} and t_1^±..t_n^±.

struct WreathBallEntry {
  WreathElement element;
  int length = 0;
};

inline std::string wreath_key(const WreathElement& e) {
  std::string key;
  for (long long t : e.winding) {
    key += std::to_string(t);
    key += ',';
  }
  key += '|';
  key += e.strand.certificate.key();
  return key;
}

inline std::vector<WreathBallEntry> wreath_ball(const Presentation& pres, int radius,
                                                std::size_t element_cap = 1'000'000) {
  require_ring(pres, "wreath_ball");
  if (radius < 0) throw DomainError("ball", "radius must be nonnegative");
  std::vector<WreathElement> gens;
  for (int i = 1; i <= pres.n - 1; ++i)
    gens.push_back(wreath_from_word(Word{pres, {sigma(i)}}));
  for (int i = 1; i <= pres.n; ++i) {
    gens.push_back(wreath_from_word(Word{pres, {trans(i, 1)}}));
    gens.push_back(wreath_from_word(Word{pres, {trans(i, -1)}}));
  }

  std::vector<WreathBallEntry> out;
  std::set<std::string> seen;
  WreathElement id = wreath_identity(pres);
  seen.insert(wreath_key(id));
  out.push_back(WreathBallEntry{id, 0});

  std::size_t level_begin = 0, level_end = out.size();
  for (int len = 1; len <= radius && level_begin < level_end; ++len) {
    for (std::size_t e = level_begin; e < level_end; ++e)
      for (const WreathElement& g : gens) {
        WreathElement next = wreath_multiply(out[e].element, g);
        if (!seen.insert(wreath_key(next)).second) continue;
        if (seen.size() > element_cap)
          throw DomainError("resource", "ring ball exceeded element cap of " +
                                            std::to_string(element_cap));
        out.push_back(WreathBallEntry{std::move(next), len});
      }
    level_begin = level_end;
    level_end = out.size();
  }
  return out;
}

}  // namespace strands
