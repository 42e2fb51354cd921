#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "strands/error.hpp"
#include "strands/presentation.hpp"
#include "strands/rational.hpp"
#include "strands/snf.hpp"
#include "strands/word.hpp"

namespace strands {

// ---------------------------------------------------------------------------
// Abelianization.  Generators are the s_i (plus t_i on the ring); relations
// abelianize to rows: s_i^2 = 1 gives 2e_i; the three-letter relation (where
// present: families S, F) gives e_i - e_{i+1}; commutation relations vanish;
// the ring's s_i t_i s_i = t_{i+1} gives e_{t_i} - e_{t_{i+1}}.  z is a
// defined element, not a generator, so it contributes no column.

struct RelationMatrix {
  IntMatrix m;                           // one row per abelianized relation
  std::vector<std::string> generators;   // column labels: "s1".."t1"..
};

inline RelationMatrix relation_matrix(const Presentation& pres) {
  RelationMatrix rel;
  int n = pres.n;
  int s_cols = n - 1;
  int t_cols = pres.geometry == Geometry::Ring ? n : 0;
  for (int i = 1; i <= s_cols; ++i) rel.generators.push_back("s" + std::to_string(i));
  for (int i = 1; i <= t_cols; ++i) rel.generators.push_back("t" + std::to_string(i));

  std::vector<std::vector<Int>> rows;
  for (int i = 0; i < s_cols; ++i) {
    std::vector<Int> row(s_cols + t_cols, 0);
    row[i] = 2;
    rows.push_back(row);
  }
  if (pres.family == Family::S || pres.family == Family::F) {
    for (int i = 0; i + 1 < s_cols; ++i) {
      std::vector<Int> row(s_cols + t_cols, 0);
      row[i] = 1;
      row[i + 1] = -1;
      rows.push_back(row);
    }
  }
  for (int i = 0; i + 1 < t_cols; ++i) {
    std::vector<Int> row(s_cols + t_cols, 0);
    row[s_cols + i] = 1;
    row[s_cols + i + 1] = -1;
    rows.push_back(row);
  }

  rel.m = IntMatrix(rows.size(), s_cols + t_cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rel.generators.size(); ++c) rel.m.at(r, c) = rows[r][c];
  return rel;
}

struct AbelianInvariants {
  long long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors >= 2, divisibility chain
};

struct AbelianData {
  RelationMatrix rel;
  SmithResult snf;
  AbelianInvariants inv;
};

inline AbelianData abelianization(const Presentation& pres) {
  AbelianData data;
  data.rel = relation_matrix(pres);
  data.snf = smith_normal_form(data.rel.m);
  data.inv.free_rank =
      static_cast<long long>(data.rel.generators.size()) - data.snf.rank;
  for (std::size_t i = 0; i < data.snf.rank; ++i)
    if (data.snf.diag[i] >= 2) data.inv.torsion.push_back(data.snf.diag[i]);
  return data;
}

// Plain text like "Z x Z2 x Z2" ("1" for the trivial group).
inline std::string abelian_to_string(const AbelianInvariants& inv) {
  std::string out;
  for (long long i = 0; i < inv.free_rank; ++i) out += out.empty() ? "Z" : " x Z";
  for (const Int& d : inv.torsion) {
    if (!out.empty()) out += " x ";
    out += "Z" + d.str();
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Characters.  In the coordinates y = V^T x the quotient splits as
// (+)_i Z/d_i (+) Z^(c-rank), so a torsion character picks a_i in [0, d_i)
// per torsion coordinate and the free part is a tuple of integer coefficients
// in front of continuous phase parameters.  Per generator j both parts read
// off row j of V.

struct GeneratorPhase {
  // e^(2 pi i root) with root in [0,1); plus sum_f coeff_f * phi_f for the
  // continuous parameters phi_f.
  Rat root = 0;
  std::vector<Int> free_coeffs;
};

struct Character {
  std::vector<GeneratorPhase> phases;  // indexed like CharacterSet::generators
};

struct CharacterSet {
  Presentation pres;
  std::vector<std::string> generators;
  long long free_rank = 0;
  std::vector<Character> characters;  // all torsion characters
};

inline Rat mod_one(const Rat& q) {
  return q - Rat(rat_floor(q));
}

inline CharacterSet enumerate_characters(const Presentation& pres) {
  AbelianData data = abelianization(pres);
  const IntMatrix& v = data.snf.v;
  std::size_t cols = data.rel.generators.size();
  std::size_t rank = data.snf.rank;

  std::vector<std::size_t> torsion_idx;
  for (std::size_t i = 0; i < rank; ++i)
    if (data.snf.diag[i] >= 2) torsion_idx.push_back(i);
  std::vector<std::size_t> free_idx;
  for (std::size_t i = rank; i < cols; ++i) free_idx.push_back(i);

  // Free columns are only determined up to sign; fix the first nonzero
  // coefficient positive so output is canonical.
  std::vector<int> free_sign(free_idx.size(), 1);
  for (std::size_t f = 0; f < free_idx.size(); ++f)
    for (std::size_t j = 0; j < cols; ++j) {
      const Int& coeff = v.at(j, free_idx[f]);
      if (coeff != 0) {
        if (coeff < 0) free_sign[f] = -1;
        break;
      }
    }

  Int count = 1;
  for (std::size_t i : torsion_idx) count *= data.snf.diag[i];
  if (count > 65536)
    throw DomainError("resource", "torsion character count " + count.str() +
                                      " exceeds enumeration cap");

  CharacterSet set;
  set.pres = pres;
  set.generators = data.rel.generators;
  set.free_rank = data.inv.free_rank;

  std::vector<Int> assignment(torsion_idx.size(), 0);
  for (;;) {
    Character chi;
    for (std::size_t j = 0; j < cols; ++j) {
      GeneratorPhase phase;
      Rat sum = 0;
      for (std::size_t k = 0; k < torsion_idx.size(); ++k)
        sum += Rat(assignment[k] * v.at(j, torsion_idx[k]), data.snf.diag[torsion_idx[k]]);
      phase.root = mod_one(sum);
      for (std::size_t f = 0; f < free_idx.size(); ++f)
        phase.free_coeffs.push_back(free_sign[f] * v.at(j, free_idx[f]));
      chi.phases.push_back(std::move(phase));
    }
    set.characters.push_back(std::move(chi));

    // Odometer over torsion assignments.
    std::size_t k = 0;
    while (k < assignment.size()) {
      assignment[k] += 1;
      if (assignment[k] < data.snf.diag[torsion_idx[k]]) break;
      assignment[k] = 0;
      ++k;
    }
    if (k == assignment.size()) break;
  }
  return set;
}

// Exponent sums of a word over the abelianized generator columns; z expands
// to t_1 s_1 .. s_{n-1}.
inline std::vector<Int> exponent_sums(const Word& w, const CharacterSet& set) {
  std::vector<Int> sums(set.generators.size(), 0);
  int s_cols = w.pres.n - 1;
  auto add_s = [&](int i, long long e) { sums[i - 1] += e; };
  auto add_t = [&](int i, long long e) {
    if (s_cols + i - 1 >= static_cast<int>(sums.size()))
      throw DomainError("word", "translation letter outside character generator set");
    sums[s_cols + i - 1] += e;
  };
  for (const Letter& l : w.letters) {
    switch (l.kind) {
      case LetterKind::Sigma: add_s(l.index, 1); break;
      case LetterKind::Trans: add_t(l.index, l.exp); break;
      case LetterKind::Zeta:
        add_t(1, l.exp);
        for (int i = 1; i <= w.pres.n - 1; ++i) add_s(i, l.exp);
        break;
    }
  }
  return sums;
}

struct PhaseValue {
  Rat root = 0;                 // torsion phase mod 1
  std::vector<Int> free_part;   // coefficient per free parameter
};

inline PhaseValue character_value(const CharacterSet& set, const Character& chi,
                                  const Word& w) {
  std::vector<Int> sums = exponent_sums(w, set);
  PhaseValue out;
  out.free_part.assign(set.free_rank, Int(0));
  for (std::size_t j = 0; j < sums.size(); ++j) {
    if (sums[j] == 0) continue;
    out.root += Rat(sums[j]) * chi.phases[j].root;
    for (std::size_t f = 0; f < out.free_part.size(); ++f)
      out.free_part[f] += sums[j] * chi.phases[j].free_coeffs[f];
  }
  out.root = mod_one(out.root);
  return out;
}

// Serialization: [{"generator":"s1","phase":{"root_of_unity":[p,q]}}, ...].
// A generator with continuous dependence gets {"free_param": f} when its
// phase is exactly the f-th parameter (torsion part zero, single +1 coeff);
// anything mixed falls back to an explicit combined object.
inline nlohmann::json character_to_json(const CharacterSet& set, const Character& chi) {
  auto arr = nlohmann::json::array();
  for (std::size_t j = 0; j < set.generators.size(); ++j) {
    const GeneratorPhase& p = chi.phases[j];
    nlohmann::json phase;
    auto root_pair = [&]() {
      return nlohmann::json::array(
          {boost::multiprecision::numerator(p.root).convert_to<long long>(),
           boost::multiprecision::denominator(p.root).convert_to<long long>()});
    };
    int nonzero_free = 0;
    std::size_t free_at = 0;
    for (std::size_t f = 0; f < p.free_coeffs.size(); ++f)
      if (p.free_coeffs[f] != 0) {
        ++nonzero_free;
        free_at = f;
      }
    if (nonzero_free == 0) {
      phase["root_of_unity"] = root_pair();
    } else if (p.root == 0 && nonzero_free == 1 && p.free_coeffs[free_at] == 1) {
      phase["free_param"] = free_at;
    } else {
      phase["root_of_unity"] = root_pair();
      auto coeffs = nlohmann::json::array();
      for (const Int& c : p.free_coeffs) coeffs.push_back(c.convert_to<long long>());
      phase["free_coeffs"] = coeffs;
    }
    arr.push_back({{"generator", set.generators[j]}, {"phase", phase}});
  }
  return arr;
}

}  // namespace strands
