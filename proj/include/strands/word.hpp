#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "strands/error.hpp"
#include "strands/presentation.hpp"

namespace strands {

// ---------------------------------------------------------------------------
// Permutations of {0..n-1}, stored as image tables.

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {}

  static Permutation identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    return Permutation(std::move(img));
  }

  static Permutation transposition(int n, int a, int b) {
    Permutation p = identity(n);
    p.img_[a] = b;
    p.img_[b] = a;
    return p;
  }

  // i -> i+1 cyclically (0-based); the image of the ascending generator sweep.
  static Permutation cycle_up(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    return Permutation(std::move(img));
  }

  int n() const { return static_cast<int>(img_.size()); }
  int apply(int i) const { return img_[i]; }

  // (a * b)(x) = a(b(x)); the right factor acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    std::vector<int> img(b.img_.size());
    for (std::size_t i = 0; i < b.img_.size(); ++i) img[i] = a.img_[b.img_[i]];
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<int> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = static_cast<int>(i);
    return Permutation(std::move(img));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != static_cast<int>(i)) return false;
    return true;
  }

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  // One-line notation over 1-based points, for printing.
  std::vector<int> one_line() const {
    std::vector<int> out(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
    return out;
  }

 private:
  std::vector<int> img_;
};

// ---------------------------------------------------------------------------
// Words.  Letters are exchange generators s_i, ring translations t_i, or the
// ring drift letter z.  s-letters are involutions so they carry no sign;
// t and z letters carry exponent +1 or -1.

enum class LetterKind { Sigma, Trans, Zeta };

struct Letter {
  LetterKind kind = LetterKind::Sigma;
  int index = 1;  // 1-based; s: 1..n-1, t: 1..n, z: unused (kept at 0)
  int exp = 1;    // +1 or -1; always +1 for Sigma

  bool operator==(const Letter& o) const {
    return kind == o.kind && index == o.index && exp == o.exp;
  }
};

struct Word {
  Presentation pres;
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

inline Letter sigma(int i) { return Letter{LetterKind::Sigma, i, 1}; }
inline Letter trans(int i, int exp = 1) { return Letter{LetterKind::Trans, i, exp}; }
inline Letter zeta_letter(int exp = 1) { return Letter{LetterKind::Zeta, 0, exp}; }

inline void check_letter(const Letter& l, const Presentation& pres, std::size_t at) {
  switch (l.kind) {
    case LetterKind::Sigma:
      if (l.index < 1 || l.index > pres.n - 1)
        throw ParseError("s-index out of range 1.." + std::to_string(pres.n - 1), at);
      break;
    case LetterKind::Trans:
      if (pres.geometry != Geometry::Ring)
        throw ParseError("translation letters need ring geometry", at);
      if (l.index < 1 || l.index > pres.n)
        throw ParseError("t-index out of range 1.." + std::to_string(pres.n), at);
      break;
    case LetterKind::Zeta:
      if (pres.geometry != Geometry::Ring)
        throw ParseError("the z letter needs ring geometry", at);
      break;
  }
}

inline Word make_word(const Presentation& pres, std::vector<Letter> letters) {
  for (auto& l : letters) {
    check_letter(l, pres, 0);
    if (l.kind == LetterKind::Sigma) l.exp = 1;
  }
  return Word{pres, std::move(letters)};
}

// Grammar: word = item*; item = gen ("^" "-"? digits)?; gen = "s" digits
// | "t" digits | "z".  Items are whitespace separated.  Exponents expand to
// repeated letters; s^-k collapses to s^k since s-letters square to 1.
inline Word parse_word(const std::string& text, const Presentation& pres) {
  Word out{pres, {}};
  std::size_t i = 0;
  auto read_digits = [&](const char* what) -> long {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw ParseError(std::string("expected ") + what, start);
    if (i - start > 6) throw ParseError("number too large", start);
    return std::stol(text.substr(start, i - start));
  };

  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t item_start = i;
    char c = text[i];
    Letter letter;
    if (c == 's' || c == 't') {
      ++i;
      long idx = read_digits("generator index");
      letter.kind = c == 's' ? LetterKind::Sigma : LetterKind::Trans;
      letter.index = static_cast<int>(idx);
    } else if (c == 'z') {
      ++i;
      letter.kind = LetterKind::Zeta;
      letter.index = 0;
    } else {
      throw ParseError("expected a generator (s<i>, t<i> or z)", i);
    }

    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && text[i] == '-') {
        neg = true;
        ++i;
      }
      std::size_t exp_at = i;
      long mag = read_digits("exponent");
      if (mag == 0) throw ParseError("exponent must be nonzero", exp_at);
      exponent = neg ? -mag : mag;
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      throw ParseError("unexpected character after item", i);

    check_letter(letter, pres, item_start);
    long reps = exponent < 0 ? -exponent : exponent;
    int sign = exponent < 0 ? -1 : 1;
    for (long r = 0; r < reps; ++r) {
      Letter l = letter;
      l.exp = letter.kind == LetterKind::Sigma ? 1 : sign;
      out.letters.push_back(l);
    }
  }
  return out;
}

// Uncompressed text: one item per letter, exponents only as ^-1.
inline std::string word_to_text(const Word& w) {
  std::string out;
  for (const Letter& l : w.letters) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case LetterKind::Sigma: out += 's' + std::to_string(l.index); break;
      case LetterKind::Trans: out += 't' + std::to_string(l.index); break;
      case LetterKind::Zeta: out += 'z'; break;
    }
    if (l.kind != LetterKind::Sigma && l.exp < 0) out += "^-1";
  }
  return out;
}

// Cancels adjacent inverse pairs until none remain: s_i s_i, t_i^+ t_i^-,
// z^+ z^- (either order).  Stack pass; letters never re-associate, so one
// sweep suffices.
inline Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  for (const Letter& l : w.letters) {
    if (!stack.empty()) {
      const Letter& top = stack.back();
      bool cancels = false;
      if (top.kind == l.kind) {
        if (l.kind == LetterKind::Sigma)
          cancels = top.index == l.index;
        else if (l.kind == LetterKind::Trans)
          cancels = top.index == l.index && top.exp == -l.exp;
        else
          cancels = top.exp == -l.exp;
      }
      if (cancels) {
        stack.pop_back();
        continue;
      }
    }
    stack.push_back(l);
  }
  return Word{w.pres, std::move(stack)};
}

inline Permutation letter_permutation(const Letter& l, int n) {
  switch (l.kind) {
    case LetterKind::Sigma:
      return Permutation::transposition(n, l.index - 1, l.index);
    case LetterKind::Trans:
      return Permutation::identity(n);
    case LetterKind::Zeta: {
      // z folds to t_1 s_1 .. s_{n-1}; translations vanish, the sweep remains.
      Permutation c = Permutation::cycle_up(n);
      return l.exp > 0 ? c : c.inverse();
    }
  }
  return Permutation::identity(n);
}

// Image in the symmetric group.  Composition order matches evaluation of the
// word left to right: the last letter acts first on points.
inline Permutation permutation_image(const Word& w) {
  Permutation r = Permutation::identity(w.pres.n);
  for (const Letter& l : w.letters) r = r * letter_permutation(l, w.pres.n);
  return r;
}

inline bool is_pure(const Word& w) { return permutation_image(w).is_identity(); }

inline Word word_inverse(const Word& w) {
  Word out{w.pres, {}};
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Letter l = *it;
    if (l.kind != LetterKind::Sigma) l.exp = -l.exp;
    out.letters.push_back(l);
  }
  return out;
}

inline Word word_concat(const Word& a, const Word& b) {
  require_same_group(a.pres, b.pres, "concat");
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

}  // namespace strands
