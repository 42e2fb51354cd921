#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>

#include "strands/error.hpp"

namespace strands {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts "p", "-p", "p/q", "-p/q" with decimal digits.  cpp_rational keeps
// values reduced with a positive denominator, so parsed values are canonical.
inline Rat parse_rational(const std::string& text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Rat {
    throw ParseError("bad rational '" + text + "': " + why, i);
  };

  if (text.empty()) return fail("empty");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) return fail("expected digits");
  Int num(text.substr(num_start, i - num_start));
  Int den = 1;
  if (i < text.size()) {
    if (text[i] != '/') return fail("unexpected character");
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) return fail("bad denominator");
    den = Int(text.substr(den_start));
    if (den == 0) return fail("zero denominator");
  }
  if (negative) num = -num;
  return Rat(num, den);
}

// Compact form: "3", "-1/2".  Denominator 1 is omitted.
inline std::string rat_str(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Explicit form: "3/1", "-1/2".  Used where the schema pins num/den pairs.
inline std::string rat_str_explicit(const Rat& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline Int rat_floor(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  Int quot = num / den;
  if (num < 0 && quot * den != num) --quot;
  return quot;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

}  // namespace strands
