#pragma once

#include <string>

#include "strands/error.hpp"

namespace strands {

// The four generator families, named by which defining relations they keep.
// S has both the braid relation and commutation of distant generators, T
// drops the braid relation, F drops commutation, W drops both.  All four keep
// the involution relation s_i^2 = 1, which is what separates them from braid
// groups; asking for family B is a reportable error, not a silent fallback.
enum class Family { S, T, F, W };

enum class Geometry { Interval, Ring };

inline Family parse_family(const std::string& text) {
  if (text == "S") return Family::S;
  if (text == "T") return Family::T;
  if (text == "F") return Family::F;
  if (text == "W") return Family::W;
  if (text == "B")
    throw DomainError("family",
                      "family B generators are not involutions; this library "
                      "only handles groups with s_i^2 = 1 (S, T, F, W)");
  throw DomainError("family", "unknown family '" + text + "' (expected S, T, F or W)");
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::S: return "S";
    case Family::T: return "T";
    case Family::F: return "F";
    case Family::W: return "W";
  }
  return "?";
}

inline Geometry parse_geometry(const std::string& text) {
  if (text == "interval") return Geometry::Interval;
  if (text == "ring") return Geometry::Ring;
  throw DomainError("geometry", "unknown geometry '" + text + "' (expected interval or ring)");
}

inline std::string geometry_name(Geometry g) {
  return g == Geometry::Interval ? "interval" : "ring";
}

struct Presentation {
  Family family = Family::S;
  int n = 2;  // number of particles; generators s_1..s_{n-1}, plus t_1..t_n on the ring
  Geometry geometry = Geometry::Interval;

  bool operator==(const Presentation& o) const {
    return family == o.family && n == o.n && geometry == o.geometry;
  }
  bool operator!=(const Presentation& o) const { return !(*this == o); }
};

inline Presentation make_presentation(Family family, int n, Geometry geometry) {
  if (n < 2) throw DomainError("presentation", "need at least 2 particles, got " + std::to_string(n));
  if (n > 64) throw DomainError("presentation", "particle count cap is 64, got " + std::to_string(n));
  return Presentation{family, n, geometry};
}

// Most operations care about family and strand count but not geometry.
inline void require_same_group(const Presentation& a, const Presentation& b,
                               const char* what) {
  if (a.family != b.family || a.n != b.n)
    throw DomainError("presentation",
                      std::string(what) + ": presentations disagree (" +
                          family_name(a.family) + std::to_string(a.n) + " vs " +
                          family_name(b.family) + std::to_string(b.n) + ")");
}

}  // namespace strands
