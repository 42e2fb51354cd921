#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "strands/error.hpp"
#include "strands/presentation.hpp"
#include "strands/rational.hpp"

namespace strands {

// ---------------------------------------------------------------------------
// Integer partitions and stratum combinatorics.

// All partitions of n in reverse-lexicographic order: [n] first, [1,...,1]
// last.  Parts are non-increasing within each partition.
inline std::vector<std::vector<int>> partitions(int n) {
  if (n < 1) throw DomainError("partition", "partitions(n) needs n >= 1");
  if (n > 64) throw DomainError("resource", "partition enumeration capped at n = 64");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Descending-first recursion yields reverse-lex order directly.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

struct StratumInfo {
  std::vector<int> partition;
  long long h = 0;                // path-connected components of the stratum
  long long codim = 0;
  long long stabilizer_order = 0;
  long long orbit_size = 0;
};

inline long long factorial_ll(int n) {
  long long out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

// d is the dimension of the underlying one-particle space; the artifact's
// geometries have d = 1 but the formulas are uniform in d.
inline StratumInfo stratum_info(const std::vector<int>& partition, int d) {
  if (d < 1) throw DomainError("stratum", "base dimension d must be >= 1");
  if (partition.empty()) throw DomainError("partition", "empty partition");
  int n = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i] < 1) throw DomainError("partition", "parts must be positive");
    if (i + 1 < partition.size() && partition[i] < partition[i + 1])
      throw DomainError("partition", "parts must be non-increasing");
    n += partition[i];
  }
  if (n > 20) throw DomainError("resource", "stratum counts overflow past n = 20");

  StratumInfo info;
  info.partition = partition;
  info.stabilizer_order = 1;
  for (int part : partition) {
    info.stabilizer_order *= factorial_ll(part);
    info.codim += static_cast<long long>(part - 1) * d;
  }
  info.orbit_size = factorial_ll(n) / info.stabilizer_order;
  info.h = info.orbit_size;  // both count N!/|S_partition|
  return info;
}

// ---------------------------------------------------------------------------
// Configurations: N labeled points on the interval or the ring.

struct Configuration {
  Geometry geometry = Geometry::Interval;
  Rat circumference = 1;        // ring only
  std::vector<Rat> positions;   // ring values normalized into [0, C)
};

inline Rat wrap_position(const Rat& x, const Rat& circumference) {
  Rat q = x / circumference;
  return x - Rat(rat_floor(q)) * circumference;
}

inline Configuration make_configuration(Geometry geometry, std::vector<Rat> positions,
                                        const Rat& circumference = Rat(1)) {
  Configuration c;
  c.geometry = geometry;
  if (geometry == Geometry::Ring) {
    if (circumference <= 0)
      throw DomainError("configuration", "ring circumference must be positive");
    c.circumference = circumference;
    for (Rat& x : positions) x = wrap_position(x, circumference);
  }
  if (positions.empty()) throw DomainError("configuration", "no positions given");
  c.positions = std::move(positions);
  return c;
}

struct ClassifiedConfiguration {
  std::vector<int> partition;
  std::vector<std::vector<int>> groups;  // 1-based labels; coinciding points share a group
  bool in_delta2 = false;   // some pair coincides
  bool in_delta3 = false;   // some triple coincides
  bool in_delta22 = false;  // two disjoint pairs coincide (one group of 4 qualifies)
};

inline ClassifiedConfiguration classify_configuration(const Configuration& c) {
  std::map<Rat, std::vector<int>> by_position;
  for (std::size_t i = 0; i < c.positions.size(); ++i)
    by_position[c.positions[i]].push_back(static_cast<int>(i) + 1);

  ClassifiedConfiguration out;
  for (auto& [pos, labels] : by_position) out.groups.push_back(labels);
  std::sort(out.groups.begin(), out.groups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  int disjoint_pairs = 0;
  for (const auto& g : out.groups) {
    out.partition.push_back(static_cast<int>(g.size()));
    if (g.size() >= 2) out.in_delta2 = true;
    if (g.size() >= 3) out.in_delta3 = true;
    disjoint_pairs += static_cast<int>(g.size()) / 2;
  }
  out.in_delta22 = disjoint_pairs >= 2;
  return out;
}

// Sector of a coincidence-free configuration: the interval keeps the full
// ordering permutation; the ring only remembers cyclic order, canonicalized
// by rotating label 1 to the front.
inline std::vector<int> ordering_sector(const Configuration& c) {
  std::vector<int> order(c.positions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return c.positions[a] < c.positions[b]; });
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (c.positions[order[i]] == c.positions[order[i + 1]])
      throw DomainError("sector", "configuration lies on a coincidence locus; no sector");

  std::vector<int> labels(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) labels[i] = order[i] + 1;
  if (c.geometry == Geometry::Ring) {
    auto one = std::find(labels.begin(), labels.end(), 1);
    std::rotate(labels.begin(), one, labels.end());
  }
  return labels;
}

// ---------------------------------------------------------------------------
// JSON form: {"geometry":"interval"|{"ring":{"circumference":"p/q"}},
//             "positions":["p/q",...]}.

inline Configuration configuration_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("geometry") || !j.contains("positions"))
    throw DomainError("json", "configuration needs geometry and positions");
  Geometry geometry;
  Rat circumference = 1;
  const auto& g = j.at("geometry");
  if (g.is_string() && g.get<std::string>() == "interval") {
    geometry = Geometry::Interval;
  } else if (g.is_object() && g.contains("ring")) {
    geometry = Geometry::Ring;
    const auto& ring = g.at("ring");
    if (!ring.is_object() || !ring.contains("circumference") ||
        !ring.at("circumference").is_string())
      throw DomainError("json", "ring geometry needs a circumference string");
    circumference = parse_rational(ring.at("circumference").get<std::string>());
  } else {
    throw DomainError("json", "geometry must be \"interval\" or {\"ring\":{...}}");
  }
  std::vector<Rat> positions;
  for (const auto& p : j.at("positions")) {
    if (!p.is_string())
      throw DomainError("json", "positions must be exact rational strings, not numbers");
    positions.push_back(parse_rational(p.get<std::string>()));
  }
  return make_configuration(geometry, std::move(positions), circumference);
}

inline nlohmann::json configuration_to_json(const Configuration& c) {
  nlohmann::json j;
  if (c.geometry == Geometry::Interval)
    j["geometry"] = "interval";
  else
    j["geometry"] = {{"ring", {{"circumference", rat_str(c.circumference)}}}};
  auto arr = nlohmann::json::array();
  for (const Rat& p : c.positions) arr.push_back(rat_str(p));
  j["positions"] = arr;
  return j;
}

}  // namespace strands
