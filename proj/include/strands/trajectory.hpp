#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "strands/coxeter.hpp"
#include "strands/error.hpp"
#include "strands/strata.hpp"
#include "strands/word.hpp"
#include "strands/wreath.hpp"

namespace strands {

// Which coincidence loci are removed from the configuration space.
enum class CoincidencePolicy { Q, Q2, Q3, Q22, Q3_22 };

inline const char* policy_name(CoincidencePolicy p) {
  switch (p) {
    case CoincidencePolicy::Q: return "Q";
    case CoincidencePolicy::Q2: return "Q2";
    case CoincidencePolicy::Q3: return "Q3";
    case CoincidencePolicy::Q22: return "Q22";
    case CoincidencePolicy::Q3_22: return "Q3_22";
  }
  return "?";
}

inline CoincidencePolicy parse_policy(const std::string& s) {
  if (s == "Q") return CoincidencePolicy::Q;
  if (s == "Q2") return CoincidencePolicy::Q2;
  if (s == "Q3") return CoincidencePolicy::Q3;
  if (s == "Q22") return CoincidencePolicy::Q22;
  if (s == "Q3_22") return CoincidencePolicy::Q3_22;
  throw DomainError("policy", "unknown coincidence policy '" + s +
                                  "' (expected Q, Q2, Q3, Q22 or Q3_22)");
}

// The policy whose allowed coincidences are exactly the ones the family's
// relations can absorb: S resolves anything, T forbids triples, F forbids
// simultaneous disjoint pairs, W forbids both.
inline CoincidencePolicy policy_for_family(Family f) {
  switch (f) {
    case Family::S: return CoincidencePolicy::Q;
    case Family::T: return CoincidencePolicy::Q3;
    case Family::F: return CoincidencePolicy::Q22;
    case Family::W: return CoincidencePolicy::Q3_22;
  }
  throw DomainError("family", "unknown family");
}

// ---------------------------------------------------------------------------
// Trajectories.  Piecewise-linear paths for N labeled particles.  Ring
// positions are unwrapped real-line lifts; winding is read from total
// displacement, the wrapped position from reduction mod the circumference.

struct Breakpoint {
  Rat t;
  Rat pos;
  bool operator==(const Breakpoint& o) const { return t == o.t && pos == o.pos; }
};

struct Trajectory {
  Geometry geometry = Geometry::Interval;
  Rat circumference = 1;                       // ring only
  std::optional<Rat> lo, hi;                   // optional declared interval bounds
  std::vector<std::vector<Breakpoint>> particles;

  Rat t_start() const { return particles.at(0).front().t; }
  Rat t_end() const { return particles.at(0).back().t; }
  int n() const { return static_cast<int>(particles.size()); }
};

inline void validate_structure(const Trajectory& traj) {
  if (traj.particles.empty())
    throw DomainError("trajectory", "trajectory has no particles");
  if (traj.geometry == Geometry::Ring && traj.circumference <= 0)
    throw DomainError("trajectory", "ring circumference must be positive");
  if (traj.lo && traj.hi && *traj.lo >= *traj.hi)
    throw DomainError("trajectory", "interval bounds are empty");
  const Rat ts = traj.particles[0].front().t;
  const Rat te = traj.particles[0].back().t;
  for (std::size_t p = 0; p < traj.particles.size(); ++p) {
    const auto& path = traj.particles[p];
    std::string who = "particle " + std::to_string(p + 1);
    if (path.size() < 2)
      throw DomainError("trajectory", who + " needs at least two breakpoints");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (!(path[i].t < path[i + 1].t))
        throw DomainError("trajectory", who + " breakpoint times must strictly increase");
    if (path.front().t != ts || path.back().t != te)
      throw DomainError("trajectory", "all particles must share start and end times");
    if (traj.geometry == Geometry::Interval)
      for (const Breakpoint& b : path) {
        if (traj.lo && b.pos < *traj.lo)
          throw DomainError("trajectory", who + " leaves the declared lower bound");
        if (traj.hi && b.pos > *traj.hi)
          throw DomainError("trajectory", who + " leaves the declared upper bound");
      }
  }
  if (ts >= te) throw DomainError("trajectory", "trajectory must have positive duration");
}

inline Trajectory make_trajectory(Geometry g,
                                  std::vector<std::vector<Breakpoint>> particles,
                                  Rat circumference = 1) {
  Trajectory traj;
  traj.geometry = g;
  traj.circumference = std::move(circumference);
  traj.particles = std::move(particles);
  validate_structure(traj);
  return traj;
}

// Exact position by linear interpolation.  t must lie within the time range.
inline Rat position_at(const std::vector<Breakpoint>& path, const Rat& t) {
  if (t < path.front().t || t > path.back().t)
    throw DomainError("trajectory", "time outside trajectory range");
  // last breakpoint with time <= t
  std::size_t i = 0;
  while (i + 1 < path.size() && path[i + 1].t <= t) ++i;
  if (path[i].t == t) return path[i].pos;
  const Breakpoint& a = path[i];
  const Breakpoint& b = path[i + 1];
  return a.pos + (b.pos - a.pos) * (t - a.t) / (b.t - a.t);
}

inline Trajectory reverse_trajectory(const Trajectory& traj) {
  Trajectory out = traj;
  Rat s = traj.t_start() + traj.t_end();
  for (auto& path : out.particles) {
    std::reverse(path.begin(), path.end());
    for (Breakpoint& b : path) b.t = s - b.t;
  }
  return out;
}

// Glue b after a.  Each particle must resume exactly where it stopped; on the
// ring the resume point is matched mod circumference and b's lift is shifted
// so the unwrapped path stays continuous.
inline Trajectory concat_trajectories(const Trajectory& a, const Trajectory& b) {
  if (a.geometry != b.geometry)
    throw DomainError("trajectory", "cannot concatenate across geometries");
  if (a.geometry == Geometry::Ring && a.circumference != b.circumference)
    throw DomainError("trajectory", "circumference mismatch in concatenation");
  if (a.n() != b.n())
    throw DomainError("trajectory", "particle count mismatch in concatenation");
  Trajectory out = a;
  Rat dt = a.t_end() - b.t_start();
  for (int p = 0; p < a.n(); ++p) {
    Rat end_pos = a.particles[p].back().pos;
    Rat start_pos = b.particles[p].front().pos;
    Rat shift = end_pos - start_pos;
    if (a.geometry == Geometry::Ring) {
      if (wrap_position(shift, a.circumference) != 0)
        throw DomainError("trajectory",
                          "particle " + std::to_string(p + 1) +
                              " does not resume at its stopping point");
    } else if (shift != 0) {
      throw DomainError("trajectory",
                        "particle " + std::to_string(p + 1) +
                            " does not resume at its stopping point");
    }
    for (std::size_t i = 1; i < b.particles[p].size(); ++i) {
      const Breakpoint& bp = b.particles[p][i];
      out.particles[p].push_back(Breakpoint{bp.t + dt, bp.pos + shift});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON.  {"geometry": "interval" | {"ring": {"circumference": "p/q"}},
//         "particles": [[{"t": "0", "pos": "1/4"}, ...], ...]}
// Breakpoints also accepted as two-element string arrays ["t", "pos"].
// All numerics must be rational strings; raw JSON numbers are rejected
// because floats cannot express the exact arithmetic contract.

namespace detail {

inline Rat json_rational(const nlohmann::json& j, const char* what) {
  if (!j.is_string())
    throw DomainError("parse", std::string(what) +
                                   " must be a rational string like \"3/2\"");
  return parse_rational(j.get<std::string>());
}

}  // namespace detail

inline Trajectory trajectory_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("parse", "trajectory must be a JSON object");
  Trajectory traj;
  if (!j.contains("geometry")) throw DomainError("parse", "trajectory lacks geometry");
  const auto& g = j["geometry"];
  if (g.is_string() && g.get<std::string>() == "interval") {
    traj.geometry = Geometry::Interval;
  } else if (g.is_object() && g.contains("interval")) {
    traj.geometry = Geometry::Interval;
    const auto& iv = g["interval"];
    if (iv.contains("min")) traj.lo = detail::json_rational(iv["min"], "interval min");
    if (iv.contains("max")) traj.hi = detail::json_rational(iv["max"], "interval max");
  } else if (g.is_object() && g.contains("ring")) {
    traj.geometry = Geometry::Ring;
    if (!g["ring"].contains("circumference"))
      throw DomainError("parse", "ring geometry lacks circumference");
    traj.circumference = detail::json_rational(g["ring"]["circumference"],
                                               "circumference");
  } else {
    throw DomainError("parse", "geometry must be \"interval\" or {\"ring\": ...}");
  }
  if (!j.contains("particles") || !j["particles"].is_array())
    throw DomainError("parse", "trajectory lacks a particles array");
  for (const auto& path : j["particles"]) {
    if (!path.is_array())
      throw DomainError("parse", "each particle must be an array of breakpoints");
    std::vector<Breakpoint> bps;
    for (const auto& bp : path) {
      Breakpoint b;
      if (bp.is_object()) {
        if (!bp.contains("t") || !bp.contains("pos"))
          throw DomainError("parse", "breakpoint object needs \"t\" and \"pos\"");
        b.t = detail::json_rational(bp["t"], "breakpoint time");
        b.pos = detail::json_rational(bp["pos"], "breakpoint position");
      } else if (bp.is_array() && bp.size() == 2) {
        b.t = detail::json_rational(bp[0], "breakpoint time");
        b.pos = detail::json_rational(bp[1], "breakpoint position");
      } else {
        throw DomainError("parse",
                          "breakpoint must be {\"t\",\"pos\"} or a [t, pos] pair");
      }
      bps.push_back(b);
    }
    traj.particles.push_back(std::move(bps));
  }
  validate_structure(traj);
  return traj;
}

inline nlohmann::json trajectory_to_json(const Trajectory& traj) {
  nlohmann::json j;
  if (traj.geometry == Geometry::Ring) {
    j["geometry"] = {{"ring", {{"circumference", rat_str(traj.circumference)}}}};
  } else if (traj.lo || traj.hi) {
    nlohmann::json iv = nlohmann::json::object();
    if (traj.lo) iv["min"] = rat_str(*traj.lo);
    if (traj.hi) iv["max"] = rat_str(*traj.hi);
    j["geometry"] = {{"interval", iv}};
  } else {
    j["geometry"] = "interval";
  }
  auto parts = nlohmann::json::array();
  for (const auto& path : traj.particles) {
    auto arr = nlohmann::json::array();
    for (const Breakpoint& b : path)
      arr.push_back({{"t", rat_str(b.t)}, {"pos", rat_str(b.pos)}});
    parts.push_back(arr);
  }
  j["particles"] = parts;
  return j;
}

// ---------------------------------------------------------------------------
// Event detection.

enum class EventKind { Crossing, Tangency, CutCrossing };

struct Event {
  Rat time;
  EventKind kind = EventKind::Crossing;
  int slot = 0;                    // positional index just before the event
  int sign = 0;                    // cut crossings: +1 downward, -1 upward
  std::vector<int> participants;   // 1-based labels
  bool triple = false;             // instant-level flags
  bool double_double = false;
};

struct EventLog {
  std::vector<Event> events;
};

namespace detail {

// Zeros of a piecewise-linear function given by values on a time grid.
// Classification samples the sign at midpoints between consecutive critical
// times; a zero midpoint means the function vanishes on a whole subinterval.
struct Zero {
  Rat t;
  bool crossing = false;
  int sign_after = 0;
};

inline std::vector<Zero> scan_zeros(const std::vector<Rat>& grid,
                                    const std::vector<Rat>& vals,
                                    const char* what) {
  std::set<Rat> zero_times;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const Rat &fa = vals[i], &fb = vals[i + 1];
    if (fa == 0 && fb == 0)
      throw DomainError("degenerate",
                        std::string(what) + " vanishes on a whole interval");
    if (fa == 0) zero_times.insert(grid[i]);
    if (fa != 0 && fb != 0 && ((fa < 0) != (fb < 0))) {
      Rat t = grid[i] + (grid[i + 1] - grid[i]) * (-fa) / (fb - fa);
      zero_times.insert(t);
    }
  }
  if (vals.back() == 0) zero_times.insert(grid.back());
  if (zero_times.empty()) return {};

  // evaluate at an arbitrary time (linear within a grid cell)
  auto eval = [&](const Rat& t) -> Rat {
    std::size_t i = 0;
    while (i + 1 < grid.size() && grid[i + 1] <= t) ++i;
    if (grid[i] == t) return vals[i];
    return vals[i] +
           (vals[i + 1] - vals[i]) * (t - grid[i]) / (grid[i + 1] - grid[i]);
  };

  std::set<Rat> critical(grid.begin(), grid.end());
  critical.insert(zero_times.begin(), zero_times.end());
  std::vector<Zero> out;
  for (const Rat& t0 : zero_times) {
    auto it = critical.find(t0);
    if (it == critical.begin() || std::next(it) == critical.end())
      throw DomainError("degenerate",
                        std::string(what) + " reaches zero at the trajectory boundary");
    Rat before = eval((*std::prev(it) + t0) / 2);
    Rat after = eval((t0 + *std::next(it)) / 2);
    if (before == 0 || after == 0)
      throw DomainError("degenerate",
                        std::string(what) + " vanishes on a whole interval");
    Zero z;
    z.t = t0;
    z.crossing = (before < 0) != (after < 0);
    z.sign_after = after < 0 ? -1 : 1;
    out.push_back(z);
  }
  return out;
}

struct PairHit {
  int a = 0, b = 0;        // labels, a < b
  bool crossing = false;
  Rat wrapped_pos;         // meeting point reduced mod circumference
};

struct CutHit {
  int particle = 0;
  int sign = 0;            // +1 down (position decreasing), -1 up
};

struct Instant {
  Rat time;
  std::vector<CutHit> cuts;
  std::vector<PairHit> pairs;
  // labels at equal wrapped position, grouped; ascending position
  std::vector<std::vector<int>> clusters;
  std::vector<Rat> cluster_pos;
  bool triple = false;
  bool double_double = false;
};

struct Analysis {
  std::vector<Instant> instants;               // sorted by time
  std::vector<int> start_occ, end_occ;         // labels by ascending position
  std::vector<std::vector<int>> before_occ, after_occ;  // per instant
};

inline Rat wrapped(const Trajectory& traj, const Rat& x) {
  return traj.geometry == Geometry::Ring ? wrap_position(x, traj.circumference) : x;
}

// Occupancy (labels sorted by wrapped position) at a coincidence-free time.
inline std::vector<int> occupancy_at(const Trajectory& traj, const Rat& t) {
  std::vector<std::pair<Rat, int>> order;
  for (int p = 0; p < traj.n(); ++p)
    order.push_back({wrapped(traj, position_at(traj.particles[p], t)), p + 1});
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (order[i].first == order[i + 1].first)
      throw std::logic_error("occupancy sampled at a coincidence time");
  std::vector<int> occ;
  for (auto& [pos, label] : order) occ.push_back(label);
  return occ;
}

inline Analysis analyze(const Trajectory& traj) {
  validate_structure(traj);
  const int n = traj.n();
  const Rat ts = traj.t_start(), te = traj.t_end();
  const Rat C = traj.circumference;
  const bool ring = traj.geometry == Geometry::Ring;

  // Basepoint: distinct positions, and off the cut on the ring.
  for (const Rat& t : {ts, te}) {
    std::vector<Rat> w;
    for (int p = 0; p < n; ++p) {
      Rat x = wrapped(traj, position_at(traj.particles[p], t));
      if (ring && x == 0)
        throw DomainError("basepoint",
                          "particle " + std::to_string(p + 1) +
                              " sits on the cut at an endpoint");
      w.push_back(x);
    }
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == w[i + 1])
        throw DomainError("basepoint", "endpoint configuration has coinciding particles");
  }
  {
    std::vector<Rat> a, b;
    for (int p = 0; p < n; ++p) {
      a.push_back(wrapped(traj, position_at(traj.particles[p], ts)));
      b.push_back(wrapped(traj, position_at(traj.particles[p], te)));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw DomainError("endpoint",
                        "final configuration does not match the initial one");
  }

  // Merged time grid plus per-particle values of any linear functional.
  auto merged_grid = [&](int p, int q) {
    std::set<Rat> times;
    for (const Breakpoint& b : traj.particles[p]) times.insert(b.t);
    if (q >= 0)
      for (const Breakpoint& b : traj.particles[q]) times.insert(b.t);
    return std::vector<Rat>(times.begin(), times.end());
  };

  std::map<Rat, Instant> instants;
  auto instant_for = [&](const Rat& t) -> Instant& {
    Instant& in = instants[t];
    in.time = t;
    return in;
  };

  // Pairwise coincidences: roots of x_p - x_q - kC for all k in reach.
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      std::vector<Rat> grid = merged_grid(p, q);
      std::vector<Rat> diff;
      for (const Rat& t : grid)
        diff.push_back(position_at(traj.particles[p], t) -
                       position_at(traj.particles[q], t));
      std::string what = "separation of particles " + std::to_string(p + 1) +
                         " and " + std::to_string(q + 1);
      if (!ring) {
        for (const Zero& z : scan_zeros(grid, diff, what.c_str())) {
          PairHit hit;
          hit.a = p + 1;
          hit.b = q + 1;
          hit.crossing = z.crossing;
          hit.wrapped_pos = position_at(traj.particles[p], z.t);
          instant_for(z.t).pairs.push_back(hit);
        }
      } else {
        Rat lo = diff[0], hi = diff[0];
        for (const Rat& d : diff) {
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        for (Int k = rat_ceil(lo / C); k <= rat_floor(hi / C); ++k) {
          std::vector<Rat> shifted;
          for (const Rat& d : diff) shifted.push_back(d - Rat(k) * C);
          for (const Zero& z : scan_zeros(grid, shifted, what.c_str())) {
            PairHit hit;
            hit.a = p + 1;
            hit.b = q + 1;
            hit.crossing = z.crossing;
            hit.wrapped_pos =
                wrap_position(position_at(traj.particles[p], z.t), C);
            instant_for(z.t).pairs.push_back(hit);
          }
        }
      }
    }

  // Cut crossings: roots of x_p - mC.  The logged sign is the displacement
  // direction: +1 when the position increases through the cut.  A decreasing
  // crossing (the strand leaves the left cut edge) is the positive-winding
  // direction and compiles to z.  A graze that touches the cut without
  // crossing is invisible in the quotient and not logged.
  if (ring)
    for (int p = 0; p < n; ++p) {
      std::vector<Rat> grid = merged_grid(p, -1);
      std::vector<Rat> vals;
      for (const Rat& t : grid) vals.push_back(position_at(traj.particles[p], t));
      Rat lo = vals[0], hi = vals[0];
      for (const Rat& v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      std::string what = "particle " + std::to_string(p + 1) + " against the cut";
      for (Int m = rat_ceil(lo / C); m <= rat_floor(hi / C); ++m) {
        std::vector<Rat> shifted;
        for (const Rat& v : vals) shifted.push_back(v - Rat(m) * C);
        for (const Zero& z : scan_zeros(grid, shifted, what.c_str())) {
          if (!z.crossing) continue;
          CutHit hit;
          hit.particle = p + 1;
          hit.sign = z.sign_after;
          instant_for(z.t).cuts.push_back(hit);
        }
      }
    }

  // Cluster simultaneous coincidences by meeting point and set the flags.
  for (auto& [t, in] : instants) {
    std::map<Rat, std::set<int>> groups;
    for (const PairHit& hit : in.pairs) {
      if (ring && hit.wrapped_pos == 0)
        throw DomainError("degenerate", "particles coincide exactly on the cut");
      groups[hit.wrapped_pos].insert(hit.a);
      groups[hit.wrapped_pos].insert(hit.b);
    }
    long long disjoint_pairs = 0;
    for (auto& [pos, labels] : groups) {
      in.clusters.emplace_back(labels.begin(), labels.end());
      in.cluster_pos.push_back(pos);
      if (labels.size() >= 3) in.triple = true;
      disjoint_pairs += static_cast<long long>(labels.size()) / 2;
    }
    in.double_double = disjoint_pairs >= 2;
    if (in.cuts.size() > 1)
      throw std::logic_error("two cut crossings without a cut coincidence");
  }

  // Occupancy samples between consecutive critical times.
  std::set<Rat> timeline{ts, te};
  for (const auto& path : traj.particles)
    for (const Breakpoint& b : path) timeline.insert(b.t);
  for (const auto& [t, in] : instants) timeline.insert(t);

  Analysis out;
  out.start_occ = occupancy_at(traj, ts);
  out.end_occ = occupancy_at(traj, te);
  for (auto& [t, in] : instants) {
    auto it = timeline.find(t);
    if (it == timeline.begin() || std::next(it) == timeline.end())
      throw std::logic_error("event at the trajectory boundary");
    out.before_occ.push_back(occupancy_at(traj, (*std::prev(it) + t) / 2));
    out.after_occ.push_back(occupancy_at(traj, (t + *std::next(it)) / 2));
    out.instants.push_back(std::move(in));
  }
  return out;
}

inline int rank_of(const std::vector<int>& occ, int label) {
  for (std::size_t i = 0; i < occ.size(); ++i)
    if (occ[i] == label) return static_cast<int>(i) + 1;
  throw std::logic_error("label missing from occupancy");
}

}  // namespace detail

inline EventLog detect_events(const Trajectory& traj) {
  detail::Analysis an = detail::analyze(traj);
  EventLog log;
  for (std::size_t i = 0; i < an.instants.size(); ++i) {
    const detail::Instant& in = an.instants[i];
    const std::vector<int>& before = an.before_occ[i];
    const std::vector<int>& after = an.after_occ[i];
    for (const detail::CutHit& cut : in.cuts) {
      Event e;
      e.time = in.time;
      e.kind = EventKind::CutCrossing;
      e.sign = cut.sign;
      e.slot = cut.sign < 0 ? 1 : traj.n();
      e.participants = {cut.particle};
      e.triple = in.triple;
      e.double_double = in.double_double;
      log.events.push_back(e);
    }
    for (const std::vector<int>& cluster : in.clusters) {
      // one event per coinciding pair, ordered by pre-event ranks
      std::vector<std::pair<int, int>> by_rank;
      for (int label : cluster)
        by_rank.push_back({detail::rank_of(before, label), label});
      std::sort(by_rank.begin(), by_rank.end());
      for (std::size_t a = 0; a < by_rank.size(); ++a)
        for (std::size_t b = a + 1; b < by_rank.size(); ++b) {
          Event e;
          e.time = in.time;
          int la = by_rank[a].second, lb = by_rank[b].second;
          bool flipped = (detail::rank_of(after, la) > detail::rank_of(after, lb));
          e.kind = flipped ? EventKind::Crossing : EventKind::Tangency;
          e.slot = by_rank[a].first;
          e.participants = {la, lb};
          e.triple = in.triple;
          e.double_double = in.double_double;
          log.events.push_back(e);
        }
    }
  }
  return log;
}

// ---------------------------------------------------------------------------
// Policy checking and compilation.

struct PolicyViolation {
  Rat time;
  std::string what;
  std::vector<int> participants;
};

struct ValidationReport {
  std::vector<PolicyViolation> violations;   // excluded-locus touches
  std::vector<std::string> structural;       // malformed-trajectory diagnostics
  bool ok() const { return violations.empty() && structural.empty(); }
};

namespace detail {

inline std::vector<PolicyViolation> policy_violations(const Analysis& an,
                                                      CoincidencePolicy policy) {
  std::vector<PolicyViolation> out;
  for (const Instant& in : an.instants) {
    if (policy == CoincidencePolicy::Q2) {
      for (const std::vector<int>& c : in.clusters)
        out.push_back({in.time, "coincidence excluded under Q2", c});
      continue;
    }
    bool ban_triple = policy == CoincidencePolicy::Q3 ||
                      policy == CoincidencePolicy::Q3_22;
    bool ban_dd = policy == CoincidencePolicy::Q22 ||
                  policy == CoincidencePolicy::Q3_22;
    if (ban_triple)
      for (const std::vector<int>& c : in.clusters)
        if (c.size() >= 3)
          out.push_back({in.time, "three-body coincidence", c});
    if (ban_dd && in.double_double) {
      std::vector<int> all;
      for (const std::vector<int>& c : in.clusters)
        all.insert(all.end(), c.begin(), c.end());
      out.push_back({in.time, "simultaneous disjoint pair coincidences", all});
    }
  }
  return out;
}

}  // namespace detail

inline ValidationReport validate(const Trajectory& traj, CoincidencePolicy policy) {
  ValidationReport report;
  try {
    detail::Analysis an = detail::analyze(traj);
    report.violations = detail::policy_violations(an, policy);
  } catch (const DomainError& e) {
    report.structural.push_back(std::string(e.kind()) + ": " + e.what());
  }
  return report;
}

struct CompiledLoop {
  Presentation pres;
  CoincidencePolicy policy = CoincidencePolicy::Q;
  Word word;                                   // letters in event order
  EventLog log;
  bool pure = false;
  std::optional<ElementHandle> interval_element;
  std::optional<WreathElement> ring_element;
};

inline CompiledLoop compile_loop(const Trajectory& traj, const Presentation& pres,
                                 CoincidencePolicy policy) {
  if (policy != policy_for_family(pres.family))
    throw DomainError("policy", std::string("policy ") + policy_name(policy) +
                                    " is not the one family " +
                                    family_name(pres.family) + " presents");
  if (traj.n() != pres.n)
    throw DomainError("trajectory",
                      "trajectory has " + std::to_string(traj.n()) +
                          " particles but the presentation expects " +
                          std::to_string(pres.n));
  if (traj.geometry != pres.geometry)
    throw DomainError("geometry", "trajectory geometry does not match the presentation");

  detail::Analysis an = detail::analyze(traj);
  std::vector<PolicyViolation> bad = detail::policy_violations(an, policy);
  if (!bad.empty()) {
    std::string msg = bad.front().what + " at t = " + rat_str(bad.front().time) +
                      " (particles";
    for (int p : bad.front().participants) msg += " " + std::to_string(p);
    throw DomainError("policy", msg + ")");
  }

  CompiledLoop out;
  out.pres = pres;
  out.policy = policy;
  out.word.pres = pres;

  std::vector<int> occ = an.start_occ;
  for (std::size_t i = 0; i < an.instants.size(); ++i) {
    const detail::Instant& in = an.instants[i];
    const std::vector<int>& before = an.before_occ[i];
    const std::vector<int>& after = an.after_occ[i];
    if (occ != before) throw std::logic_error("occupancy drifted between events");
    if (!in.cuts.empty() && !in.clusters.empty())
      throw DomainError("degenerate",
                        "cut crossing simultaneous with a coincidence at t = " +
                            rat_str(in.time));

    if (!in.cuts.empty()) {
      const detail::CutHit& cut = in.cuts.front();
      if (cut.sign < 0) {
        if (occ.front() != cut.particle)
          throw std::logic_error("downward cut crosser is not in the lowest slot");
        out.word.letters.push_back(zeta_letter(1));
        std::rotate(occ.begin(), occ.begin() + 1, occ.end());
      } else {
        if (occ.back() != cut.particle)
          throw std::logic_error("upward cut crosser is not in the highest slot");
        out.word.letters.push_back(zeta_letter(-1));
        std::rotate(occ.begin(), occ.end() - 1, occ.end());
      }
    } else {
      // clusters arrive in ascending meeting position; resolve each by
      // bubble sort so a full triple reversal reads s_i s_{i+1} s_i
      for (const std::vector<int>& cluster : in.clusters) {
        std::vector<std::pair<int, int>> members;  // (before rank, label)
        for (int label : cluster)
          members.push_back({detail::rank_of(before, label), label});
        std::sort(members.begin(), members.end());
        int base = members.front().first;
        for (std::size_t m = 0; m < members.size(); ++m)
          if (members[m].first != base + static_cast<int>(m))
            throw std::logic_error("coincidence cluster is not rank-contiguous");
        std::vector<int> block;
        for (auto& [rank, label] : members) block.push_back(label);
        auto target_rank = [&](int label) { return detail::rank_of(after, label); };
        bool moved = true;
        while (moved) {
          moved = false;
          for (std::size_t m = 0; m + 1 < block.size(); ++m)
            if (target_rank(block[m]) > target_rank(block[m + 1])) {
              std::swap(block[m], block[m + 1]);
              out.word.letters.push_back(sigma(base + static_cast<int>(m)));
              moved = true;
            }
        }
        for (std::size_t m = 0; m < block.size(); ++m)
          occ[static_cast<std::size_t>(base) - 1 + m] = block[m];
      }
    }
    if (occ != after) throw std::logic_error("emission disagrees with sampled occupancy");
  }
  if (occ != an.end_occ) throw std::logic_error("final occupancy mismatch");

  out.pure = (an.end_occ == an.start_occ);
  out.log = detect_events(traj);
  if (pres.geometry == Geometry::Ring)
    out.ring_element = wreath_from_word(out.word);
  else
    out.interval_element = normal_form_shortlex(out.word);
  return out;
}

}  // namespace strands
