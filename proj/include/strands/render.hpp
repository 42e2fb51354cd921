#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strands/rational.hpp"
#include "strands/wreath.hpp"

// Strand diagrams, read bottom to top, one time-slice band per letter.
// Crossings are plain transversal intersections; every generator squares to
// the identity, so there is no over/under to draw.  On the ring the diagram
// is the cut-open strip: dashed verticals mark the two copies of the cut, a
// t-letter walks one strand out through one edge and back in the other, and a
// z-letter drifts the whole configuration one slot with a single cut pass.

namespace strands {

enum class DiagramStyle { Ascii, Svg };

struct DiagramSpec {
  Word word;
  DiagramStyle style = DiagramStyle::Ascii;
  bool ring_cut = false;  // draw the dashed cut verticals
  int max_rows = 2000;    // canvas cap, in band rows
};

namespace render_detail {

// One vertical band of the diagram.  'x' = crossing at slot, 'z' = whole-ring
// drift (exp gives the direction), 't' = one strand winding once around
// (slot = its rank, exp = direction), '.' = straight filler.
struct Band {
  int rows;
  char kind;
  int slot;
  int exp;
};

inline std::vector<Band> make_bands(const Word& w, int n) {
  std::vector<Band> out;
  for (const Letter& l : w.letters) {
    switch (l.kind) {
      case LetterKind::Sigma:
        out.push_back({1, 'x', l.index, 1});
        break;
      case LetterKind::Zeta:
        out.push_back({1, 'z', 0, l.exp});
        break;
      case LetterKind::Trans:
        out.push_back({n, 't', l.index, l.exp});
        break;
    }
  }
  if (out.empty()) out.push_back({1, '.', 0, 0});
  return out;
}

// A word that passes the cut needs the cut drawn no matter what the caller
// asked for; the flag only opts pure-sigma ring diagrams in.
inline bool wants_cut(const Word& w, bool ring_cut) {
  if (ring_cut) return true;
  for (const Letter& l : w.letters)
    if (l.kind != LetterKind::Sigma) return true;
  return false;
}

inline int total_rows(const std::vector<Band>& bands) {
  int r = 0;
  for (const Band& b : bands) r += b.rows;
  return r;
}

// The crossing sequence a band contributes, bottom to top, as engine letters.
// A t-band reads as its weave: cross inward to the cut edge, pass the cut,
// cross back out to the starting rank.
inline void append_band_letters(const Band& b, int n, std::vector<Letter>& out) {
  switch (b.kind) {
    case 'x':
      out.push_back(sigma(b.slot));
      break;
    case 'z':
      out.push_back(zeta_letter(b.exp));
      break;
    case 't':
      if (b.exp > 0) {
        for (int j = b.slot - 1; j >= 1; --j) out.push_back(sigma(j));
        out.push_back(zeta_letter(1));
        for (int j = n - 1; j >= b.slot; --j) out.push_back(sigma(j));
      } else {
        for (int j = b.slot; j <= n - 1; ++j) out.push_back(sigma(j));
        out.push_back(zeta_letter(-1));
        for (int j = 1; j <= b.slot - 1; ++j) out.push_back(sigma(j));
      }
      break;
    default:
      break;
  }
}

}  // namespace render_detail

// ---------------------------------------------------------------------------
// ASCII.

namespace render_detail {

// Lane i sits at column base + 2(i-1); cut columns (ring only) flank the
// lanes at distance 2.
struct AsciiGrid {
  int n;
  bool cut;
  int base() const { return cut ? 2 : 0; }
  int lane(int i) const { return base() + 2 * (i - 1); }
  int mid(int slot) const { return base() + 2 * slot - 1; }
  int right_gap() const { return lane(n) + 1; }
  int width() const { return cut ? lane(n) + 3 : lane(n) + 1; }

  std::string straight() const {
    std::string row(width(), ' ');
    if (cut) {
      row[0] = ':';
      row[width() - 1] = ':';
    }
    for (int i = 1; i <= n; ++i) row[lane(i)] = '|';
    return row;
  }
};

}  // namespace render_detail

inline std::string render_ascii(const Word& w, bool ring_cut, int max_rows) {
  int n = w.pres.n;
  render_detail::AsciiGrid grid{n, render_detail::wants_cut(w, ring_cut)};
  auto bands = render_detail::make_bands(w, n);
  if (render_detail::total_rows(bands) > max_rows)
    throw DomainError("canvas", "diagram needs " +
                                    std::to_string(render_detail::total_rows(bands)) +
                                    " rows; the canvas cap is " + std::to_string(max_rows));

  std::vector<std::string> rows;  // bottom to top
  rows.push_back(grid.straight());
  auto push_cross = [&](int slot, bool keep_lanes) {
    std::string row = grid.straight();
    if (!keep_lanes) {
      row[grid.lane(slot)] = ' ';
      row[grid.lane(slot + 1)] = ' ';
    }
    row[grid.mid(slot)] = 'X';
    rows.push_back(std::move(row));
  };
  auto push_cut = [&](int exp) {
    std::string row = grid.straight();
    if (exp > 0) {
      row[1] = '<';
      row[grid.right_gap()] = '/';
    } else {
      row[grid.right_gap()] = '>';
      row[1] = '\\';
    }
    rows.push_back(std::move(row));
  };

  for (const render_detail::Band& b : bands) {
    switch (b.kind) {
      case 'x':
        push_cross(b.slot, false);
        break;
      case 'z':
        push_cut(b.exp);
        break;
      case 't':
        // the moving strand weaves through standing ones, so lanes stay drawn
        if (b.exp > 0) {
          for (int j = b.slot - 1; j >= 1; --j) push_cross(j, true);
          push_cut(1);
          for (int j = n - 1; j >= b.slot; --j) push_cross(j, true);
        } else {
          for (int j = b.slot; j <= n - 1; ++j) push_cross(j, true);
          push_cut(-1);
          for (int j = 1; j <= b.slot - 1; ++j) push_cross(j, true);
        }
        break;
      default:
        rows.push_back(grid.straight());
        break;
    }
    rows.push_back(grid.straight());
  }

  std::string out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out += *it;
    out += '\n';
  }
  return out;
}

// Reads the crossing/cut glyph sequence back off an ASCII diagram, bottom to
// top, as a word over the presentation's letters.
inline Word ascii_read_back(const std::string& doc, const Presentation& pres) {
  render_detail::AsciiGrid grid{pres.n, false};
  std::vector<std::string> rows;
  std::string cur;
  for (char c : doc) {
    if (c == '\n') {
      rows.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) rows.push_back(cur);

  bool cut = !rows.empty() && !rows.front().empty() && rows.front()[0] == ':';
  grid.cut = cut;

  Word out{pres, {}};
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    const std::string& row = *it;
    auto xpos = row.find('X');
    if (xpos != std::string::npos) {
      int slot = (static_cast<int>(xpos) - grid.base() + 1) / 2;
      if (slot < 1 || slot > pres.n - 1)
        throw DomainError("diagram", "crossing glyph at an impossible column");
      out.letters.push_back(sigma(slot));
    } else if (row.find('<') != std::string::npos) {
      out.letters.push_back(zeta_letter(1));
    } else if (row.find('>') != std::string::npos) {
      out.letters.push_back(zeta_letter(-1));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG.

namespace render_detail {

constexpr int kLaneStep = 40;
constexpr int kRowStep = 40;
constexpr int kMargin = 20;
constexpr int kCutGap = 30;

inline const char* palette(int label) {
  static const char* colors[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
  return colors[(label - 1) % 8];
}

struct SvgLayout {
  int n;
  bool cut;
  int rows;
  int lane(int i) const { return kMargin + (cut ? kCutGap : 0) + (i - 1) * kLaneStep; }
  int cut_left() const { return kMargin; }
  int cut_right() const { return lane(n) + kCutGap; }
  int width() const { return (cut ? cut_right() : lane(n)) + kMargin; }
  int height() const { return 2 * kMargin + rows * kRowStep; }
};

struct Point {
  int x, y;
};

}  // namespace render_detail

inline std::string render_svg(const Word& w, bool ring_cut, int max_rows) {
  using namespace render_detail;
  int n = w.pres.n;
  auto bands = make_bands(w, n);
  bool cut = wants_cut(w, ring_cut);
  SvgLayout lay{n, cut, total_rows(bands)};
  if (lay.rows > max_rows)
    throw DomainError("canvas", "diagram needs " + std::to_string(lay.rows) +
                                    " rows; the canvas cap is " + std::to_string(max_rows));

  // occupancy: occ[r-1] = label at rank r; every strand is a list of pieces,
  // each piece a polyline, split whenever the strand passes the cut.
  std::vector<int> occ(n);
  for (int i = 0; i < n; ++i) occ[i] = i + 1;
  std::vector<std::vector<std::vector<Point>>> pieces(n + 1);
  for (int i = 1; i <= n; ++i)
    pieces[i].push_back({{lay.lane(i), lay.height() - kMargin}});

  auto extend = [&](int label, Point p) {
    auto& piece = pieces[label].back();
    if (!piece.empty() && piece.back().x == p.x && piece.back().y == p.y) return;
    piece.push_back(p);
  };
  auto break_piece = [&](int label, Point restart) {
    pieces[label].push_back({restart});
  };

  int done = 0;
  for (const Band& b : bands) {
    int y_bot = lay.height() - kMargin - done * kRowStep;
    int y_top = y_bot - b.rows * kRowStep;
    int y_mid = y_bot - b.rows * kRowStep / 2;
    done += b.rows;
    switch (b.kind) {
      case 'x': {
        int a = occ[b.slot - 1], c = occ[b.slot];
        extend(a, {lay.lane(b.slot), y_bot});
        extend(a, {lay.lane(b.slot + 1), y_top});
        extend(c, {lay.lane(b.slot + 1), y_bot});
        extend(c, {lay.lane(b.slot), y_top});
        std::swap(occ[b.slot - 1], occ[b.slot]);
        break;
      }
      case 'z': {
        if (b.exp > 0) {
          int mover = occ.front();
          extend(mover, {lay.lane(1), y_bot});
          extend(mover, {lay.cut_left(), y_mid});
          break_piece(mover, {lay.cut_right(), y_mid});
          extend(mover, {lay.lane(n), y_top});
          for (int r = 2; r <= n; ++r) {
            extend(occ[r - 1], {lay.lane(r), y_bot});
            extend(occ[r - 1], {lay.lane(r - 1), y_top});
          }
          std::rotate(occ.begin(), occ.begin() + 1, occ.end());
        } else {
          int mover = occ.back();
          extend(mover, {lay.lane(n), y_bot});
          extend(mover, {lay.cut_right(), y_mid});
          break_piece(mover, {lay.cut_left(), y_mid});
          extend(mover, {lay.lane(1), y_top});
          for (int r = 1; r <= n - 1; ++r) {
            extend(occ[r - 1], {lay.lane(r), y_bot});
            extend(occ[r - 1], {lay.lane(r + 1), y_top});
          }
          std::rotate(occ.begin(), occ.end() - 1, occ.end());
        }
        break;
      }
      case 't': {
        int mover = occ[b.slot - 1];
        extend(mover, {lay.lane(b.slot), y_bot});
        if (b.exp > 0) {
          extend(mover, {lay.cut_left(), y_mid});
          break_piece(mover, {lay.cut_right(), y_mid});
        } else {
          extend(mover, {lay.cut_right(), y_mid});
          break_piece(mover, {lay.cut_left(), y_mid});
        }
        extend(mover, {lay.lane(b.slot), y_top});
        break;
      }
      default:
        break;
    }
  }
  for (int r = 1; r <= n; ++r) extend(occ[r - 1], {lay.lane(r), kMargin});

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(lay.width()) + "\" height=\"" + std::to_string(lay.height()) +
         "\" viewBox=\"0 0 " + std::to_string(lay.width()) + " " +
         std::to_string(lay.height()) + "\">\n";
  svg += "<rect width=\"" + std::to_string(lay.width()) + "\" height=\"" +
         std::to_string(lay.height()) + "\" fill=\"white\"/>\n";
  if (cut) {
    for (int x : {lay.cut_left(), lay.cut_right()})
      svg += "<line x1=\"" + std::to_string(x) + "\" y1=\"" + std::to_string(kMargin) +
             "\" x2=\"" + std::to_string(x) + "\" y2=\"" +
             std::to_string(lay.height() - kMargin) +
             "\" stroke=\"#999999\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (int label = 1; label <= n; ++label)
    for (const auto& piece : pieces[label]) {
      svg += "<polyline points=\"";
      for (std::size_t k = 0; k < piece.size(); ++k) {
        if (k) svg += ' ';
        svg += std::to_string(piece[k].x) + "," + std::to_string(piece[k].y);
      }
      svg += "\" fill=\"none\" stroke=\"";
      svg += palette(label);
      svg += "\" stroke-width=\"2\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    }
  svg += "</svg>\n";
  return svg;
}

inline std::string render(const DiagramSpec& spec) {
  return spec.style == DiagramStyle::Ascii
             ? render_ascii(spec.word, spec.ring_cut, spec.max_rows)
             : render_svg(spec.word, spec.ring_cut, spec.max_rows);
}

// A wreath element renders through its canonical word: winding letters in
// index order, then the normal form of the strand part.
inline Word wreath_canonical_word(const WreathElement& e) {
  Word w{e.pres, {}};
  for (int i = 1; i <= e.pres.n; ++i) {
    long long c = e.winding[i - 1];
    for (long long k = 0; k < (c < 0 ? -c : c); ++k)
      w.letters.push_back(trans(i, c > 0 ? 1 : -1));
  }
  for (const Letter& l : e.strand.word.letters) w.letters.push_back(l);
  return w;
}

// ---------------------------------------------------------------------------
// Geometric read-back from an SVG document.  Exact rational segment
// intersection; nothing about the writer's band structure is assumed beyond
// the cut convention, so this is an independent route from picture to word.

namespace render_detail {

struct Seg {
  Rat x0, y0, x1, y1;  // y0 > y1 (earlier time first)
  int piece;
};

struct SvgDoc {
  std::vector<std::vector<std::pair<Rat, Rat>>> pieces;
  std::optional<Rat> cut_left, cut_right;
  Rat y_bottom, y_top;
};

inline SvgDoc parse_svg(const std::string& doc) {
  SvgDoc out;
  std::vector<Rat> cut_x;
  std::size_t pos = 0;
  while ((pos = doc.find("<line ", pos)) != std::string::npos) {
    std::size_t end = doc.find("/>", pos);
    std::string tag = doc.substr(pos, end - pos);
    if (tag.find("stroke-dasharray") != std::string::npos) {
      std::size_t xa = tag.find("x1=\"") + 4;
      cut_x.push_back(Rat(std::stoll(tag.substr(xa, tag.find('"', xa) - xa))));
    }
    pos = end;
  }
  std::sort(cut_x.begin(), cut_x.end());
  if (cut_x.size() == 2) {
    out.cut_left = cut_x[0];
    out.cut_right = cut_x[1];
  }

  pos = 0;
  while ((pos = doc.find("<polyline points=\"", pos)) != std::string::npos) {
    pos += 18;
    std::size_t end = doc.find('"', pos);
    std::string body = doc.substr(pos, end - pos);
    std::vector<std::pair<Rat, Rat>> pts;
    std::size_t i = 0;
    while (i < body.size()) {
      std::size_t comma = body.find(',', i);
      std::size_t space = body.find(' ', comma);
      if (space == std::string::npos) space = body.size();
      pts.emplace_back(Rat(std::stoll(body.substr(i, comma - i))),
                       Rat(std::stoll(body.substr(comma + 1, space - comma - 1))));
      i = space + 1;
    }
    out.pieces.push_back(std::move(pts));
    pos = end;
  }
  if (out.pieces.empty()) throw DomainError("diagram", "no strands found in the SVG");

  bool first = true;
  for (const auto& piece : out.pieces)
    for (const auto& [x, y] : piece) {
      if (first || y > out.y_bottom) out.y_bottom = y;
      if (first || y < out.y_top) out.y_top = y;
      first = false;
    }
  return out;
}

// x-position of a piece at height y, if its y-range covers it.
inline std::optional<Rat> piece_x_at(const std::vector<std::pair<Rat, Rat>>& piece, const Rat& y) {
  for (std::size_t k = 0; k + 1 < piece.size(); ++k) {
    const auto& [xa, ya] = piece[k];
    const auto& [xb, yb] = piece[k + 1];
    if (ya == yb) continue;
    Rat lo = std::min(ya, yb), hi = std::max(ya, yb);
    if (y < lo || y > hi) continue;
    return xa + (xb - xa) * (y - ya) / (yb - ya);
  }
  return std::nullopt;
}

struct SvgEvent {
  Rat y;
  bool cut;
  int sign;  // cut only
  Rat x;     // crossing only
};

}  // namespace render_detail

inline Word svg_read_back(const std::string& doc, const Presentation& pres) {
  using namespace render_detail;
  SvgDoc d = parse_svg(doc);

  std::vector<Seg> segs;
  for (std::size_t p = 0; p < d.pieces.size(); ++p)
    for (std::size_t k = 0; k + 1 < d.pieces[p].size(); ++k) {
      auto [xa, ya] = d.pieces[p][k];
      auto [xb, yb] = d.pieces[p][k + 1];
      if (ya >= yb)
        segs.push_back({xa, ya, xb, yb, static_cast<int>(p)});
      else
        segs.push_back({xb, yb, xa, ya, static_cast<int>(p)});
    }

  std::vector<SvgEvent> events;
  // transversal crossings between segments of distinct pieces
  for (std::size_t a = 0; a < segs.size(); ++a)
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      if (segs[a].piece == segs[b].piece) continue;
      const Seg& s = segs[a];
      const Seg& t = segs[b];
      // solve s.p + u*(s.q-s.p) = t.p + v*(t.q-t.p) for u, v in (0,1)
      Rat dx1 = s.x1 - s.x0, dy1 = s.y1 - s.y0;
      Rat dx2 = t.x1 - t.x0, dy2 = t.y1 - t.y0;
      Rat det = dx1 * dy2 - dy1 * dx2;
      if (det == 0) continue;
      Rat rx = t.x0 - s.x0, ry = t.y0 - s.y0;
      Rat u = (rx * dy2 - ry * dx2) / det;
      Rat v = (rx * dy1 - ry * dx1) / det;
      if (u <= 0 || u >= 1 || v <= 0 || v >= 1) continue;
      events.push_back({s.y0 + u * dy1, false, 0, s.x0 + u * dx1});
    }

  // cut passes: piece endpoints resting on a cut line away from the frame
  if (d.cut_left) {
    std::vector<std::pair<Rat, Rat>> touches;  // (y, x)
    std::vector<int> below;                    // does the piece extend earlier?
    for (const auto& piece : d.pieces) {
      if (piece.size() < 2) continue;
      for (std::size_t k : {std::size_t{0}, piece.size() - 1}) {
        const auto& [x, y] = piece[k];
        if ((x == *d.cut_left || x == *d.cut_right) && y != d.y_bottom && y != d.y_top) {
          Rat extent = y;
          for (const auto& [px, py] : piece) extent = std::max(extent, py);
          touches.emplace_back(y, x);
          below.push_back(extent > y ? 1 : 0);
        }
      }
    }
    for (std::size_t i = 0; i < touches.size(); ++i) {
      if (!below[i]) continue;  // keep only the outgoing endpoint of each pass
      events.push_back({touches[i].first, true,
                        touches[i].second == *d.cut_left ? 1 : -1, Rat(0)});
    }
  }

  std::sort(events.begin(), events.end(), [](const SvgEvent& a, const SvgEvent& b) {
    return a.y > b.y;  // larger y = earlier time
  });

  Word out{pres, {}};
  for (const SvgEvent& e : events) {
    if (e.cut) {
      out.letters.push_back(zeta_letter(e.sign));
      continue;
    }
    int left = 0;
    for (const auto& piece : d.pieces) {
      auto x = piece_x_at(piece, e.y);
      if (x && *x < e.x) ++left;
    }
    int slot = left + 1;
    if (slot < 1 || slot > pres.n - 1)
      throw DomainError("diagram", "crossing read back at an impossible rank");
    out.letters.push_back(sigma(slot));
  }
  return out;
}

}  // namespace strands
