// SPDX-License-Identifier: MIT
// ASCII and SVG rendering of assemblies and point sets.
#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "tam/core.hpp"
#include "tam/fractal.hpp"
#include "tam/library.hpp"

namespace tam {

enum class RenderFormat { svg, ascii };
enum class ColorBy { tile_group, tile_id, attachment_order };

struct RenderSpec {
  RenderFormat format = RenderFormat::ascii;
  Window window{0, 0, 15, 15};
  ColorBy color_by = ColorBy::tile_group;
  int cell = 12;  // svg pixels per lattice cell
};

inline RenderFormat parse_render_format(const std::string& s) {
  if (s == "svg") return RenderFormat::svg;
  if (s == "ascii") return RenderFormat::ascii;
  throw Error(ErrorCode::parse_error, "unknown render format '" + s + "'");
}

inline ColorBy parse_color_by(const std::string& s) {
  if (s == "tile-group") return ColorBy::tile_group;
  if (s == "tile-id") return ColorBy::tile_id;
  if (s == "attachment-order") return ColorBy::attachment_order;
  throw Error(ErrorCode::parse_error, "unknown color mode '" + s + "'");
}

struct Cell {
  std::string group;
  std::string id;
  std::size_t order = 0;
  std::optional<TileType> tile;  // drawn with glue marks when present
};

struct Canvas {
  std::map<Pos, Cell> cells;
  std::set<Pos> marks;  // highlighted sites such as pumping escapes
  std::size_t max_order = 0;
};

inline Canvas canvas_from_assembly(const Assembly& a, const std::map<Pos, std::size_t>& order = {}) {
  Canvas c;
  for (const auto& [p, t] : a.placement()) {
    const TileType& tt = a.tileset()[t];
    Cell cell{tile_group(tt), tt.id, 0, tt};
    if (auto it = order.find(p); it != order.end()) cell.order = it->second;
    c.max_order = std::max(c.max_order, cell.order);
    c.cells.emplace(p, std::move(cell));
  }
  return c;
}

inline Canvas canvas_from_sequence(const AssemblySequence& seq) {
  return canvas_from_assembly(seq.result(), seq.order());
}

inline Canvas canvas_from_pointset(const PointSet& s, const std::string& group = "point") {
  Canvas c;
  for (Pos p : s) c.cells.emplace(p, Cell{group, group, 0, std::nullopt});
  return c;
}

// Stage n of the laced triangle with each point tagged by its fiber family.
inline Canvas canvas_from_laced_families(int n) {
  Canvas c;
  const std::pair<const char*, PointSet> fam[] = {
      {"sierpinski", sierpinski(n)}, {"cap", caps(n)}, {"counter", counters(n)}, {"test", tests(n)}};
  for (const auto& [name, pts] : fam)
    for (Pos p : pts) c.cells.emplace(p, Cell{name, name, 0, std::nullopt});
  return c;
}

namespace render_detail {

inline char group_glyph(const std::string& g, std::map<std::string, char>& extra) {
  static const std::map<std::string, char> known{
      {"boundary", 'B'}, {"bar", '|'},     {"cap", 'C'},  {"counter", 'N'}, {"test", 'T'},
      {"sierpinski", '#'}, {"point", '#'}, {"seed", 'o'}, {"vertical", '|'}, {"horizontal", '-'}};
  if (auto it = known.find(g); it != known.end()) return it->second;
  if (auto it = extra.find(g); it != extra.end()) return it->second;
  const char next = static_cast<char>('a' + extra.size() % 26);
  extra.emplace(g, next);
  return next;
}

inline std::string hex_color(unsigned r, unsigned g, unsigned b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r & 255u, g & 255u, b & 255u);
  return buf;
}

// Stable color for a string: FNV-1a hash folded into a pastel range.
inline std::string string_color(const std::string& s) {
  static const std::map<std::string, std::string> known{
      {"boundary", "#4a4a4a"}, {"bar", "#2f6fb0"},     {"sierpinski", "#2f6fb0"}, {"point", "#2f6fb0"},
      {"cap", "#d98c1f"},      {"counter", "#3c9d4e"}, {"test", "#a23ca8"}};
  if (auto it = known.find(s); it != known.end()) return it->second;
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : s) h = (h ^ ch) * 16777619u;
  return hex_color(96 + (h & 127), 96 + ((h >> 8) & 127), 96 + ((h >> 16) & 127));
}

inline std::string order_color(std::size_t k, std::size_t max) {
  const double t = max == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(max);
  return hex_color(static_cast<unsigned>(40 + 200 * t), 80, static_cast<unsigned>(240 - 200 * t));
}

}  // namespace render_detail

inline std::string render_ascii(const Canvas& c, const Window& w) {
  std::map<std::string, char> extra;
  std::string out;
  for (std::int64_t y = w.y_max; y >= w.y_min; --y) {
    for (std::int64_t x = w.x_min; x <= w.x_max; ++x) {
      const Pos p{x, y};
      char ch = '.';
      if (auto it = c.cells.find(p); it != c.cells.end()) ch = render_detail::group_glyph(it->second.group, extra);
      if (c.marks.count(p)) ch = 'X';
      out += ch;
    }
    out += '\n';
  }
  return out;
}

// Glue marks follow the usual convention: dotted for a null glue, solid for
// strength 1, solid with notches for strength 2 or more.
inline std::string render_svg(const Canvas& c, const RenderSpec& spec) {
  const Window& w = spec.window;
  const int s = spec.cell;
  const std::int64_t cols = w.x_max - w.x_min + 1, rows = w.y_max - w.y_min + 1;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(cols * s) + "\" height=\"" +
         std::to_string(rows * s) + "\" viewBox=\"0 0 " + std::to_string(cols * s) + " " + std::to_string(rows * s) +
         "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  const auto px = [&](std::int64_t x) { return (x - w.x_min) * s; };
  const auto py = [&](std::int64_t y) { return (w.y_max - y) * s; };
  const auto line = [&](std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2, const char* extra) {
    out += "<line x1=\"" + std::to_string(x1) + "\" y1=\"" + std::to_string(y1) + "\" x2=\"" + std::to_string(x2) +
           "\" y2=\"" + std::to_string(y2) + "\" stroke=\"#000000\" " + extra + "/>\n";
  };
  for (const auto& [p, cell] : c.cells) {
    if (!w.contains(p)) continue;
    std::string fill;
    switch (spec.color_by) {
      case ColorBy::tile_group: fill = render_detail::string_color(cell.group); break;
      case ColorBy::tile_id: fill = render_detail::string_color(cell.id); break;
      case ColorBy::attachment_order: fill = render_detail::order_color(cell.order, c.max_order); break;
    }
    const std::int64_t x0 = px(p.x), y0 = py(p.y);
    out += "<rect x=\"" + std::to_string(x0) + "\" y=\"" + std::to_string(y0) + "\" width=\"" + std::to_string(s) +
           "\" height=\"" + std::to_string(s) + "\" fill=\"" + fill + "\"><title>" + cell.id + " (" +
           std::to_string(p.x) + "," + std::to_string(p.y) + ")</title></rect>\n";
    if (!cell.tile || s < 6) continue;
    const std::int64_t x1 = x0 + s, y1 = y0 + s, mx = x0 + s / 2, my = y0 + s / 2, n = s / 4;
    for (Dir d : kDirs) {
      const Glue& g = cell.tile->glue(d);
      const char* style = g.is_null() ? "stroke-width=\"1\" stroke-dasharray=\"1,2\"" : "stroke-width=\"1.5\"";
      switch (d) {
        case Dir::N: line(x0, y0, x1, y0, style); break;
        case Dir::S: line(x0, y1, x1, y1, style); break;
        case Dir::E: line(x1, y0, x1, y1, style); break;
        case Dir::W: line(x0, y0, x0, y1, style); break;
      }
      if (g.strength >= 2) {
        switch (d) {
          case Dir::N: line(mx, y0, mx, y0 + n, "stroke-width=\"1.5\""); break;
          case Dir::S: line(mx, y1, mx, y1 - n, "stroke-width=\"1.5\""); break;
          case Dir::E: line(x1, my, x1 - n, my, "stroke-width=\"1.5\""); break;
          case Dir::W: line(x0, my, x0 + n, my, "stroke-width=\"1.5\""); break;
        }
      }
    }
  }
  for (Pos p : c.marks) {
    if (!w.contains(p)) continue;
    const std::int64_t x0 = px(p.x), y0 = py(p.y);
    const std::string red = "stroke=\"#e00000\" stroke-width=\"2\"";
    out += "<line x1=\"" + std::to_string(x0) + "\" y1=\"" + std::to_string(y0) + "\" x2=\"" + std::to_string(x0 + s) +
           "\" y2=\"" + std::to_string(y0 + s) + "\" " + red + "/>\n";
    out += "<line x1=\"" + std::to_string(x0 + s) + "\" y1=\"" + std::to_string(y0) + "\" x2=\"" + std::to_string(x0) +
           "\" y2=\"" + std::to_string(y0 + s) + "\" " + red + "/>\n";
  }
  out += "</svg>\n";
  return out;
}

inline std::string render(const Canvas& c, const RenderSpec& spec) {
  if (!spec.window.valid()) throw Error(ErrorCode::out_of_range, "render window is empty");
  return spec.format == RenderFormat::svg ? render_svg(c, spec) : render_ascii(c, spec.window);
}

}  // namespace tam
