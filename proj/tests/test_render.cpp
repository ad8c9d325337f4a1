// SPDX-License-Identifier: MIT
#include <catch_amalgamated.hpp>

#include "tam/library.hpp"
#include "tam/render.hpp"

using namespace tam;

TEST_CASE("ascii rendering of a point set") {
  const Canvas c = canvas_from_pointset(sierpinski(1));
  CHECK(render_ascii(c, Window{0, 0, 1, 1}) == "#.\n##\n");
  CHECK(render_ascii(Canvas{}, Window{0, 0, 0, 0}) == ".\n");
}

TEST_CASE("marks override cells") {
  Canvas c = canvas_from_pointset(sierpinski(1));
  c.marks.insert({1, 0});
  CHECK(render_ascii(c, Window{0, 0, 1, 1}) == "#.\n#X\n");
}

TEST_CASE("laced families use distinct glyphs") {
  const std::string s = render_ascii(canvas_from_laced_families(4), Window{0, 0, 15, 15});
  for (char ch : {'#', 'C', 'N', 'T'}) CHECK(s.find(ch) != std::string::npos);
  CHECK(canvas_from_laced_families(6).cells.size() == 2212);
}

TEST_CASE("svg rendering is deterministic and honours the options") {
  SimOptions so;
  so.window = Window{0, 0, 7, 7};
  const SimResult r = simulate(make_sn_tas(3), so);
  const Canvas c = canvas_from_sequence(r.sequence);
  CHECK(c.cells.size() == 27);
  CHECK(c.max_order == 26);
  for (ColorBy mode : {ColorBy::tile_group, ColorBy::tile_id, ColorBy::attachment_order}) {
    RenderSpec spec{RenderFormat::svg, so.window, mode, 12};
    const std::string a = render(c, spec), b = render(c, spec);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("width=\"96\"") != std::string::npos);
  }
  RenderSpec spec;
  spec.format = RenderFormat::svg;
  spec.window = so.window;
  const std::string svg = render(c, spec);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // null glues
  CHECK(render(Canvas{}, spec).find("<rect x=") == std::string::npos);
}

TEST_CASE("render option parsing") {
  CHECK(parse_render_format("svg") == RenderFormat::svg);
  CHECK(parse_render_format("ascii") == RenderFormat::ascii);
  CHECK_THROWS_AS(parse_render_format("png"), Error);
  CHECK(parse_color_by("attachment-order") == ColorBy::attachment_order);
  CHECK_THROWS_AS(parse_color_by("rainbow"), Error);
  RenderSpec bad;
  bad.window = Window{3, 0, 0, 0};
  CHECK_THROWS_AS(render(Canvas{}, bad), Error);
}
