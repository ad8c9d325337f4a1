// SPDX-License-Identifier: MIT
// Bundled tile assembly systems: the blocking example, the XOR Sierpinski
// system, the countdown S_n assembler, the laced Sierpinski system and the
// pumping constructions used by the lower-bound argument.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tam/core.hpp"
#include "tam/fractal.hpp"

namespace tam {

namespace detail {

inline Glue g(std::string color, int strength = 1) { return Glue{std::move(color), strength}; }
inline const Glue kNull{};

inline TileType tile(std::string id, std::string label, Glue n, Glue e, Glue s, Glue w) {
  TileType t;
  t.id = std::move(id);
  t.label = std::move(label);
  t.glues = {std::move(n), std::move(e), std::move(s), std::move(w)};
  return t;
}

}  // namespace detail

// Tile group of a bundled tile: the label up to the first '/', or the whole
// label when there is none.
inline std::string tile_group(const TileType& t) {
  auto slash = t.label.find('/');
  return slash == std::string::npos ? t.label : t.label.substr(0, slash);
}

// ---------------------------------------------------------------------------
// Blocking example: a temperature-1 arm that wraps around (0,1) and points a
// glue back into it. The unique terminal assembly has 8 tiles.

inline TAS blocking_example() {
  using detail::g;
  using detail::kNull;
  using detail::tile;
  std::vector<TileType> ts{
      tile("seed", "arm/seed", g("a"), kNull, kNull, kNull),
      tile("up1", "arm/up1", g("b"), kNull, g("a"), kNull),
      tile("corner1", "arm/corner1", kNull, g("c"), g("b"), kNull),
      tile("top", "arm/top", kNull, g("d"), kNull, g("c")),
      tile("corner2", "arm/corner2", kNull, kNull, g("e"), g("d")),
      tile("down1", "arm/down1", g("e"), kNull, kNull, g("f")),
      tile("hook", "arm/hook", kNull, g("f"), g("h"), g("x")),
      tile("foot", "arm/foot", g("h"), kNull, kNull, g("y")),
      tile("blocked", "arm/blocked", kNull, g("x"), kNull, kNull),
  };
  return TAS("blocking", std::move(ts), "seed", 1);
}

// ---------------------------------------------------------------------------
// XOR Sierpinski system at temperature 2. Tiles labelled ".../1" mark odd
// binomial coefficients.

inline TAS weak_sierpinski() {
  using detail::g;
  using detail::kNull;
  using detail::tile;
  std::vector<TileType> ts{
      tile("seed", "boundary/1", g("col", 2), g("row", 2), kNull, kNull),
      tile("row", "boundary/1", g("1"), g("row", 2), kNull, g("row", 2)),
      tile("col", "boundary/1", g("col", 2), g("1"), g("col", 2), kNull),
  };
  for (int w = 0; w < 2; ++w)
    for (int s = 0; s < 2; ++s) {
      const std::string v = std::to_string(w ^ s);
      ts.push_back(tile("x" + std::to_string(w) + std::to_string(s), "rule/" + v, g(v), g(v),
                        g(std::to_string(s)), g(std::to_string(w))));
    }
  return TAS("weak_sierpinski", std::move(ts), "seed", 2);
}

inline bool labelled_one(const TileType& t) {
  return t.label.size() >= 2 && t.label.compare(t.label.size() - 2, 2, "/1") == 0;
}

// ---------------------------------------------------------------------------
// Countdown S_n assembler with 2^{n+1}-1 tile types.

inline TAS make_sn_tas(int n) {
  using detail::g;
  using detail::kNull;
  using detail::tile;
  if (n < 1 || n > 12) throw Error(ErrorCode::out_of_range, "make_sn_tas needs 1 <= n <= 12");
  const std::int64_t top = pow2(n) - 1;
  const auto vg = [](std::int64_t i) { return i > 0 ? g("v" + std::to_string(i), 2) : Glue{}; };
  const auto hg = [](std::int64_t i) { return i > 0 ? g("h" + std::to_string(i), 2) : Glue{}; };
  std::vector<TileType> ts;
  ts.push_back(tile("t0", "seed", vg(top), hg(top), kNull, kNull));
  for (std::int64_t i = 1; i <= top; ++i) {
    const std::int64_t spawn = pow2(ruler(i)) - 1;
    ts.push_back(tile("v" + std::to_string(i), "vertical", vg(i - 1), hg(spawn), vg(i), kNull));
    ts.push_back(tile("h" + std::to_string(i), "horizontal", vg(spawn), hg(i - 1), kNull, hg(i)));
  }
  return TAS("s" + std::to_string(n), std::move(ts), "t0", 2);
}

// ---------------------------------------------------------------------------
// Laced Sierpinski system.
//
// Tiles are written for the vertical orientation and the horizontal ones are
// their transposes. Glue colors carry a two-character namespace tag:
//   B. boundary rows, V/H bar and counter glues, D/U down and up cap chains.
// Transposition swaps the tags pairwise.

namespace detail {

inline std::string transpose_color(const std::string& c) {
  static const std::pair<const char*, const char*> swaps[] = {
      {"V:", "H:"}, {"H:", "V:"}, {"D:", "U:"}, {"U:", "D:"}, {"Bx", "By"}, {"By", "Bx"}};
  for (const auto& [a, b] : swaps)
    if (c.rfind(a, 0) == 0) return std::string(b) + c.substr(2);
  return c;
}

inline Glue transpose_glue(const Glue& gl) { return gl.is_null() ? gl : Glue{transpose_color(gl.color), gl.strength}; }

// Mirror across the diagonal: N<->E and S<->W.
inline TileType transpose_tile(const TileType& t, std::string id) {
  TileType r;
  r.id = std::move(id);
  r.label = t.label;
  r.glue(Dir::N) = transpose_glue(t.glue(Dir::E));
  r.glue(Dir::E) = transpose_glue(t.glue(Dir::N));
  r.glue(Dir::S) = transpose_glue(t.glue(Dir::W));
  r.glue(Dir::W) = transpose_glue(t.glue(Dir::S));
  return r;
}

class LacedBuilder {
 public:
  std::vector<TileType> tiles;

  // Adds a vertical tile and its horizontal transpose.
  void pair(const std::string& id, const std::string& group, Glue n, Glue e, Glue s, Glue w) {
    TileType t = tile("v" + id, group + "/v" + id, std::move(n), std::move(e), std::move(s), std::move(w));
    TileType h = transpose_tile(t, "h" + id);
    h.label = group + "/h" + id;
    tiles.push_back(std::move(t));
    tiles.push_back(std::move(h));
  }
  void single(const std::string& id, const std::string& group, Glue n, Glue e, Glue s, Glue w) {
    tiles.push_back(tile(id, group + "/" + id, std::move(n), std::move(e), std::move(s), std::move(w)));
  }
};

inline void laced_boundary(LacedBuilder& b) {
  b.single("S", "boundary", g("By:0", 2), g("Bx:0", 2), kNull, kNull);
  // Bottom row: odd x has no bar, even x roots a bar with value T.
  b.pair("bo", "boundary", kNull, g("Bx:1", 2), kNull, g("Bx:0", 2));
  b.pair("be", "boundary", g("V:r_T", 2), g("Bx:0", 2), kNull, g("Bx:1", 2));
}

// A bar carries its value (T or F) from its root to its top. A bar is F
// exactly when it was spawned at the midpoint of its parent bar.
inline void laced_bars(LacedBuilder& b) {
  for (const std::string v : {"T", "F"}) {
    b.pair("1" + v, "bar", g("V:t_" + v), g("U:*"), g("V:r_" + v, 2), kNull);
    // Second tile: short bar (length 3) or long bar with a counter.
    b.pair("2s" + v, "bar", g("V:end_" + v, 2), g("H:r_F", 2), g("V:t_" + v), g("D:bmpT"));
    b.pair("2l" + v, "bar", g("V:up_" + v, 2), g("H:r_T", 2), g("V:t_" + v), g("D:bmpF"));
    // Increment half: odd rows trigger a zig row, even rows read the zag.
    b.pair("o+" + v, "bar", g("V:e+_" + v), kNull, g("V:up_" + v, 2), g("V:inc"));
    b.pair("e+F" + v, "bar", g("V:up_" + v, 2), g("H:r_T", 2), g("V:e+_" + v), g("V:zF"));
    b.pair("e+T" + v, "bar", g("V:turn_" + v, 2), g("H:r_F", 2), g("V:e+_" + v), g("V:zT"));
    // Decrement half: the first odd row copies the counter, later ones
    // decrement it.
    b.pair("o1" + v, "bar", g("V:e-_" + v), kNull, g("V:turn_" + v, 2), g("V:cpy"));
    b.pair("o-" + v, "bar", g("V:e-_" + v), kNull, g("V:dn_" + v, 2), g("V:dec"));
    b.pair("e-F" + v, "bar", g("V:dn_" + v, 2), g("H:r_T", 2), g("V:e-_" + v), g("V:zF"));
    b.pair("e-@" + v, "bar", g("V:end_" + v, 2), g("H:r_T", 2), g("V:e-_" + v), g("V:z@"));
    b.pair("top" + v, "bar", g("V:t_" + v), g("U:*"), g("V:end_" + v, 2), kNull);
  }
}

// Caps grow from the center of every maximal hypotenuse (a notch whose
// south and west neighbours are both T bar tops) in two chains: the down
// chain listed here and its transpose, the up chain.
inline void laced_caps(LacedBuilder& b) {
  b.single("cs", "cap", g("U:1", 2), g("D:1", 2), g("V:t_T"), g("H:t_T"));
  b.pair("d1f", "cap", kNull, g("D:bmpT"), g("D:s"), g("D:1", 2));
  b.pair("d0o", "cap", g("D:s"), g("D:1e", 2), g("D:*"), kNull);
  b.pair("d1e", "cap", g("D:bmpS"), kNull, g("D:se"), g("D:1e", 2));
  for (const std::string v : {"T", "F"}) b.pair("d0e" + v, "cap", g("D:se"), g("D:1o", 2), g("V:t_" + v), kNull);
  b.pair("d1o", "cap", g("V:c0"), g("D:bmpF"), g("D:s"), g("D:1o", 2));
  for (const std::string v : {"T", "F"}) b.pair("dt" + v, "cap", kNull, g("D:tst" + v), g("D:bmpS"), g("D:bmp" + v));
}

// Test fibers: a request row grows west until blocked by the caps, and a
// return row carries the bump value back east.
inline void laced_tests(LacedBuilder& b) {
  b.pair("rq", "test", g("V:ret"), g("V:req", 2), kNull, g("V:req", 2));
  for (const std::string v : {"T", "F"}) b.pair("rt" + v, "test", kNull, g("D:tst" + v), g("V:ret"), g("D:tst" + v));
}

// Binary counters. Zig rows run west from the bar and update the value; zag
// rows run east and return F (continue), T (midpoint reached) or @ (done).
//
// Zag-to-zig glues G<bit><mark>: mark p plain, nm next to the most
// significant bit, msb the most significant bit.
// Zig-to-zag glues Z<bit><mark>: p plain, i msb in the increment half, t msb
// that issued a test request, tl msb that is also the lsb and reads the bump
// directly, d msb in the decrement half, dl msb that is also the lsb in the
// decrement half.
inline void laced_counters(LacedBuilder& b) {
  int serial = 0;
  const auto add = [&](Glue n, Glue e, Glue s, Glue w) {
    b.pair("c" + std::to_string(++serial), "counter", std::move(n), std::move(e), std::move(s), std::move(w));
  };
  const auto Z = [](int bit, const std::string& m, int str = 1) { return g("V:Z" + std::to_string(bit) + m, str); };
  const auto G = [](int bit, const std::string& m) { return g("V:G" + std::to_string(bit) + m); };
  struct Below {
    int bit;
    std::string mark;
  };
  const std::vector<Below> below{{0, "p"}, {1, "p"}, {0, "nm"}, {1, "nm"}, {1, "msb"}};

  // Increment half. Signals: inc (carry into the lsb), C carry, A no carry
  // with all lower bits one, N no change.
  for (const std::string e : {"inc", "C", "A", "N"}) {
    for (const Below& s : below) {
      if (s.mark == "nm") continue;
      int bit = s.bit;
      std::string out;
      if (e == "inc") {
        bit ^= 1;
        out = s.bit == 0 ? "A" : "C";
      } else if (e == "C") {
        bit ^= 1;
        out = s.bit == 0 ? "N" : "C";
      } else if (e == "A") {
        out = s.bit == 1 ? "A" : "N";
      } else {
        out = "N";
      }
      if (s.mark == "msb") {
        if (out == "C")
          add(Z(0, "p"), g("V:" + e), G(1, "msb"), g("V:ext", 2));
        else if (out == "A")
          add(Z(1, "t"), g("V:" + e), G(1, "msb"), g("V:req", 2));
        else
          add(Z(1, "i", 2), g("V:" + e), G(1, "msb"), kNull);
      } else {
        add(Z(bit, "p"), g("V:" + e), G(s.bit, s.mark), g("V:" + out));
      }
    }
  }
  // First zig row: starts the counter at one on top of the last cap.
  add(Z(1, "tl"), g("V:inc"), g("V:c0"), kNull);
  // New most significant bit after a carry out.
  add(Z(1, "i", 2), g("V:ext", 2), kNull, kNull);

  // Copy and decrement halves. Signals: cpy (copy into the lsb), dec (borrow
  // into the lsb), B borrow, K no borrow.
  for (const std::string e : {"cpy", "dec", "B", "K"}) {
    const bool lsb = e == "cpy" || e == "dec";
    const bool borrow = e == "dec" || e == "B";
    for (const Below& s : below) {
      // The copy row follows an all-ones value and carries no marks.
      if (e == "cpy" && (s.bit == 0 || s.mark == "nm")) continue;
      if (s.mark == "msb") {
        if (borrow) continue;
        add(Z(1, lsb ? "dl" : "d", 2), g("V:" + e), G(1, "msb"), kNull);
      } else if (s.mark == "nm" && borrow && s.bit == 0) {
        // The borrow would clear the msb: this column becomes the msb.
        add(Z(1, lsb ? "dl" : "d", 2), g("V:" + e), G(0, "nm"), kNull);
      } else {
        const int bit = borrow ? s.bit ^ 1 : s.bit;
        const std::string out = borrow && s.bit == 0 ? "B" : "K";
        add(Z(bit, "p"), g("V:" + e), G(s.bit, s.mark), g("V:" + out));
      }
    }
  }

  // Zag rows: the msb starts the row, the rest relay the signal east.
  add(G(1, "msb"), g("V:zF"), Z(1, "i", 2), kNull);
  for (const std::string v : {"T", "F"}) {
    add(G(1, "msb"), g("V:z" + v), Z(1, "t"), g("D:tst" + v));
    add(G(1, "msb"), g("V:z" + v), Z(1, "tl"), g("D:tst" + v));
  }
  add(G(1, "msb"), g("V:zF1"), Z(1, "d", 2), kNull);
  add(kNull, g("V:z@"), Z(1, "dl", 2), kNull);
  for (const std::string sig : {"zF", "zT", "zF1"})
    for (int bit = 0; bit < 2; ++bit) {
      // At the turn the value is all ones.
      if (sig == "zT" && bit == 0) continue;
      add(G(bit, sig == "zF1" ? "nm" : "p"), g(sig == "zT" ? "V:zT" : "V:zF"), Z(bit, "p"), g("V:" + sig));
    }
}

}  // namespace detail

inline TAS laced_tas() {
  detail::LacedBuilder b;
  detail::laced_boundary(b);
  detail::laced_bars(b);
  detail::laced_caps(b);
  detail::laced_counters(b);
  detail::laced_tests(b);
  return TAS("laced", std::move(b.tiles), "S", 2);
}

// The five boundary tiles of the laced system on their own. Their bar glues
// have no partner, so exactly the two boundary rays assemble.
inline TAS boundary_tas() {
  detail::LacedBuilder b;
  detail::laced_boundary(b);
  return TAS("boundary", std::move(b.tiles), "S", 2);
}

inline std::map<std::string, std::size_t> group_sizes(const TileSet& ts) {
  std::map<std::string, std::size_t> m;
  for (const auto& t : ts.tiles()) ++m[tile_group(t)];
  return m;
}

// Positions holding tiles of the boundary and bar groups, which together
// assemble the Sierpinski triangle inside the laced system.
inline PointSet sierpinski_group_positions(const Assembly& a) {
  PointSet out;
  for (const auto& [p, t] : a.placement()) {
    const std::string grp = tile_group(a.tileset()[t]);
    if (grp == "boundary" || grp == "bar") out.insert(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pumping constructions

// Negative control: the countdown assembler for S_3 with its boundary rows
// replaced by four-periodic rows. Inside [0,7]^2 it assembles S_3, but its
// bottom row repeats tile types, so it cannot stop at x = 8.
inline TAS periodic_control() {
  using detail::g;
  using detail::kNull;
  using detail::tile;
  std::vector<TileType> ts;
  ts.push_back(tile("t0", "seed", g("p1", 2), g("q1", 2), kNull, kNull));
  // Bars inside the triangle: countdown of length at most 3.
  const auto vg = [](int i) { return i > 0 ? g("v" + std::to_string(i), 2) : Glue{}; };
  const auto hg = [](int i) { return i > 0 ? g("h" + std::to_string(i), 2) : Glue{}; };
  for (int i = 1; i <= 3; ++i) {
    const int spawn = static_cast<int>(pow2(ruler(i))) - 1;
    ts.push_back(tile("v" + std::to_string(i), "vertical", vg(i - 1), hg(spawn), vg(i), kNull));
    ts.push_back(tile("h" + std::to_string(i), "horizontal", vg(spawn), hg(i - 1), kNull, hg(i)));
  }
  // Periodic boundary rows: position x mod 4 decides the spawned bar.
  for (int k = 0; k < 4; ++k) {
    const int x = k == 0 ? 4 : k;  // representative of the residue class
    const int spawn = static_cast<int>(pow2(ruler(x))) - 1;
    const std::string cur = std::to_string(k), nxt = std::to_string((k + 1) % 4);
    ts.push_back(tile("b" + cur, "bottom", vg(spawn), g("q" + nxt, 2), kNull, g("q" + cur, 2)));
    ts.push_back(tile("l" + cur, "left", g("p" + nxt, 2), hg(spawn), g("p" + cur, 2), kNull));
  }
  return TAS("periodic_control", std::move(ts), "t0", 2);
}

struct PumpedConfiguration {
  Assembly base;
  Pos m, n;
  Assembly beta;
  Pos escape;
};

struct BondAudit {
  bool ok = true;
  std::vector<std::pair<Pos, Pos>> weak;  // adjacent pairs bonding below tau
};

// Every pair of adjacent tiles in the configuration must bond at strength
// at least tau.
inline BondAudit audit_bonds(const Assembly& a, int tau) {
  BondAudit r;
  for (const auto& [p, t] : a.placement())
    for (Dir d : {Dir::E, Dir::N}) {
      Pos q = step(p, d);
      if (!a.contains(q)) continue;
      if (interaction_strength(a, p, q) < tau) {
        r.ok = false;
        r.weak.emplace_back(p, q);
      }
    }
  return r;
}

inline void require_stage_domain(const Assembly& alpha, int n) {
  if (alpha.domain() != sierpinski(n))
    throw Error(ErrorCode::precondition_violation, "assembly domain is not S_" + std::to_string(n));
}

// Periodic continuation of the bottom row from x = j out to x = 2^n.
inline PumpedConfiguration pump_case1(const Assembly& alpha, Pos m, Pos n_pos, int n) {
  require_stage_domain(alpha, n);
  const std::int64_t i = m.x, j = n_pos.x;
  if (m.y != 0 || n_pos.y != 0) throw Error(ErrorCode::precondition_violation, "positions must lie on the bottom row");
  if (!(0 <= i && i < j && j < pow2(n))) throw Error(ErrorCode::precondition_violation, "need 0 <= i < j < 2^n");
  if (*alpha.at(m) != *alpha.at(n_pos)) throw Error(ErrorCode::precondition_violation, "tile types differ");
  PumpedConfiguration pc{alpha, m, n_pos, Assembly(alpha.tileset_ptr()), {pow2(n), 0}};
  for (std::int64_t k = 0; k <= pow2(n); ++k) {
    const std::int64_t src = k < j ? k : i + (k - j) % (j - i);
    pc.beta.place({k, 0}, *alpha.at({src, 0}));
  }
  return pc;
}

// Keeps the two boundary arms and places alpha(m + w) at (-1, j).
inline PumpedConfiguration pump_case3(const Assembly& alpha, Pos m, Pos n_pos, int n) {
  require_stage_domain(alpha, n);
  const std::int64_t i = m.x, j = n_pos.y;
  if (m.y != 0 || n_pos.x != 0) throw Error(ErrorCode::precondition_violation, "need m = (i,0) and n = (0,j)");
  if (i < 1 || j < 1 || i >= pow2(n) || j >= pow2(n))
    throw Error(ErrorCode::precondition_violation, "need i, j in [1, 2^n - 1]");
  if (*alpha.at(m) != *alpha.at(n_pos)) throw Error(ErrorCode::precondition_violation, "tile types differ");
  PumpedConfiguration pc{alpha, m, n_pos, Assembly(alpha.tileset_ptr()), {-1, j}};
  for (std::int64_t k = 0; k <= i; ++k) pc.beta.place({k, 0}, *alpha.at({k, 0}));
  for (std::int64_t k = 1; k <= j; ++k) pc.beta.place({0, k}, *alpha.at({0, k}));
  pc.beta.place({-1, j}, *alpha.at({i - 1, 0}));
  return pc;
}

// First pair of bottom-row positions sharing a tile type.
inline std::optional<std::pair<Pos, Pos>> find_case1_pair(const Assembly& alpha, int n) {
  std::map<TileIndex, std::int64_t> first;
  for (std::int64_t x = 0; x < pow2(n); ++x) {
    auto t = alpha.at({x, 0});
    if (!t) continue;
    auto [it, fresh] = first.emplace(*t, x);
    if (!fresh) return std::make_pair(Pos{it->second, 0}, Pos{x, 0});
  }
  return std::nullopt;
}

// First (i,0), (0,j) pair sharing a tile type, i and j positive.
inline std::optional<std::pair<Pos, Pos>> find_case3_pair(const Assembly& alpha, int n) {
  for (std::int64_t i = 1; i < pow2(n); ++i)
    for (std::int64_t j = 1; j < pow2(n); ++j) {
      auto a = alpha.at({i, 0}), b = alpha.at({0, j});
      if (a && b && *a == *b) return std::make_pair(Pos{i, 0}, Pos{0, j});
    }
  return std::nullopt;
}

// Synthetic configuration on S_n whose horizontal and vertical arms use one
// shared tile type.
inline Assembly shared_type_assembly(int n) {
  using detail::g;
  using detail::kNull;
  using detail::tile;
  auto ts = std::make_shared<const TileSet>(std::vector<TileType>{
      tile("seed", "seed", g("u", 2), g("u", 2), kNull, kNull),
      tile("u", "shared", g("u", 2), g("u", 2), g("u", 2), g("u", 2)),
  });
  Assembly a(ts);
  for (Pos p : sierpinski(n)) a.place(p, p == Pos{0, 0} ? 0 : 1);
  return a;
}

}  // namespace tam
