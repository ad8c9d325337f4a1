// SPDX-License-Identifier: MIT
// Plain-text tile set format.
//
//   # comment
//   name <name>
//   temperature <tau>
//   seed <tile id>
//   tile <id> <label> <N> <E> <S> <W>
//
// A glue is written color:strength, split at the last ':', and the null glue
// is written '-'. Identifiers, labels and colors may not contain whitespace.
#pragma once

#include <cctype>
#include <charconv>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tam/core.hpp"

namespace tam {

namespace io_detail {

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + msg);
}

inline int parse_int(const std::string& s, std::size_t line, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

inline Glue parse_glue(const std::string& tok, std::size_t line) {
  if (tok == "-") return Glue{};
  auto colon = tok.rfind(':');
  if (colon == std::string::npos || colon == 0) fail(line, "glue '" + tok + "' is not color:strength");
  const int s = parse_int(tok.substr(colon + 1), line, "glue strength");
  if (s < 1 || s > 255)
    throw Error(ErrorCode::bad_strength,
                "line " + std::to_string(line) + ": glue strength " + std::to_string(s) + " outside 1..255");
  return Glue{tok.substr(0, colon), s};
}

inline std::string format_glue(const Glue& g) {
  return g.is_null() ? "-" : g.color + ":" + std::to_string(g.strength);
}

inline bool has_space(const std::string& s) {
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c))) return true;
  return s.empty();
}

}  // namespace io_detail

inline TAS parse_tileset(std::istream& in) {
  using io_detail::fail;
  std::string name, seed;
  int tau = 0;
  bool have_name = false, have_tau = false, have_seed = false;
  std::vector<TileType> tiles;
  std::map<std::string, std::size_t> id_line;
  std::map<std::array<Glue, 4>, std::size_t> glue_line;
  std::size_t seed_line = 0;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& kw = tok[0];
    if (kw == "name" || kw == "temperature" || kw == "seed") {
      if (tok.size() != 2) fail(line, kw + " takes exactly one value");
      if (kw == "name") {
        if (have_name) fail(line, "duplicate name line");
        name = tok[1];
        have_name = true;
      } else if (kw == "temperature") {
        if (have_tau) fail(line, "duplicate temperature line");
        tau = io_detail::parse_int(tok[1], line, "temperature");
        if (tau < 1) fail(line, "temperature must be positive");
        have_tau = true;
      } else {
        if (have_seed) fail(line, "duplicate seed line");
        seed = tok[1];
        seed_line = line;
        have_seed = true;
      }
    } else if (kw == "tile") {
      if (tok.size() != 7) fail(line, "tile needs id, label and four glues");
      TileType t;
      t.id = tok[1];
      t.label = tok[2] == "-" ? "" : tok[2];
      for (std::size_t k = 0; k < 4; ++k) t.glues[k] = io_detail::parse_glue(tok[3 + k], line);
      if (auto [it, fresh] = id_line.emplace(t.id, line); !fresh)
        throw Error(ErrorCode::duplicate_id, "line " + std::to_string(line) + ": tile id '" + t.id +
                                                 "' already declared on line " + std::to_string(it->second));
      if (auto [it, fresh] = glue_line.emplace(t.glues, line); !fresh)
        throw Error(ErrorCode::duplicate_type, "line " + std::to_string(line) + ": tile '" + t.id +
                                                   "' repeats the glues of the tile on line " +
                                                   std::to_string(it->second));
      tiles.push_back(std::move(t));
    } else {
      fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_tau) fail(line, "missing temperature line");
  if (!have_seed) throw Error(ErrorCode::bad_seed, "line " + std::to_string(line) + ": missing seed line");
  if (!id_line.count(seed))
    throw Error(ErrorCode::bad_seed,
                "line " + std::to_string(seed_line) + ": seed '" + seed + "' is not a declared tile id");
  if (tiles.empty()) fail(line, "no tile records");
  return TAS(have_name ? name : "unnamed", std::move(tiles), seed, tau);
}

inline TAS parse_tileset_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tileset(in);
}

inline TAS load_tileset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  return parse_tileset(in);
}

inline std::string format_tileset(const TAS& tas);

inline void save_tileset(const TAS& tas, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::parse_error, "cannot write " + path);
  out << format_tileset(tas);
}

inline std::string format_tileset(const TAS& tas) {
  if (io_detail::has_space(tas.name)) throw Error(ErrorCode::parse_error, "name must be a non-empty word");
  std::ostringstream out;
  out << "name " << tas.name << "\n";
  out << "temperature " << tas.temperature << "\n";
  out << "seed " << (*tas.tiles)[tas.seed].id << "\n";
  for (const TileType& t : tas.tiles->tiles()) {
    if (io_detail::has_space(t.id)) throw Error(ErrorCode::parse_error, "tile id must be a non-empty word");
    if (!t.label.empty() && io_detail::has_space(t.label))
      throw Error(ErrorCode::parse_error, "tile label may not contain whitespace");
    out << "tile " << t.id << " " << (t.label.empty() ? "-" : t.label);
    for (Dir d : kDirs) {
      const Glue& g = t.glue(d);
      if (!g.is_null() && io_detail::has_space(g.color))
        throw Error(ErrorCode::parse_error, "glue color may not contain whitespace");
      out << " " << io_detail::format_glue(g);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tam
