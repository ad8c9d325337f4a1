// SPDX-License-Identifier: MIT
#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "tam/library.hpp"
#include "tam/tileset_io.hpp"

using namespace tam;

namespace {

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::precondition_violation, "");
}

std::vector<std::pair<std::string, TAS>> bundled() {
  return {{"laced", laced_tas()},
          {"blocking", blocking_example()},
          {"weak-sierpinski", weak_sierpinski()},
          {"sn3", make_sn_tas(3)},
          {"periodic-control", periodic_control()},
          {"boundary", boundary_tas()}};
}

const char* kHeader = "name x\ntemperature 2\nseed a\n";

}  // namespace

TEST_CASE("bundled systems round-trip through files") {
  const auto dir = std::filesystem::temp_directory_path() / "tam_io_test";
  std::filesystem::create_directories(dir);
  for (const auto& [name, t] : bundled()) {
    const std::string path = (dir / (name + ".tiles")).string();
    save_tileset(t, path);
    const TAS back = load_tileset(path);
    CHECK(back == t);
    CHECK(format_tileset(back) == format_tileset(t));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("bundled data files match the built-in systems") {
  for (const auto& [name, t] : bundled()) {
    INFO(name);
    CHECK(load_tileset(std::string(TAM_DATA_DIR) + "/" + name + ".tiles") == t);
  }
  CHECK(load_tileset(std::string(TAM_DATA_DIR) + "/laced.tiles").tileset().size() == 154);
}

TEST_CASE("parser accepts comments, labels and colons in colors") {
  const TAS t = parse_tileset_string(
      "# a comment\r\nname demo\ntemperature 2\nseed a\n\ntile a lbl/a x:y:2 - - -\ntile b - - - x:y:2 -\n");
  CHECK(t.name == "demo");
  CHECK(t.tileset()[0].label == "lbl/a");
  CHECK(t.tileset()[0].glue(Dir::N) == Glue{"x:y", 2});
  CHECK(t.tileset()[1].label.empty());
}

TEST_CASE("parser errors carry codes and line numbers") {
  auto e = error_of([] { parse_tileset_string(std::string(kHeader) + "tile a - g:2 - - -\ntile b - g:2 - - -\n"); });
  CHECK(e.code() == ErrorCode::duplicate_type);
  CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  CHECK(std::string(e.what()).find("line 4") != std::string::npos);

  e = error_of([] { parse_tileset_string(std::string(kHeader) + "tile a - g:2 - - -\ntile a - h:2 - - -\n"); });
  CHECK(e.code() == ErrorCode::duplicate_id);

  e = error_of([] { parse_tileset_string(std::string(kHeader) + "tile a - g:256 - - -\n"); });
  CHECK(e.code() == ErrorCode::bad_strength);
  CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  CHECK(error_of([] { parse_tileset_string(std::string(kHeader) + "tile a - g:0 - - -\n"); }).code() ==
        ErrorCode::bad_strength);

  CHECK(error_of([] { parse_tileset_string("name x\ntemperature 2\ntile a - g:1 - - -\n"); }).code() ==
        ErrorCode::bad_seed);
  CHECK(error_of([] { parse_tileset_string("name x\ntemperature 2\nseed q\ntile a - g:1 - - -\n"); }).code() ==
        ErrorCode::bad_seed);

  e = error_of([] { parse_tileset_string(std::string(kHeader) + "tile a - g - - -\n"); });
  CHECK(e.code() == ErrorCode::parse_error);
  CHECK(error_of([] { parse_tileset_string(std::string(kHeader) + "tile a - g:1 - -\n"); }).code() ==
        ErrorCode::parse_error);
  CHECK(error_of([] { parse_tileset_string(std::string(kHeader) + "glue a\n"); }).code() == ErrorCode::parse_error);
  CHECK(error_of([] { parse_tileset_string("name x\nseed a\ntile a - g:1 - - -\n"); }).code() ==
        ErrorCode::parse_error);
  CHECK(error_of([] { load_tileset("/nonexistent/file.tiles"); }).code() == ErrorCode::parse_error);
}

TEST_CASE("formatting rejects names that cannot be written") {
  TAS t = blocking_example();
  t.name = "two words";
  CHECK(error_of([&] { format_tileset(t); }).code() == ErrorCode::parse_error);
}
