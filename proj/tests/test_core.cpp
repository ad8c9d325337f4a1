// SPDX-License-Identifier: MIT
#include <catch_amalgamated.hpp>

#include <random>

#include "tam/core.hpp"
#include "tam/fractal.hpp"
#include "tam/library.hpp"

using namespace tam;
using tam::detail::g;
using tam::detail::kNull;
using tam::detail::tile;

namespace {

// Two tiles that meet east/west with the given glue, at temperature tau.
TAS domino(Glue east, Glue west, int tau) {
  return TAS("domino", {tile("a", "a", kNull, east, kNull, kNull), tile("b", "b", kNull, kNull, kNull, west)}, "a",
             tau);
}

Assembly domino_assembly(const TAS& t) {
  Assembly a = t.seed_assembly();
  a.place({1, 0}, t.tileset().index_of("b"));
  return a;
}

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::precondition_violation;
}

}  // namespace

TEST_CASE("interaction strength follows glue equality") {
  const TAS t2 = domino(g("c", 2), g("c", 2), 2);
  const Assembly a2 = domino_assembly(t2);
  CHECK(interaction_strength(a2, {0, 0}, {1, 0}) == 2);
  CHECK(interaction_strength(a2, {1, 0}, {0, 0}) == 2);

  const TAS t1 = domino(g("c", 1), g("c", 1), 2);
  CHECK(interaction_strength(domino_assembly(t1), {0, 0}, {1, 0}) == 1);

  const TAS mixed = domino(g("c", 1), g("c", 2), 2);
  CHECK(interaction_strength(domino_assembly(mixed), {0, 0}, {1, 0}) == 0);

  const TAS other = domino(g("c", 1), g("d", 1), 2);
  CHECK(interaction_strength(domino_assembly(other), {0, 0}, {1, 0}) == 0);

  CHECK(error_of([&] { interaction_strength(a2, {0, 0}, {5, 5}); }) == ErrorCode::position_not_in_domain);
}

TEST_CASE("interaction strength of diagonal neighbours is zero") {
  const TAS t = TAS("diag",
                    {tile("a", "a", g("x", 2), g("x", 2), g("x", 2), g("x", 2)),
                     tile("b", "b", g("x", 2), g("x", 2), g("x", 2), g("y", 2))},
                    "a", 2);
  Assembly a = t.seed_assembly();
  a.place({1, 1}, 1);
  CHECK(interaction_strength(a, {0, 0}, {1, 1}) == 0);
}

TEST_CASE("binding graph of small assemblies") {
  const TAS t = domino(g("c", 1), g("c", 1), 1);
  const BindingGraph single = binding_graph(t.seed_assembly());
  CHECK(single.vertices.size() == 1);
  CHECK(single.edges.empty());

  const BindingGraph pair = binding_graph(domino_assembly(t));
  CHECK(pair.vertices.size() == 2);
  REQUIRE(pair.edges.size() == 1);
  CHECK(pair.edges[0].weight == 1);
}

TEST_CASE("binding graph of the stage-3 Sierpinski assembly is a tree") {
  SimOptions so;
  so.window = Window{0, 0, 7, 7};
  const Assembly a = simulate(make_sn_tas(3), so).result;
  REQUIRE(a.domain() == sierpinski(3));
  const BindingGraph bg = binding_graph(a);
  CHECK(bg.vertices.size() == 27);
  CHECK(bg.edges.size() == 26);
  for (const auto& e : bg.edges) {
    CHECK(e.weight >= 1);
    CHECK(interaction_strength(a, e.a, e.b) == interaction_strength(a, e.b, e.a));
    CHECK(direction_between(e.a, e.b).has_value());
  }
}

TEST_CASE("tau-stability uses the global minimum cut") {
  CHECK_FALSE(is_tau_stable(domino_assembly(domino(g("c", 1), g("c", 1), 2)), 2));
  CHECK(is_tau_stable(domino_assembly(domino(g("c", 2), g("c", 2), 2)), 2));
  const TAS t = domino(g("c", 2), g("c", 2), 2);
  CHECK(is_tau_stable(t.seed_assembly(), 2));

  Assembly apart = t.seed_assembly();
  apart.place({3, 0}, 1);
  CHECK_FALSE(is_tau_stable(apart, 1));

  CHECK(error_of([&] { is_tau_stable(Assembly(t.tiles), 2); }) == ErrorCode::empty_assembly);
}

TEST_CASE("every prefix of a laced run is 2-stable") {
  const TAS t = laced_tas();
  SimOptions so;
  so.window = Window{0, 0, 16, 16};
  so.rng_seed = 5;
  const SimResult r = simulate(t, so);
  for (std::size_t k = 0; k <= r.sequence.steps.size(); k += 7)
    REQUIRE(is_tau_stable(r.sequence.prefix(k), 2));
  CHECK(is_tau_stable(r.result, 2));
}

TEST_CASE("t-frontier and frontier") {
  const TAS t = TAS("corner",
                    {tile("s", "s", g("n", 2), g("e", 2), kNull, kNull),
                     tile("t", "t", g("n", 2), g("e", 2), g("n", 2), g("e", 2)),
                     tile("z", "z", g("q", 2), kNull, kNull, kNull)},
                    "s", 2);
  const Window w{0, 0, 3, 3};
  const auto fr = t_frontier(t.seed_assembly(), t, "t", w);
  CHECK(fr.count({0, 1}) == 1);
  CHECK(fr.count({1, 0}) == 1);
  CHECK(t_frontier(t.seed_assembly(), t, "z", w).empty());
  CHECK(error_of([&] { t_frontier(t.seed_assembly(), t, "nope", w); }) == ErrorCode::unknown_tile);

  const Frontier f = frontier(t.seed_assembly(), t, w);
  CHECK(f.size() == 2);
  for (const auto& [p, ts] : f) CHECK_FALSE(t.seed_assembly().contains(p));
}

TEST_CASE("weak Sierpinski seed frontier has the two boundary successors") {
  const TAS t = weak_sierpinski();
  const Frontier f = frontier(t.seed_assembly(), t, Window{0, 0, 7, 7});
  REQUIRE(f.size() == 2);
  CHECK(f.count({1, 0}) == 1);
  CHECK(f.count({0, 1}) == 1);
}

TEST_CASE("terminal assemblies have an empty frontier") {
  const TAS t = blocking_example();
  SimOptions so;
  so.window = Window{0, 0, 7, 7};
  const SimResult r = simulate(t, so);
  CHECK(r.terminal_in_window);
  CHECK(frontier(r.result, t, so.window).empty());
  CHECK(r.result.size() == 8);
}

TEST_CASE("attach enforces the frontier") {
  const TAS t2 = domino(g("c", 2), g("c", 2), 2);
  const Assembly b = attach(t2.seed_assembly(), {1, 0}, "b", t2);
  CHECK(b.size() == 2);
  CHECK(is_tau_stable(b, 2));
  CHECK(error_of([&] { attach(b, {1, 0}, "b", t2); }) == ErrorCode::occupied);

  const TAS t1 = domino(g("c", 1), g("c", 1), 2);
  CHECK(error_of([&] { attach(t1.seed_assembly(), {1, 0}, "b", t1); }) == ErrorCode::not_in_frontier);
  CHECK(error_of([&] { attach(t1.seed_assembly(), {1, 0}, "zz", t1); }) == ErrorCode::unknown_tile);
}

TEST_CASE("frontier soundness on random laced prefixes") {
  const TAS t = laced_tas();
  SimOptions so;
  so.window = Window{0, 0, 8, 8};
  so.rng_seed = 9;
  const SimResult r = simulate(t, so);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = rng() % (r.sequence.steps.size() + 1);
    const Assembly a = r.sequence.prefix(k);
    const Frontier f = frontier(a, t, so.window);
    for (Pos p : empty_neighbors(a)) {
      if (!so.window.contains(p)) continue;
      for (TileIndex ti = 0; ti < t.tileset().size(); ++ti) {
        auto it = f.find(p);
        const bool listed = it != f.end() && std::find(it->second.begin(), it->second.end(), ti) != it->second.end();
        bool ok = true;
        try {
          attach(a, p, ti, t);
        } catch (const Error&) {
          ok = false;
        }
        REQUIRE(ok == listed);
      }
    }
  }
}

TEST_CASE("simulate is deterministic per seed and monotone") {
  const TAS t = laced_tas();
  SimOptions so;
  so.window = Window{0, 0, 8, 8};
  so.rng_seed = 42;
  const SimResult a = simulate(t, so), b = simulate(t, so);
  CHECK(a.sequence.steps == b.sequence.steps);
  CHECK(a.result == b.result);
  validate_sequence(a.sequence, t);
  CHECK(a.result.size() == a.sequence.steps.size() + 1);

  so.policy = Policy::fifo;
  CHECK(simulate(t, so).result.domain() == a.result.domain());
}

TEST_CASE("simulate reaches the documented terminal domains") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SimOptions so;
    so.rng_seed = seed;
    so.window = Window{0, 0, 7, 7};
    CHECK(simulate(blocking_example(), so).result.size() == 8);
    CHECK(simulate(make_sn_tas(3), so).result.domain() == sierpinski(3));
    so.window = Window{0, 0, 16, 16};
    CHECK(within(simulate(laced_tas(), so).result.domain(), Window{0, 0, 15, 15}) == laced(4));
  }
}

TEST_CASE("step cap is reported, not thrown") {
  SimOptions so;
  so.window = Window{0, 0, 7, 7};
  so.max_steps = 3;
  const SimResult r = simulate(blocking_example(), so);
  CHECK(r.step_cap_reached);
  CHECK(r.sequence.steps.size() == 3);
  CHECK_FALSE(r.terminal_in_window);
}

TEST_CASE("restriction") {
  SimOptions so;
  so.window = Window{0, 0, 7, 7};
  const Assembly a = simulate(make_sn_tas(3), so).result;
  CHECK(restrict_to(a, a.domain()) == a);
  CHECK(restrict_to(a, {}).empty());
  CHECK(error_of([&] { restrict_to(a, {{7, 7}}); }) == ErrorCode::not_subset);

  std::mt19937_64 rng(3);
  const std::set<Pos> dom = a.domain();
  for (int trial = 0; trial < 20; ++trial) {
    std::set<Pos> x;
    for (Pos p : dom)
      if (rng() % 2) x.insert(p);
    const BindingGraph sub = binding_graph(restrict_to(a, x));
    std::size_t expect = 0;
    for (const auto& e : binding_graph(a).edges)
      if (x.count(e.a) && x.count(e.b)) ++expect;
    CHECK(sub.edges.size() == expect);
    CHECK(sub.vertices.size() == x.size());
  }
}

TEST_CASE("tile set construction rejects bad input") {
  CHECK(error_of([] { TileSet(std::vector<TileType>{}); }) == ErrorCode::precondition_violation);
  CHECK(error_of([] {
          TileSet({tile("a", "", g("x"), kNull, kNull, kNull), tile("a", "", g("y"), kNull, kNull, kNull)});
        }) == ErrorCode::duplicate_id);
  CHECK(error_of([] {
          TileSet({tile("a", "", g("x"), kNull, kNull, kNull), tile("b", "", g("x"), kNull, kNull, kNull)});
        }) == ErrorCode::duplicate_type);
  CHECK(error_of([] { TAS("t", {tile("a", "", g("x"), kNull, kNull, kNull)}, "b", 1); }) == ErrorCode::bad_seed);
  CHECK(error_of([] { TAS("t", {tile("a", "", g("x"), kNull, kNull, kNull)}, "a", 0); }) == ErrorCode::out_of_range);
}
