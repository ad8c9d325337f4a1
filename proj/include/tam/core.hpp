// SPDX-License-Identifier: MIT
// Abstract Tile Assembly Model: glues, tile types, assemblies, binding
// graphs, stability, frontiers, attachment and seeded simulation.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/connected_components.hpp>
#include <boost/graph/one_bit_color_map.hpp>
#include <boost/graph/stoer_wagner_min_cut.hpp>
#include <boost/property_map/property_map.hpp>

namespace tam {

enum class ErrorCode {
  position_not_in_domain,
  empty_assembly,
  unknown_tile,
  not_in_frontier,
  occupied,
  not_subset,
  invalid_sequence,
  parse_error,
  duplicate_id,
  duplicate_type,
  bad_seed,
  bad_strength,
  out_of_range,
  precondition_violation,
  budget_exceeded,
  unknown_precedence,
  position_not_attached_by_sequence,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::position_not_in_domain: return "position-not-in-domain";
    case ErrorCode::empty_assembly: return "empty-assembly";
    case ErrorCode::unknown_tile: return "unknown-tile";
    case ErrorCode::not_in_frontier: return "not-in-frontier";
    case ErrorCode::occupied: return "occupied";
    case ErrorCode::not_subset: return "not-subset";
    case ErrorCode::invalid_sequence: return "invalid-sequence";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::duplicate_id: return "duplicate-id";
    case ErrorCode::duplicate_type: return "duplicate-type";
    case ErrorCode::bad_seed: return "bad-seed";
    case ErrorCode::bad_strength: return "bad-strength";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::precondition_violation: return "precondition-violation";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::unknown_precedence: return "unknown-precedence";
    case ErrorCode::position_not_attached_by_sequence: return "position-not-attached-by-sequence";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Lattice geometry

enum class Dir : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };
inline constexpr std::array<Dir, 4> kDirs{Dir::N, Dir::E, Dir::S, Dir::W};

constexpr Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) % 4); }
constexpr int index(Dir d) { return static_cast<int>(d); }

inline const char* dir_name(Dir d) {
  static constexpr const char* names[] = {"N", "E", "S", "W"};
  return names[index(d)];
}

struct Pos {
  std::int64_t x = 0;
  std::int64_t y = 0;
  // Row-major order: (y, x).
  friend bool operator<(const Pos& a, const Pos& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
  friend bool operator==(const Pos& a, const Pos& b) = default;
};

constexpr Pos offset(Dir d) {
  switch (d) {
    case Dir::N: return {0, 1};
    case Dir::E: return {1, 0};
    case Dir::S: return {0, -1};
    case Dir::W: return {-1, 0};
  }
  return {0, 0};
}

constexpr Pos step(Pos p, Dir d) {
  const Pos o = offset(d);
  return {p.x + o.x, p.y + o.y};
}

inline std::optional<Dir> direction_between(Pos from, Pos to) {
  for (Dir d : kDirs)
    if (step(from, d) == to) return d;
  return std::nullopt;
}

struct PosHash {
  std::size_t operator()(const Pos& p) const noexcept {
    return std::hash<std::int64_t>()(p.x * 1000003LL) ^ std::hash<std::int64_t>()(p.y + 0x9e3779b97f4a7c15LL);
  }
};

// Inclusive lattice bounds.
struct Window {
  std::int64_t x_min = 0, y_min = 0, x_max = 0, y_max = 0;

  static Window square(std::int64_t side) {
    if (side <= 0) throw Error(ErrorCode::out_of_range, "window side must be positive");
    return {0, 0, side - 1, side - 1};
  }
  bool contains(Pos p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool valid() const { return x_min <= x_max && y_min <= y_max; }
  friend bool operator==(const Window&, const Window&) = default;
};

// ---------------------------------------------------------------------------
// Glues and tiles

struct Glue {
  std::string color;
  int strength = 0;

  bool is_null() const { return strength == 0; }
  friend bool operator==(const Glue&, const Glue&) = default;
  friend bool operator<(const Glue& a, const Glue& b) {
    return a.strength != b.strength ? a.strength < b.strength : a.color < b.color;
  }
};

// Strength contributed by two facing glues.
inline int bond(const Glue& a, const Glue& b) {
  return (a.strength > 0 && a == b) ? a.strength : 0;
}

struct TileType {
  std::string id;
  std::string label;
  std::array<Glue, 4> glues;  // indexed by Dir

  const Glue& glue(Dir d) const { return glues[index(d)]; }
  Glue& glue(Dir d) { return glues[index(d)]; }
  friend bool operator==(const TileType&, const TileType&) = default;
};

using TileIndex = std::uint32_t;

class TileSet {
 public:
  TileSet() = default;
  explicit TileSet(std::vector<TileType> tiles) : tiles_(std::move(tiles)) {
    if (tiles_.empty()) throw Error(ErrorCode::precondition_violation, "tile set is empty");
    std::set<std::array<Glue, 4>> seen;
    for (std::size_t i = 0; i < tiles_.size(); ++i) {
      const TileType& t = tiles_[i];
      if (t.id.empty()) throw Error(ErrorCode::parse_error, "tile with empty id");
      if (!by_id_.emplace(t.id, static_cast<TileIndex>(i)).second)
        throw Error(ErrorCode::duplicate_id, "duplicate tile id '" + t.id + "'");
      for (const Glue& g : t.glues)
        if (g.strength < 0 || g.strength > 255)
          throw Error(ErrorCode::bad_strength, "tile '" + t.id + "' has strength outside [0,255]");
      if (!seen.insert(t.glues).second)
        throw Error(ErrorCode::duplicate_type, "tile '" + t.id + "' repeats the glues of another tile type");
    }
    rank_.resize(tiles_.size());
    std::vector<TileIndex> order(tiles_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<TileIndex>(i);
    std::sort(order.begin(), order.end(),
              [&](TileIndex a, TileIndex b) { return tiles_[a].id < tiles_[b].id; });
    for (std::size_t r = 0; r < order.size(); ++r) rank_[order[r]] = static_cast<std::uint32_t>(r);
    for (std::size_t i = 0; i < tiles_.size(); ++i)
      for (Dir d : kDirs) {
        const Glue& g = tiles_[i].glue(d);
        if (!g.is_null()) by_glue_[index(d)][g].push_back(static_cast<TileIndex>(i));
      }
  }

  std::size_t size() const { return tiles_.size(); }
  const TileType& operator[](TileIndex i) const { return tiles_.at(i); }
  const std::vector<TileType>& tiles() const { return tiles_; }

  std::optional<TileIndex> find(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }
  TileIndex index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw Error(ErrorCode::unknown_tile, "no tile with id '" + id + "'");
    return *i;
  }
  // Position of a tile in the lexicographic order of ids.
  std::uint32_t rank(TileIndex i) const { return rank_.at(i); }

  // Tiles whose glue on side d equals g.
  const std::vector<TileIndex>& with_glue(Dir d, const Glue& g) const {
    static const std::vector<TileIndex> none;
    const auto& m = by_glue_[index(d)];
    auto it = m.find(g);
    return it == m.end() ? none : it->second;
  }

 private:
  std::vector<TileType> tiles_;
  std::unordered_map<std::string, TileIndex> by_id_;
  std::vector<std::uint32_t> rank_;
  std::array<std::map<Glue, std::vector<TileIndex>>, 4> by_glue_;
};

using TileSetPtr = std::shared_ptr<const TileSet>;

// ---------------------------------------------------------------------------
// Assemblies

class Assembly {
 public:
  using Map = std::map<Pos, TileIndex>;

  Assembly() = default;
  explicit Assembly(TileSetPtr tiles) : tiles_(std::move(tiles)) {}
  Assembly(TileSetPtr tiles, Map placement) : tiles_(std::move(tiles)), placement_(std::move(placement)) {
    for (const auto& [p, t] : placement_)
      if (t >= tiles_->size()) throw Error(ErrorCode::unknown_tile, "tile index out of range");
  }

  const TileSetPtr& tileset_ptr() const { return tiles_; }
  const TileSet& tileset() const { return *tiles_; }
  const Map& placement() const { return placement_; }
  std::size_t size() const { return placement_.size(); }
  bool empty() const { return placement_.empty(); }
  bool contains(Pos p) const { return placement_.count(p) != 0; }

  std::optional<TileIndex> at(Pos p) const {
    auto it = placement_.find(p);
    if (it == placement_.end()) return std::nullopt;
    return it->second;
  }
  const TileType& tile_at(Pos p) const {
    auto it = placement_.find(p);
    if (it == placement_.end()) throw Error(ErrorCode::position_not_in_domain, "no tile at position");
    return (*tiles_)[it->second];
  }

  std::set<Pos> domain() const {
    std::set<Pos> d;
    for (const auto& kv : placement_) d.insert(kv.first);
    return d;
  }

  // Low-level mutation without frontier validation; used by constructions
  // that build configurations directly.
  void place(Pos p, TileIndex t) {
    if (t >= tiles_->size()) throw Error(ErrorCode::unknown_tile, "tile index out of range");
    if (!placement_.emplace(p, t).second) throw Error(ErrorCode::occupied, "position already occupied");
  }
  void erase(Pos p) { placement_.erase(p); }

  friend bool operator==(const Assembly& a, const Assembly& b) {
    return a.placement_ == b.placement_;
  }

 private:
  TileSetPtr tiles_;
  Map placement_;
};

struct TAS {
  std::string name;
  TileSetPtr tiles;
  TileIndex seed = 0;
  int temperature = 2;

  TAS() = default;
  TAS(std::string n, TileSetPtr ts, TileIndex s, int tau)
      : name(std::move(n)), tiles(std::move(ts)), seed(s), temperature(tau) {
    if (!tiles) throw Error(ErrorCode::precondition_violation, "null tile set");
    if (seed >= tiles->size()) throw Error(ErrorCode::bad_seed, "seed tile not in tile set");
    if (temperature < 1) throw Error(ErrorCode::out_of_range, "temperature must be positive");
  }
  TAS(std::string n, std::vector<TileType> tiles_in, const std::string& seed_id, int tau)
      : TAS(std::move(n), std::make_shared<const TileSet>(std::move(tiles_in)), 0, tau) {
    auto s = tiles->find(seed_id);
    if (!s) throw Error(ErrorCode::bad_seed, "seed id '" + seed_id + "' not declared");
    seed = *s;
  }

  const TileSet& tileset() const { return *tiles; }

  Assembly seed_assembly() const {
    Assembly a(tiles);
    a.place({0, 0}, seed);
    return a;
  }

  // Same name, temperature, seed and tile records in the same order.
  friend bool operator==(const TAS& a, const TAS& b) {
    return a.name == b.name && a.temperature == b.temperature && a.seed == b.seed &&
           a.tiles->tiles() == b.tiles->tiles();
  }
};

struct Step {
  Pos pos;
  TileIndex tile;
  friend bool operator==(const Step&, const Step&) = default;
};

struct AssemblySequence {
  Assembly initial;
  std::vector<Step> steps;
  Window window;

  // Replays the first k steps on top of the initial assembly without checks.
  Assembly prefix(std::size_t k) const {
    Assembly a = initial;
    for (std::size_t i = 0; i < k && i < steps.size(); ++i) a.place(steps[i].pos, steps[i].tile);
    return a;
  }
  Assembly result() const { return prefix(steps.size()); }

  // Attachment index of each position; seed positions get index 0 and the
  // i-th step gets index i+1.
  std::map<Pos, std::size_t> order() const {
    std::map<Pos, std::size_t> idx;
    for (const auto& kv : initial.placement()) idx[kv.first] = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) idx[steps[i].pos] = i + 1;
    return idx;
  }
};

enum class Policy { uniform_random, fifo };

inline const char* to_string(Policy p) { return p == Policy::fifo ? "fifo" : "uniform-random"; }

struct SimOptions {
  std::uint64_t rng_seed = 0;
  Window window{0, 0, 63, 63};
  std::optional<std::size_t> max_steps;
  Policy policy = Policy::uniform_random;
};

// ---------------------------------------------------------------------------
// Interaction and binding graph

inline int interaction_strength(const Assembly& a, Pos m, Pos n) {
  if (!a.contains(m) || !a.contains(n))
    throw Error(ErrorCode::position_not_in_domain, "interaction_strength needs both positions placed");
  auto d = direction_between(m, n);
  if (!d) return 0;
  return bond(a.tile_at(m).glue(*d), a.tile_at(n).glue(opposite(*d)));
}

struct BindingGraph {
  std::vector<Pos> vertices;  // sorted by (y, x)
  struct Edge {
    Pos a, b;
    int weight;
  };
  std::vector<Edge> edges;
};

inline BindingGraph binding_graph(const Assembly& a) {
  BindingGraph g;
  for (const auto& [p, t] : a.placement()) {
    g.vertices.push_back(p);
    for (Dir d : {Dir::E, Dir::N}) {
      Pos q = step(p, d);
      auto u = a.at(q);
      if (!u) continue;
      int w = bond(a.tileset()[t].glue(d), a.tileset()[*u].glue(opposite(d)));
      if (w > 0) g.edges.push_back({p, q, w});
    }
  }
  return g;
}

// Weight of a global minimum cut; 0 for a disconnected graph.
inline long min_cut_weight(const BindingGraph& g) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                      boost::property<boost::edge_weight_t, long>>;
  const std::size_t n = g.vertices.size();
  if (n < 2) throw Error(ErrorCode::precondition_violation, "min cut needs at least two vertices");
  std::map<Pos, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id[g.vertices[i]] = i;
  Graph bg(n);
  for (const auto& e : g.edges) boost::add_edge(id.at(e.a), id.at(e.b), static_cast<long>(e.weight), bg);
  std::vector<int> comp(n);
  if (boost::connected_components(bg, comp.data()) > 1) return 0;
  auto parity = boost::make_one_bit_color_map(boost::num_vertices(bg), boost::get(boost::vertex_index, bg));
  return boost::stoer_wagner_min_cut(bg, boost::get(boost::edge_weight, bg), boost::parity_map(parity));
}

inline bool is_tau_stable(const Assembly& a, int tau) {
  if (a.empty()) throw Error(ErrorCode::empty_assembly, "stability of an empty assembly is undefined");
  if (a.size() == 1) return true;
  return min_cut_weight(binding_graph(a)) >= tau;
}

// ---------------------------------------------------------------------------
// Frontier

// Summed strength with which tile t would bind at empty position p.
inline int binding_strength(const Assembly& a, Pos p, TileIndex t) {
  const TileType& tt = a.tileset()[t];
  int s = 0;
  for (Dir d : kDirs) {
    auto u = a.at(step(p, d));
    if (u) s += bond(tt.glue(d), a.tileset()[*u].glue(opposite(d)));
  }
  return s;
}

// Tiles attachable at an empty position p, ordered by tile id.
inline std::vector<TileIndex> attachable_at(const Assembly& a, Pos p, int tau) {
  std::vector<TileIndex> out;
  if (a.contains(p)) return out;
  std::unordered_map<TileIndex, int> acc;
  const TileSet& ts = a.tileset();
  for (Dir d : kDirs) {
    auto u = a.at(step(p, d));
    if (!u) continue;
    const Glue& g = ts[*u].glue(opposite(d));
    if (g.is_null()) continue;
    for (TileIndex t : ts.with_glue(d, g)) acc[t] += g.strength;
  }
  for (const auto& [t, s] : acc)
    if (s >= tau) out.push_back(t);
  std::sort(out.begin(), out.end(), [&](TileIndex x, TileIndex y) { return ts.rank(x) < ts.rank(y); });
  return out;
}

// Empty lattice neighbors of an assembly, optionally restricted to a window.
inline std::set<Pos> empty_neighbors(const Assembly& a) {
  std::set<Pos> out;
  for (const auto& kv : a.placement())
    for (Dir d : kDirs) {
      Pos q = step(kv.first, d);
      if (!a.contains(q)) out.insert(q);
    }
  return out;
}

using Frontier = std::map<Pos, std::vector<TileIndex>>;

inline Frontier frontier(const Assembly& a, const TAS& tas, const Window& w) {
  Frontier f;
  for (Pos p : empty_neighbors(a)) {
    if (!w.contains(p)) continue;
    auto ts = attachable_at(a, p, tas.temperature);
    if (!ts.empty()) f.emplace(p, std::move(ts));
  }
  return f;
}

// Attachable positions that lie outside the window; these are what
// truncation suppresses.
inline Frontier frontier_outside(const Assembly& a, const TAS& tas, const Window& w) {
  Frontier f;
  for (Pos p : empty_neighbors(a)) {
    if (w.contains(p)) continue;
    auto ts = attachable_at(a, p, tas.temperature);
    if (!ts.empty()) f.emplace(p, std::move(ts));
  }
  return f;
}

inline std::set<Pos> t_frontier(const Assembly& a, const TAS& tas, const std::string& tile_id, const Window& w) {
  const TileIndex t = tas.tileset().index_of(tile_id);
  std::set<Pos> out;
  for (Pos p : empty_neighbors(a))
    if (w.contains(p) && binding_strength(a, p, t) >= tas.temperature) out.insert(p);
  return out;
}

inline Assembly attach(const Assembly& a, Pos pos, TileIndex t, const TAS& tas) {
  if (t >= tas.tileset().size()) throw Error(ErrorCode::unknown_tile, "tile index out of range");
  if (a.contains(pos)) throw Error(ErrorCode::occupied, "position already occupied");
  if (binding_strength(a, pos, t) < tas.temperature)
    throw Error(ErrorCode::not_in_frontier, "tile '" + tas.tileset()[t].id + "' does not bind strongly enough");
  Assembly b = a;
  b.place(pos, t);
  return b;
}

inline Assembly attach(const Assembly& a, Pos pos, const std::string& tile_id, const TAS& tas) {
  return attach(a, pos, tas.tileset().index_of(tile_id), tas);
}

inline Assembly restrict_to(const Assembly& a, const std::set<Pos>& X) {
  Assembly::Map m;
  for (Pos p : X) {
    auto t = a.at(p);
    if (!t) throw Error(ErrorCode::not_subset, "restriction set is not a subset of the domain");
    m.emplace(p, *t);
  }
  return Assembly(a.tileset_ptr(), std::move(m));
}

// Checks that every step of the sequence is a legal attachment.
inline void validate_sequence(const AssemblySequence& seq, const TAS& tas) {
  Assembly a = seq.initial;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const Step& s = seq.steps[i];
    if (!seq.window.contains(s.pos))
      throw Error(ErrorCode::invalid_sequence, "step " + std::to_string(i) + " lies outside the window");
    if (a.contains(s.pos) || s.tile >= tas.tileset().size() ||
        binding_strength(a, s.pos, s.tile) < tas.temperature)
      throw Error(ErrorCode::invalid_sequence, "step " + std::to_string(i) + " is not a frontier attachment");
    a.place(s.pos, s.tile);
  }
}

// ---------------------------------------------------------------------------
// Simulation

struct SimResult {
  AssemblySequence sequence;
  Assembly result;
  bool terminal_in_window = false;  // frontier inside the window is empty
  bool step_cap_reached = false;
  std::size_t outside_frontier = 0;  // attachable positions beyond the window
};

namespace detail {

// Incrementally maintained frontier used by the simulator and explorers.
class LiveFrontier {
 public:
  struct Entry {
    TileIndex tile;
    std::uint64_t stamp;
  };

  LiveFrontier(const TAS& tas, const Window& w, std::set<Pos> forbidden = {})
      : tas_(tas), w_(w), forbidden_(std::move(forbidden)) {}

  void rebuild(const Assembly& a) {
    entries_.clear();
    for (Pos p : empty_neighbors(a)) refresh(a, p);
  }

  // Recomputes candidates at p and its neighbours after p was filled.
  void after_place(const Assembly& a, Pos p) {
    entries_.erase(p);
    for (Dir d : kDirs) refresh(a, step(p, d));
  }

  bool empty() const { return entries_.empty(); }
  const std::map<Pos, std::vector<Entry>>& entries() const { return entries_; }

  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& kv : entries_) n += kv.second.size();
    return n;
  }

 private:
  void refresh(const Assembly& a, Pos p) {
    if (a.contains(p) || !w_.contains(p) || forbidden_.count(p)) {
      entries_.erase(p);
      return;
    }
    auto ts = attachable_at(a, p, tas_.temperature);
    if (ts.empty()) {
      entries_.erase(p);
      return;
    }
    auto& cur = entries_[p];
    std::vector<Entry> next;
    for (TileIndex t : ts) {
      auto it = std::find_if(cur.begin(), cur.end(), [&](const Entry& e) { return e.tile == t; });
      next.push_back(it != cur.end() ? *it : Entry{t, clock_++});
    }
    cur = std::move(next);
  }

  const TAS& tas_;
  Window w_;
  std::set<Pos> forbidden_;
  std::map<Pos, std::vector<Entry>> entries_;
  std::uint64_t clock_ = 0;
};

}  // namespace detail

// Runs the seeded scheduler. Positions in `forbidden` are never filled.
inline SimResult simulate_from(const TAS& tas, const Assembly& start, const SimOptions& opts,
                               const std::set<Pos>& forbidden = {}) {
  if (!opts.window.valid()) throw Error(ErrorCode::out_of_range, "invalid window");
  SimResult r;
  r.sequence.initial = start;
  r.sequence.window = opts.window;
  Assembly a = start;
  detail::LiveFrontier live(tas, opts.window, forbidden);
  live.rebuild(a);
  std::mt19937_64 rng(opts.rng_seed);
  while (!live.empty()) {
    if (opts.max_steps && r.sequence.steps.size() >= *opts.max_steps) {
      r.step_cap_reached = true;
      break;
    }
    Pos pick_pos{};
    TileIndex pick_tile = 0;
    if (opts.policy == Policy::fifo) {
      std::uint64_t best = UINT64_MAX;
      for (const auto& [p, es] : live.entries())
        for (const auto& e : es)
          if (e.stamp < best) {
            best = e.stamp;
            pick_pos = p;
            pick_tile = e.tile;
          }
    } else {
      std::uint64_t k = rng() % live.count();
      bool done = false;
      for (const auto& [p, es] : live.entries()) {
        if (k < es.size()) {
          pick_pos = p;
          pick_tile = es[k].tile;
          done = true;
          break;
        }
        k -= es.size();
      }
      if (!done) throw Error(ErrorCode::invalid_sequence, "frontier bookkeeping out of sync");
    }
    a.place(pick_pos, pick_tile);
    r.sequence.steps.push_back({pick_pos, pick_tile});
    live.after_place(a, pick_pos);
  }
  r.terminal_in_window = live.empty();
  r.outside_frontier = frontier_outside(a, tas, opts.window).size();
  r.result = std::move(a);
  return r;
}

inline SimResult simulate(const TAS& tas, const SimOptions& opts) {
  return simulate_from(tas, tas.seed_assembly(), opts);
}

}  // namespace tam
