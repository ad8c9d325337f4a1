// SPDX-License-Identifier: MIT
// Local and conditional determinism checkers, a bounded precedence oracle
// and an exhaustive directedness oracle.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tam/core.hpp"

namespace tam {

using DirSet = std::set<Dir>;

struct SideSets {
  DirSet insides;
  DirSet outsides;
};

enum class Verdict { pass, fail, unknown_precedence };
enum class ConditionStatus { pass, fail, inconclusive_truncation, unknown_precedence };
enum class PrecedenceStatus { proven_within_window, refuted, exhausted_unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unknown_precedence: return "unknown-precedence";
  }
  return "unknown";
}

inline const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::pass: return "pass";
    case ConditionStatus::fail: return "fail";
    case ConditionStatus::inconclusive_truncation: return "inconclusive-truncation";
    case ConditionStatus::unknown_precedence: return "unknown-precedence";
  }
  return "unknown";
}

inline const char* to_string(PrecedenceStatus s) {
  switch (s) {
    case PrecedenceStatus::proven_within_window: return "proven-within-window";
    case PrecedenceStatus::refuted: return "refuted";
    case PrecedenceStatus::exhausted_unknown: return "exhausted-unknown";
  }
  return "unknown";
}

struct PrecedenceVerdict {
  PrecedenceStatus status = PrecedenceStatus::exhausted_unknown;
  std::optional<AssemblySequence> witness;  // set for refuted verdicts
  bool vacuous = false;                     // the later position is unreachable in the window
  std::string method;                       // seed, simulation, closure or exhaustive
  std::size_t states_explored = 0;
};

struct PrecedenceOptions {
  std::size_t state_budget = 200000;
  std::vector<std::uint64_t> refute_seeds{1, 2, 3, 4};
};

struct ConditionIssue {
  Pos pos;
  std::string tile;                    // tile at pos, empty for frontier entries
  std::vector<std::string> offending;  // competing tile types
  std::string detail;
};

struct ConditionResult {
  int condition = 0;
  ConditionStatus status = ConditionStatus::pass;
  std::vector<ConditionIssue> issues;
};

struct DepsideFact {
  Pos m;
  Dir u;
  PrecedenceStatus status;
  std::string method;
};

struct DeterminismReport {
  bool conditional = false;
  Verdict verdict = Verdict::pass;
  std::array<ConditionResult, 3> conditions{
      ConditionResult{1, ConditionStatus::pass, {}}, ConditionResult{2, ConditionStatus::pass, {}},
      ConditionResult{3, ConditionStatus::pass, {}}};
  std::vector<DepsideFact> depsides_used;
  Window window;

  const ConditionResult& condition(int k) const { return conditions.at(static_cast<std::size_t>(k - 1)); }
};

// ---------------------------------------------------------------------------
// Side sets

namespace det_detail {

inline DirSet insides_in(const Assembly& a, const std::map<Pos, std::size_t>& order, Pos m) {
  DirSet out;
  const std::size_t km = order.at(m);
  for (Dir d : kDirs) {
    Pos q = step(m, d);
    auto it = order.find(q);
    if (it != order.end() && it->second < km && interaction_strength(a, m, q) > 0) out.insert(d);
  }
  return out;
}

inline DirSet outsides_in(const Assembly& a, const std::map<Pos, std::size_t>& order, Pos m) {
  DirSet out;
  const std::size_t km = order.at(m);
  for (Dir d : kDirs) {
    Pos q = step(m, d);
    auto it = order.find(q);
    if (it != order.end() && it->second > km && interaction_strength(a, m, q) > 0) out.insert(d);
  }
  return out;
}

}  // namespace det_detail

inline DirSet insides(const AssemblySequence& seq, Pos m) {
  const auto order = seq.order();
  auto it = order.find(m);
  if (it == order.end() || it->second == 0)
    throw Error(ErrorCode::position_not_attached_by_sequence, "position is not attached by the sequence");
  return det_detail::insides_in(seq.result(), order, m);
}

inline DirSet outsides(const AssemblySequence& seq, Pos m) {
  const auto order = seq.order();
  if (!order.count(m))
    throw Error(ErrorCode::position_not_attached_by_sequence, "position is not in the sequence result");
  return det_detail::outsides_in(seq.result(), order, m);
}

inline std::map<Pos, SideSets> side_sets(const AssemblySequence& seq) {
  const auto order = seq.order();
  const Assembly a = seq.result();
  std::map<Pos, SideSets> out;
  for (const auto& [p, k] : order) {
    SideSets s;
    if (k > 0) s.insides = det_detail::insides_in(a, order, p);
    s.outsides = det_detail::outsides_in(a, order, p);
    out.emplace(p, std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive exploration of assembly states

namespace det_detail {

inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 128-bit incremental fingerprint of an assembly: XOR of per-placement keys.
struct Fingerprint {
  std::uint64_t lo = 0, hi = 0;
  void toggle(Pos p, TileIndex t) {
    const std::uint64_t base =
        mix(static_cast<std::uint64_t>(p.x) * 0x100000001b3ULL ^ mix(static_cast<std::uint64_t>(p.y)) ^
            (static_cast<std::uint64_t>(t) << 40));
    lo ^= mix(base ^ 0x5555);
    hi ^= mix(base ^ 0xaaaa0000);
  }
  bool operator==(const Fingerprint& o) const { return lo == o.lo && hi == o.hi; }
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const { return static_cast<std::size_t>(f.lo ^ (f.hi * 31)); }
};

enum class ExploreOutcome { completed, stopped, budget };

// Depth-first search over every assembly reachable from `start` by single
// attachments inside w that avoid `forbidden`. The visitor sees each new
// state once together with the steps that produced it and whether the state
// is terminal inside the window; returning true stops the search.
class Explorer {
 public:
  using Visitor = std::function<bool(const Assembly&, const std::vector<Step>&, bool terminal)>;

  Explorer(const TAS& tas, const Window& w, std::set<Pos> forbidden, std::size_t budget)
      : tas_(tas), w_(w), forbidden_(std::move(forbidden)), budget_(budget) {}

  ExploreOutcome run(const Assembly& start, const Visitor& visit) {
    Assembly a = start;
    Fingerprint f;
    for (const auto& [p, t] : a.placement()) f.toggle(p, t);
    seen_.clear();
    path_.clear();
    seen_.insert(f);
    return dfs(a, f, visit);
  }

  std::size_t states() const { return seen_.size(); }

 private:
  ExploreOutcome dfs(Assembly& a, Fingerprint f, const Visitor& visit) {
    Frontier fr = frontier(a, tas_, w_);
    for (Pos p : forbidden_) fr.erase(p);
    if (visit(a, path_, fr.empty())) return ExploreOutcome::stopped;
    for (const auto& [p, tiles] : fr)
      for (TileIndex t : tiles) {
        Fingerprint g = f;
        g.toggle(p, t);
        if (!seen_.insert(g).second) continue;
        if (seen_.size() > budget_) return ExploreOutcome::budget;
        a.place(p, t);
        path_.push_back({p, t});
        auto r = dfs(a, g, visit);
        path_.pop_back();
        a.erase(p);
        if (r != ExploreOutcome::completed) return r;
      }
    return ExploreOutcome::completed;
  }

  const TAS& tas_;
  Window w_;
  std::set<Pos> forbidden_;
  std::size_t budget_;
  std::unordered_set<Fingerprint, FingerprintHash> seen_;
  std::vector<Step> path_;
};

// Candidate tiles at p with their summed bond strength to tiles of `a` at
// positions in `support` (all placed positions when support is null).
inline std::unordered_map<TileIndex, int> candidate_strengths(const Assembly& a, Pos p,
                                                              const std::set<Pos>* support) {
  std::unordered_map<TileIndex, int> acc;
  const TileSet& ts = a.tileset();
  for (Dir d : kDirs) {
    Pos q = step(p, d);
    if (support && !support->count(q)) continue;
    auto u = a.at(q);
    if (!u) continue;
    const Glue& g = ts[*u].glue(opposite(d));
    if (g.is_null()) continue;
    for (TileIndex t : ts.with_glue(d, g)) acc[t] += g.strength;
  }
  return acc;
}

inline bool has_rival(const Assembly& a, Pos p, const std::set<Pos>& support, int tau,
                      std::optional<TileIndex> except) {
  for (const auto& [t, s] : candidate_strengths(a, p, &support))
    if (s >= tau && (!except || t != *except)) return true;
  return false;
}

// Positions of `ref` reachable from the initial positions when positions in
// `excluded` are never filled and each added position carries ref's tile
// with enough support from positions already in the set.
inline std::set<Pos> closure(const Assembly& ref, const std::set<Pos>& initial, const std::set<Pos>& excluded,
                             int tau) {
  std::set<Pos> r = initial;
  std::vector<Pos> work;
  for (Pos p : initial)
    for (Dir d : kDirs) work.push_back(step(p, d));
  while (!work.empty()) {
    Pos p = work.back();
    work.pop_back();
    if (r.count(p) || excluded.count(p)) continue;
    auto t = ref.at(p);
    if (!t) continue;
    auto cs = candidate_strengths(ref, p, &r);
    auto it = cs.find(*t);
    if (it == cs.end() || it->second < tau) continue;
    r.insert(p);
    for (Dir d : kDirs) work.push_back(step(p, d));
  }
  return r;
}

// Proves that no sequence inside w that avoids `excluded` ever leaves the
// tiles of ref on the closure R. Returns R on success.
inline std::optional<std::set<Pos>> closure_proof(const TAS& tas, const Assembly& ref, const std::set<Pos>& initial,
                                                  const std::set<Pos>& excluded, const Window& w) {
  const int tau = tas.temperature;
  const std::set<Pos> r = closure(ref, initial, excluded, tau);
  // A different tile at a closure position p could only bind using tiles
  // that are placeable without p.
  for (Pos p : r) {
    if (initial.count(p)) continue;
    std::set<Pos> others = r;
    others.erase(p);
    if (!has_rival(ref, p, others, tau, ref.at(p))) continue;
    std::set<Pos> ex = excluded;
    ex.insert(p);
    if (has_rival(ref, p, closure(ref, initial, ex, tau), tau, ref.at(p))) return std::nullopt;
  }
  // No tile at all may bind just outside the closure.
  std::set<Pos> rim;
  for (Pos p : r)
    for (Dir d : kDirs) {
      Pos q = step(p, d);
      if (!r.count(q) && !excluded.count(q) && w.contains(q)) rim.insert(q);
    }
  for (Pos q : rim)
    if (has_rival(ref, q, r, tau, std::nullopt)) return std::nullopt;
  return r;
}

inline AssemblySequence witness_prefix(const AssemblySequence& seq, Pos n) {
  AssemblySequence w{seq.initial, {}, seq.window};
  for (const Step& s : seq.steps) {
    w.steps.push_back(s);
    if (s.pos == n) break;
  }
  return w;
}

}  // namespace det_detail

// ---------------------------------------------------------------------------
// Precedence

// Decides whether m attaches before n in every assembly sequence confined to
// w. Refutation searches for a sequence that places n while m is still
// empty. A proof either shows that a reference terminal assembly, restricted
// to what can grow without m, is the only thing that can grow without m, or
// exhausts every state that avoids m.
inline PrecedenceVerdict precedes_in_tas(const TAS& tas, Pos m, Pos n, const Window& w,
                                         const PrecedenceOptions& opts = {}) {
  PrecedenceVerdict v;
  const Assembly seed = tas.seed_assembly();
  std::set<Pos> initial = seed.domain();
  AssemblySequence empty_seq{seed, {}, w};
  if (initial.count(n)) {
    v.status = PrecedenceStatus::refuted;
    v.witness = empty_seq;
    v.method = "seed";
    return v;
  }
  if (initial.count(m)) {
    v.status = PrecedenceStatus::proven_within_window;
    v.method = "seed";
    return v;
  }

  SimOptions so;
  so.window = w;
  so.policy = Policy::fifo;
  const SimResult reference = simulate_from(tas, seed, so);
  if (m == n && reference.result.contains(m)) {
    v.status = PrecedenceStatus::refuted;
    v.witness = det_detail::witness_prefix(reference.sequence, n);
    v.method = "simulation";
    return v;
  }

  // Refutation by sampling sequences that never fill m.
  for (int pol = 0; pol < 2; ++pol)
    for (std::uint64_t s : opts.refute_seeds) {
      so.policy = pol == 0 ? Policy::fifo : Policy::uniform_random;
      so.rng_seed = s;
      SimResult r = simulate_from(tas, seed, so, {m});
      if (r.result.contains(n)) {
        v.status = PrecedenceStatus::refuted;
        v.witness = det_detail::witness_prefix(r.sequence, n);
        v.method = "simulation";
        return v;
      }
      if (pol == 0) break;
    }

  // Proof by closure against the reference terminal assembly.
  if (reference.terminal_in_window) {
    if (!reference.result.contains(n) && det_detail::closure_proof(tas, reference.result, initial, {}, w)) {
      v.status = PrecedenceStatus::proven_within_window;
      v.vacuous = true;
      v.method = "closure";
      return v;
    }
    auto r = det_detail::closure_proof(tas, reference.result, initial, {m}, w);
    if (r && !r->count(n)) {
      v.status = PrecedenceStatus::proven_within_window;
      v.method = "closure";
      return v;
    }
  }

  // Exhaustive search over states that avoid m.
  det_detail::Explorer ex(tas, w, {m}, opts.state_budget);
  std::optional<AssemblySequence> found;
  bool reached_any = false;
  auto outcome = ex.run(seed, [&](const Assembly& a, const std::vector<Step>& path, bool) {
    if (a.contains(n)) {
      found = AssemblySequence{seed, path, w};
      return true;
    }
    return false;
  });
  v.states_explored = ex.states();
  v.method = "exhaustive";
  if (found) {
    v.status = PrecedenceStatus::refuted;
    v.witness = std::move(found);
  } else if (outcome == det_detail::ExploreOutcome::budget) {
    v.status = PrecedenceStatus::exhausted_unknown;
  } else {
    v.status = PrecedenceStatus::proven_within_window;
    // Check reachability of n without the restriction on m.
    det_detail::Explorer all(tas, w, {}, opts.state_budget);
    auto o2 = all.run(seed, [&](const Assembly& a, const std::vector<Step>&, bool) {
      reached_any = a.contains(n);
      return reached_any;
    });
    v.vacuous = o2 == det_detail::ExploreOutcome::completed && !reached_any;
  }
  return v;
}

struct DepsideResult {
  DirSet proven;
  DirSet refuted;
  DirSet unknown;
  std::map<Dir, PrecedenceVerdict> verdicts;
};

inline DepsideResult depsides(const TAS& tas, Pos m, const Window& w, const PrecedenceOptions& opts = {}) {
  DepsideResult r;
  for (Dir d : kDirs) {
    PrecedenceVerdict v = precedes_in_tas(tas, m, step(m, d), w, opts);
    switch (v.status) {
      case PrecedenceStatus::proven_within_window: r.proven.insert(d); break;
      case PrecedenceStatus::refuted: r.refuted.insert(d); break;
      case PrecedenceStatus::exhausted_unknown: r.unknown.insert(d); break;
    }
    r.verdicts.emplace(d, std::move(v));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Determinism checkers

namespace det_detail {

inline std::vector<std::string> rivals(const Assembly& a, Pos m, const std::set<Pos>& removed, int tau) {
  std::set<Pos> support;
  for (Dir d : kDirs) {
    Pos q = step(m, d);
    if (a.contains(q) && !removed.count(q)) support.insert(q);
  }
  std::vector<std::string> out;
  const TileIndex own = *a.at(m);
  for (const auto& [t, s] : candidate_strengths(a, m, &support))
    if (s >= tau && t != own) out.push_back(a.tileset()[t].id);
  std::sort(out.begin(), out.end());
  return out;
}

inline DeterminismReport check_impl(const TAS& tas, const AssemblySequence& seq, const Window& w, bool conditional,
                                    const PrecedenceOptions& opts) {
  validate_sequence(seq, tas);
  DeterminismReport rep;
  rep.conditional = conditional;
  rep.window = w;
  const Assembly a = seq.result();
  const auto sides = side_sets(seq);
  const int tau = tas.temperature;
  const TileSet& ts = tas.tileset();

  // (1) every attachment binds with exactly tau.
  for (const Step& s : seq.steps) {
    int sum = 0;
    for (Dir d : sides.at(s.pos).insides) sum += interaction_strength(a, s.pos, step(s.pos, d));
    if (sum != tau)
      rep.conditions[0].issues.push_back(
          {s.pos, ts[s.tile].id, {}, "inside strength " + std::to_string(sum) + " != " + std::to_string(tau)});
  }
  if (!rep.conditions[0].issues.empty()) rep.conditions[0].status = ConditionStatus::fail;

  // (2) the tile at m is the only one that fits once its output sides (and,
  // for the conditional variant, its dependent sides) are removed.
  std::map<std::pair<Pos, Dir>, PrecedenceVerdict> cache;
  bool unknown = false;
  for (const Step& s : seq.steps) {
    const Pos m = s.pos;
    std::set<Pos> removed;
    for (Dir d : sides.at(m).outsides) removed.insert(step(m, d));
    auto bad = rivals(a, m, removed, tau);
    if (bad.empty()) continue;
    bool m_unknown = false;
    if (conditional) {
      for (Dir d : kDirs) {
        const Pos q = step(m, d);
        if (!a.contains(q) || removed.count(q)) continue;
        const TileType& nb = ts[*a.at(q)];
        const Glue& g = nb.glue(opposite(d));
        bool helps = false;
        for (const std::string& id : bad)
          if (bond(ts[ts.index_of(id)].glue(d), g) > 0) helps = true;
        if (!helps) continue;
        auto key = std::make_pair(m, d);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, precedes_in_tas(tas, m, q, w, opts)).first;
        rep.depsides_used.push_back({m, d, it->second.status, it->second.method});
        if (it->second.status == PrecedenceStatus::proven_within_window)
          removed.insert(q);
        else if (it->second.status == PrecedenceStatus::exhausted_unknown)
          m_unknown = true;
      }
      bad = rivals(a, m, removed, tau);
      if (bad.empty()) continue;
    }
    if (m_unknown) {
      unknown = true;
      rep.conditions[1].issues.push_back({m, ts[s.tile].id, bad, "needed depside is exhausted-unknown"});
    } else {
      rep.conditions[1].issues.push_back({m, ts[s.tile].id, bad, "rival tile types fit"});
    }
  }
  bool fail2 = false;
  for (const auto& is : rep.conditions[1].issues)
    if (is.detail == "rival tile types fit") fail2 = true;
  if (fail2)
    rep.conditions[1].status = ConditionStatus::fail;
  else if (unknown)
    rep.conditions[1].status = ConditionStatus::unknown_precedence;

  // (3) the result is terminal. Frontier entries outside the window cannot
  // be judged and are reported as truncation.
  for (const auto& [p, tiles] : frontier(a, tas, w)) {
    std::vector<std::string> ids;
    for (TileIndex t : tiles) ids.push_back(ts[t].id);
    rep.conditions[2].issues.push_back({p, "", ids, "frontier inside window"});
  }
  if (!rep.conditions[2].issues.empty()) {
    rep.conditions[2].status = ConditionStatus::fail;
  } else {
    for (const auto& [p, tiles] : frontier_outside(a, tas, w)) {
      std::vector<std::string> ids;
      for (TileIndex t : tiles) ids.push_back(ts[t].id);
      rep.conditions[2].issues.push_back({p, "", ids, "frontier beyond window"});
    }
    if (!rep.conditions[2].issues.empty()) rep.conditions[2].status = ConditionStatus::inconclusive_truncation;
  }

  rep.verdict = Verdict::pass;
  for (const auto& c : rep.conditions) {
    if (c.status == ConditionStatus::fail) rep.verdict = Verdict::fail;
    if (c.status == ConditionStatus::unknown_precedence && rep.verdict == Verdict::pass)
      rep.verdict = Verdict::unknown_precedence;
  }
  return rep;
}

}  // namespace det_detail

inline DeterminismReport check_local_determinism(const TAS& tas, const AssemblySequence& seq) {
  return det_detail::check_impl(tas, seq, seq.window, false, {});
}

inline DeterminismReport check_conditional_determinism(const TAS& tas, const AssemblySequence& seq, const Window& w,
                                                       const PrecedenceOptions& opts = {}) {
  return det_detail::check_impl(tas, seq, w, true, opts);
}

// ---------------------------------------------------------------------------
// Directedness

struct DirectednessResult {
  bool directed = true;
  std::optional<std::pair<Assembly, Assembly>> counterexample;
  std::size_t states = 0;
};

// Decides whether the system has a unique terminal assembly inside w.
// A reference terminal assembly g is grown with FIFO scheduling. Every
// producible assembly is a subassembly of g exactly when, for each position
// p of g, the largest subassembly of g that can grow without p admits no
// tile other than g(p) at p. The budget bounds the total closure work.
inline DirectednessResult directedness_oracle(const TAS& tas, const Window& w, std::size_t state_budget = 2000000) {
  DirectednessResult r;
  SimOptions so;
  so.window = w;
  so.policy = Policy::fifo;
  const Assembly ref = simulate(tas, so).result;
  const std::set<Pos> seed_dom = tas.seed_assembly().domain();
  const auto charge = [&](std::size_t n) {
    r.states += n;
    if (r.states > state_budget)
      throw Error(ErrorCode::budget_exceeded,
                  "directedness check exceeded " + std::to_string(state_budget) + " states");
  };
  charge(ref.size());
  for (const auto& [p, tp] : ref.placement()) {
    if (seed_dom.count(p)) continue;
    const std::set<Pos> grown = det_detail::closure(ref, seed_dom, {p}, tas.temperature);
    charge(grown.size());
    for (const auto& [t, strength] : det_detail::candidate_strengths(ref, p, &grown)) {
      if (t == tp || strength < tas.temperature) continue;
      Assembly alt = attach(restrict_to(ref, grown), p, t, tas);
      r.directed = false;
      r.counterexample = std::make_pair(ref, simulate_from(tas, alt, so, {}).result);
      return r;
    }
  }
  return r;
}

// Reference implementation that enumerates every producible assembly inside
// w. Exponential; intended for cross-checking small systems.
inline DirectednessResult directedness_exhaustive(const TAS& tas, const Window& w,
                                                  std::size_t state_budget = 2000000) {
  DirectednessResult r;
  std::optional<Assembly> first;
  det_detail::Explorer ex(tas, w, {}, state_budget);
  auto outcome = ex.run(tas.seed_assembly(), [&](const Assembly& a, const std::vector<Step>&, bool terminal) {
    if (!terminal) return false;
    if (!first) {
      first = a;
      return false;
    }
    if (a == *first) return false;
    r.directed = false;
    r.counterexample = std::make_pair(*first, a);
    return true;
  });
  r.states = ex.states();
  if (outcome == det_detail::ExploreOutcome::budget)
    throw Error(ErrorCode::budget_exceeded, "directedness exploration exceeded " + std::to_string(state_budget) +
                                                " states");
  return r;
}

}  // namespace tam
