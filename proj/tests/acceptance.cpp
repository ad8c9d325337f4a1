// SPDX-License-Identifier: MIT
// Acceptance run: one PASS/FAIL line per criterion. The process exits with a
// failure status only when a criterion outside kKnownFailures fails, or when
// a criterion listed there unexpectedly passes (so the list stays honest).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "tam/core.hpp"
#include "tam/determinism.hpp"
#include "tam/fractal.hpp"
#include "tam/library.hpp"

using namespace tam;

namespace {

// Criteria that fail for reasons documented in the README.
const std::set<int> kKnownFailures{3, 4};

struct Outcome {
  bool pass = true;
  std::string detail;
};

Window stage_window(int n) { return Window{0, 0, pow2(n), pow2(n)}; }
Window stage_square(int n) { return Window{0, 0, pow2(n) - 1, pow2(n) - 1}; }

Outcome criterion1() {
  const TAS t = laced_tas();
  std::ostringstream d;
  Outcome o;
  for (int n = 3; n <= 6; ++n)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SimOptions so;
      so.window = stage_window(n);
      so.rng_seed = seed;
      const SimResult r = simulate(t, so);
      const PointSet got = within(r.result.domain(), stage_square(n));
      if (got != laced(n)) {
        o.pass = false;
        d << " n=" << n << " seed=" << seed << " symdiff=" << symdiff(got, laced(n)).size();
      }
    }
  o.detail = o.pass ? "laced(n) reproduced for n=3..6 with 5 seeds each (simulation window [0,2^n]^2)" : d.str();
  return o;
}

Outcome criterion2() {
  const TAS t = laced_tas();
  Outcome o;
  std::ostringstream d;
  for (int n = 1; n <= 5; ++n) {
    SimOptions so;
    so.window = stage_window(n);
    so.rng_seed = 11;
    const SimResult r = simulate(t, so);
    const PointSet got = within(sierpinski_group_positions(r.result), stage_square(n));
    if (got != sierpinski(n)) {
      o.pass = false;
      d << " n=" << n << " symdiff=" << symdiff(got, sierpinski(n)).size();
    }
  }
  o.detail = o.pass ? "boundary+bar tile positions equal sierpinski(n) for n=1..5" : d.str();
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::ostringstream d;
  for (int n = 2; n <= 10; ++n) {
    const StageCounts sc = stage_counts(n);
    for (const auto& r : sc.rows) {
      if (r.name == "L") continue;  // derived row, not one of the six identities
      if (!r.matches()) {
        o.pass = false;
        d << " n=" << n << " " << r.name << " generated=" << r.generated << " closed=" << r.closed_form.str() << ";";
      }
    }
  }
  o.detail = o.pass ? "all six identities hold for n=2..10" : "mismatches:" + d.str();
  return o;
}

Outcome criterion4() {
  Outcome o;
  const double target = std::log2(3.0);
  const auto ps = zeta_dim_profile([](int n) { return sierpinski(n); }, 12);
  const auto pl = zeta_dim_profile([](int n) { return set_difference(laced(n), sierpinski(n)); }, 10);
  const double vs = ps.back().value, vl = pl.back().value;
  const bool s_ok = std::fabs(vs - target) <= 0.05, l_ok = std::fabs(vl - target) <= 0.10;
  o.pass = s_ok && l_ok;
  char buf[200];
  std::snprintf(buf, sizeof buf, "S at n=12: %.4f (%s, tol 0.05); laced\\S at n=10: %.4f (%s, |diff| %.4f, tol 0.10)",
                vs, s_ok ? "ok" : "out", vl, l_ok ? "ok" : "out", std::fabs(vl - target));
  o.detail = buf;
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::ostringstream d;
  const Window w8{0, 0, 7, 7};
  {
    const TAS t = blocking_example();
    SimOptions so;
    so.window = w8;
    const SimResult r = simulate(t, so);
    const auto ld = check_local_determinism(t, r.sequence);
    const bool ld_at = ld.verdict == Verdict::fail && ld.condition(2).status == ConditionStatus::fail &&
                       ld.condition(2).issues.size() == 1 && ld.condition(2).issues[0].pos == Pos{0, 1};
    const auto cd = check_conditional_determinism(t, r.sequence, w8);
    const auto dir = directedness_oracle(t, w8);
    if (!ld_at) o.pass = false, d << " blocking LD did not fail exactly at (0,1);";
    if (cd.verdict != Verdict::pass) o.pass = false, d << " blocking CD " << to_string(cd.verdict) << ";";
    if (!dir.directed) o.pass = false, d << " blocking not directed;";
  }
  {
    const TAS t = weak_sierpinski();
    SimOptions so;
    so.window = w8;
    const SimResult r = simulate(t, so);
    const auto ld = check_local_determinism(t, r.sequence);
    const auto cd = check_conditional_determinism(t, r.sequence, w8);
    if (ld.verdict != Verdict::pass) o.pass = false, d << " weak LD " << to_string(ld.verdict) << ";";
    if (cd.verdict != Verdict::pass) o.pass = false, d << " weak CD " << to_string(cd.verdict) << ";";
  }
  std::size_t used = 0;
  {
    const TAS t = laced_tas();
    const Window w16{0, 0, 15, 15};
    SimOptions so;
    so.window = w16;
    so.rng_seed = 3;
    const SimResult r = simulate(t, so);
    const auto cd = check_conditional_determinism(t, r.sequence, w16);
    used = cd.depsides_used.size();
    if (cd.verdict != Verdict::pass) o.pass = false, d << " laced CD " << to_string(cd.verdict) << ";";
    for (const auto& f : cd.depsides_used)
      if (f.status != PrecedenceStatus::proven_within_window) o.pass = false, d << " laced depside not proven;";
    // The cap-to-bump dependence: every down-chain bump tile precedes its east neighbour.
    for (const auto& [p, ti] : r.result.placement()) {
      if (t.tileset()[ti].id.rfind("vdt", 0) != 0) continue;
      const auto v = precedes_in_tas(t, p, step(p, Dir::E), w16);
      if (v.status != PrecedenceStatus::proven_within_window) o.pass = false, d << " bump precedence not proven;";
    }
  }
  o.detail = o.pass ? "blocking: LD fails at (0,1), CD passes, directed; weak: LD+CD pass; laced: CD passes (" +
                          std::to_string(used) + " depsides used, all proven)"
                    : d.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  for (int n = 1; n <= 6; ++n) {
    const TAS t = make_sn_tas(n);
    if (static_cast<std::int64_t>(t.tileset().size()) != pow2(n + 1) - 1)
      o.pass = false, d << " n=" << n << " has " << t.tileset().size() << " tile types;";
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SimOptions so;
      so.window = Window{-4, -4, pow2(n) + 4, pow2(n) + 4};
      so.rng_seed = seed;
      const SimResult r = simulate(t, so);
      if (!r.terminal_in_window || r.result.domain() != sierpinski(n))
        o.pass = false, d << " n=" << n << " seed=" << seed << " wrong domain;";
    }
  }
  o.detail = o.pass ? "2^{n+1}-1 tile types and dom = S_n for n=1..6 over 10 seeds" : d.str();
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream d;
  const int n = 3;
  SimOptions so;
  so.window = stage_square(n);
  const Assembly alpha = simulate(periodic_control(), so).result;
  auto p1 = find_case1_pair(alpha, n);
  if (!p1) {
    o.pass = false, d << " no case-1 pair;";
  } else {
    const auto pc = pump_case1(alpha, p1->first, p1->second, n);
    if (!(pc.escape == Pos{pow2(n), 0}) || sierpinski(n).count(pc.escape) || !pc.beta.contains(pc.escape))
      o.pass = false, d << " case-1 escape wrong;";
    if (!audit_bonds(pc.beta, 2).ok) o.pass = false, d << " case-1 bond audit failed;";
  }
  const Assembly shared = shared_type_assembly(n);
  auto p3 = find_case3_pair(shared, n);
  if (!p3) {
    o.pass = false, d << " no case-3 pair;";
  } else {
    const auto pc = pump_case3(shared, p3->first, p3->second, n);
    if (!(pc.escape == Pos{-1, p3->second.y}) || !pc.beta.contains(pc.escape))
      o.pass = false, d << " case-3 escape wrong;";
    if (!audit_bonds(pc.beta, 2).ok) o.pass = false, d << " case-3 bond audit failed;";
  }
  o.detail = o.pass ? "case 1 escapes at (8,0), case 3 escapes at (-1,j); both pass the bond audit" : d.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::ostringstream d;
  // Every adjacent pair in a stable assembly with domain S_n bonds at tau.
  for (int n = 1; n <= 6; ++n) {
    SimOptions so;
    so.window = stage_square(n);
    const Assembly a = simulate(make_sn_tas(n), so).result;
    if (!audit_bonds(a, 2).ok) o.pass = false, d << " bond property fails for S_" << n << ";";
  }
  // Size bound for a strictly self-assembled subset of S: the boundary rays
  // assembled by five tile types.
  const TAS b = boundary_tas();
  const std::int64_t big = 256;
  SimOptions so;
  so.window = Window{0, 0, big, big};
  const PointSet rays = simulate(b, so).result.domain();
  PointSet expect;
  for (std::int64_t i = 0; i <= big; ++i) expect.insert({i, 0}), expect.insert({0, i});
  if (rays != expect) o.pass = false, d << " boundary system does not assemble the two rays;";
  const std::int64_t k = static_cast<std::int64_t>(b.tileset().size());
  for (std::int64_t n = 0; n <= big; ++n) {
    const auto cnt = static_cast<std::int64_t>(within(rays, Window{0, 0, n, n}).size());
    if (cnt > 2 * k * (n + 1)) o.pass = false, d << " size bound fails at n=" << n << ";";
  }
  // Zeta profiles of the two known strictly self-assembling subsets.
  const auto pr = zeta_dim_profile([](int n) {
    PointSet s;
    for (std::int64_t i = 0; i < pow2(n); ++i) s.insert({i, 0}), s.insert({0, i});
    return s;
  }, 14);
  const auto p0 = zeta_dim_profile(fixed_set({{0, 0}}), 14);
  if (std::fabs(pr.back().value - 1.0) > 0.1) o.pass = false, d << " boundary profile not near 1;";
  if (p0.back().value != 0.0) o.pass = false, d << " singleton profile not 0;";
  o.detail = o.pass ? "bond property on S_1..S_6, size bound with 5 tile types up to n=256, boundary profile "
                      "near 1 and singleton 0"
                    : d.str();
  return o;
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8};
  int unexpected = 0;
  for (int i = 0; i < 8; ++i) {
    const int id = i + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = kKnownFailures.count(id) != 0;
    std::printf("criterion %d: %s (%.2fs) %s%s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str(),
                !o.pass && known ? " [known failure, see README]" : "");
    if (o.pass == known) ++unexpected;
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
