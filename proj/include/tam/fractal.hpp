// SPDX-License-Identifier: MIT
// Discrete Sierpinski triangle stages, the laced Sierpinski triangle and its
// fiber families, counting formulas, zeta-dimension profiles and finite-tree
// depth.
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tam/core.hpp"

namespace tam {

using PointSet = std::set<Pos>;

inline PointSet translate(const PointSet& a, Pos by) {
  PointSet out;
  for (Pos p : a) out.insert({p.x + by.x, p.y + by.y});
  return out;
}

inline PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
  PointSet out;
  for (Pos p : a)
    if (!b.count(p)) out.insert(p);
  return out;
}

inline PointSet symdiff(const PointSet& a, const PointSet& b) {
  PointSet out;
  for (Pos p : a)
    if (!b.count(p)) out.insert(p);
  for (Pos p : b)
    if (!a.count(p)) out.insert(p);
  return out;
}

// A + c*B in the Minkowski sense.
inline PointSet minkowski_shift(const PointSet& a, std::int64_t c, const std::vector<Pos>& b) {
  PointSet out;
  for (Pos v : b)
    for (Pos p : a) out.insert({p.x + c * v.x, p.y + c * v.y});
  return out;
}

inline PointSet within(const PointSet& a, const Window& w) {
  PointSet out;
  for (Pos p : a)
    if (w.contains(p)) out.insert(p);
  return out;
}

namespace detail {
inline const std::vector<Pos> kV{{1, 0}, {0, 1}};
inline const std::vector<Pos> kW{{0, 0}, {0, 1}, {1, 0}};
inline const std::vector<Pos> kX{{0, 2}, {2, 0}, {-1, 1}, {1, -1}, {0, 0}, {0, 1}, {1, 0}};

inline void require_stage(int n, int max_n) {
  if (n < 0 || n > max_n)
    throw Error(ErrorCode::out_of_range, "stage " + std::to_string(n) + " outside [0," + std::to_string(max_n) + "]");
}
}  // namespace detail

inline constexpr int kMaxStage = 14;

inline std::int64_t pow2(int i) { return std::int64_t{1} << i; }

inline std::int64_t pow3(int i) {
  std::int64_t r = 1;
  for (int k = 0; k < i; ++k) r *= 3;
  return r;
}

// S_0 = {(0,0)}, S_{i+1} = S_i ∪ (S_i + 2^i V).
inline PointSet sierpinski(int n) {
  detail::require_stage(n, kMaxStage);
  PointSet s{{0, 0}};
  for (int i = 0; i < n; ++i) s = set_union(s, minkowski_shift(s, pow2(i), detail::kV));
  return s;
}

inline int ruler(std::int64_t i) {
  if (i <= 0) throw Error(ErrorCode::out_of_range, "ruler is defined for positive integers");
  int r = 0;
  while ((i & 1) == 0) {
    i >>= 1;
    ++r;
  }
  return r;
}

inline PointSet caps(int n) {
  detail::require_stage(n, kMaxStage);
  if (n < 2) return {};
  const std::int64_t c = pow2(n - 1);
  if (n == 2) return translate(PointSet(detail::kW.begin(), detail::kW.end()), {c, c});
  PointSet r = translate(PointSet(detail::kX.begin(), detail::kX.end()), {c, c});
  const PointSet prev = caps(n - 1);
  return set_union(r, minkowski_shift(prev, c, detail::kW));
}

inline PointSet phi(int n) {
  detail::require_stage(n, kMaxStage);
  PointSet r;
  const std::int64_t N = pow2(n);
  for (int j = 1; j <= n - 2; ++j)
    for (std::int64_t k = pow2(j) + 1; k <= N - pow2(j); ++k) {
      r.insert({N - j, k});
      r.insert({k, N - j});
    }
  return r;
}

inline PointSet counters(int n) {
  detail::require_stage(n, kMaxStage);
  if (n < 3) return {};
  const PointSet prev = counters(n - 1);
  PointSet r = set_union(phi(n), prev);
  return set_union(r, minkowski_shift(set_difference(prev, phi(n - 1)), pow2(n - 1), detail::kV));
}

inline PointSet psi(int n) {
  detail::require_stage(n, kMaxStage);
  PointSet r;
  const std::int64_t N = pow2(n);
  for (int j = 3; j <= n - 1; ++j)
    for (std::int64_t k = N - pow2(j) + 3; k <= N - j; ++k) {
      const std::int64_t a = pow2(j) - 1, b = pow2(j);
      r.insert({a, k});
      r.insert({b, k});
      r.insert({k, a});
      r.insert({k, b});
    }
  return r;
}

inline PointSet tests(int n) {
  detail::require_stage(n, kMaxStage);
  if (n < 4) return {};
  const PointSet prev = tests(n - 1);
  PointSet r = set_union(psi(n), prev);
  return set_union(r, minkowski_shift(set_difference(prev, psi(n - 1)), pow2(n - 1), detail::kV));
}

inline PointSet laced(int n) {
  PointSet r = sierpinski(n);
  for (const PointSet& part : {caps(n), counters(n), tests(n)}) r.insert(part.begin(), part.end());
  return r;
}

// ---------------------------------------------------------------------------
// Counting

// Exact rational value of a closed form.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool is_integer() const { return num % den == 0; }
  std::string str() const {
    if (is_integer()) return std::to_string(num / den);
    const std::int64_t g = std::gcd(num, den);
    return std::to_string(num / g) + "/" + std::to_string(den / g);
  }
};

struct CountRow {
  std::string name;
  std::int64_t generated = 0;
  Rational closed_form;
  bool matches() const { return closed_form.is_integer() && generated == closed_form.num / closed_form.den; }
};

struct StageCounts {
  int n = 0;
  std::vector<CountRow> rows;  // S, Caps, Counters, Tests, Phi, Psi, L
  bool all_match() const {
    for (const auto& r : rows)
      if (!r.matches()) return false;
    return true;
  }
  const CountRow& row(const std::string& name) const {
    for (const auto& r : rows)
      if (r.name == name) return r;
    throw Error(ErrorCode::out_of_range, "no count row named " + name);
  }
};

// Closed forms, evaluated with integer arithmetic on scaled numerators.
inline std::int64_t closed_caps(int n) {
  if (n < 2) return 0;
  return (13 * pow3(n - 2) - 7) / 2;  // 6.5*3^{n-2} - 3.5
}
inline std::int64_t closed_counters(int n) {
  if (n < 3) return 0;
  return 4 * pow3(n - 1) - pow2(n + 2) + 4;
}
// 3^{n-3}(n+16.5) - 3n^2 - 9n + 34.5, scaled by 6 so that n = 2 stays exact.
inline Rational closed_tests(int n) {
  if (n < 2) return {0, 1};
  const std::int64_t six = pow3(n - 2) * (2 * n + 33) - 18 * n * n - 54 * n + 207;
  return {six, 6};
}
inline std::int64_t closed_phi(int n) {
  if (n < 3) return 0;
  return pow2(n + 1) * (n - 3) + 8;
}
inline std::int64_t closed_psi(int n) {
  if (n < 3) return 0;
  return pow2(n + 2) - 2 * n * n - 6 * n + 4;
}
// Solution of |T_n| = 3|T_{n-1}| + |Psi_n| - 2|Psi_{n-1}| with |T_3| = 0.
inline std::int64_t recurrence_tests(int n) {
  if (n < 3) return 0;
  return (21 * pow3(n - 3) - 2 * n * n - 4 * n + 9) / 2;
}

inline StageCounts stage_counts(int n) {
  detail::require_stage(n, 12);
  StageCounts sc;
  sc.n = n;
  const auto sz = [](const PointSet& s) { return static_cast<std::int64_t>(s.size()); };
  const std::int64_t s = sz(sierpinski(n)), c = sz(caps(n)), k = sz(counters(n)), t = sz(tests(n));
  const Rational ct = closed_tests(n);
  const auto whole = [](std::int64_t v) { return Rational{v, 1}; };
  sc.rows.push_back({"S", s, whole(pow3(n))});
  sc.rows.push_back({"Caps", c, whole(closed_caps(n))});
  sc.rows.push_back({"Counters", k, whole(closed_counters(n))});
  sc.rows.push_back({"Tests", t, ct});
  sc.rows.push_back({"Phi", sz(phi(n)), whole(closed_phi(n))});
  sc.rows.push_back({"Psi", sz(psi(n)), whole(closed_psi(n))});
  const std::int64_t rest = pow3(n) + closed_caps(n) + closed_counters(n);
  sc.rows.push_back({"L", sz(laced(n)), {rest * ct.den + ct.num, ct.den}});
  return sc;
}

// ---------------------------------------------------------------------------
// Zeta dimension

// Generator producing A intersected with the ball of radius 2^n.
using PointGenerator = std::function<PointSet(int)>;

struct ProfileEntry {
  int n;
  std::int64_t count;
  double value;  // log2(count) / n, 0 when count <= 1
};

// Counts points m with |m|^2 < 4^n using exact integer arithmetic.
inline std::int64_t ball_count(const PointSet& a, int n) {
  const std::int64_t lim = std::int64_t{1} << (2 * n);
  std::int64_t c = 0;
  for (Pos p : a)
    if (p.x * p.x + p.y * p.y < lim) ++c;
  return c;
}

inline std::vector<ProfileEntry> zeta_dim_profile(const PointGenerator& gen, int n_max) {
  if (n_max < 0 || n_max > 20) throw Error(ErrorCode::out_of_range, "n_max outside [0,20]");
  std::vector<ProfileEntry> out;
  for (int n = 1; n <= n_max; ++n) {
    const std::int64_t c = ball_count(gen(n), n);
    const double v = c > 1 ? std::log2(static_cast<double>(c)) / n : 0.0;
    out.push_back({n, c, v});
  }
  return out;
}

// Fixed finite set: points beyond the ball are filtered by ball_count.
inline PointGenerator fixed_set(PointSet a) {
  return [a = std::move(a)](int) { return a; };
}

// ---------------------------------------------------------------------------
// Finite-tree depth

struct TreeDepth {
  bool unbounded = false;  // a candidate subtree reached the truncation edge
  std::int64_t depth = 0;
};

// For each v in D and each neighbour u of v outside D, the component of
// G - {v} containing u is a finite D-subtree when it is a tree that meets D
// only through v. Its depth is the largest distance from v. When the input is
// a truncation of an infinite set, pass the truncation window: a subtree that
// reaches its upper x or y edge may continue beyond it and is reported as
// unbounded instead of contributing a depth.
inline TreeDepth finite_tree_depth(const PointSet& g, const PointSet& d,
                                   const std::optional<Window>& truncation = std::nullopt) {
  for (Pos p : d)
    if (!g.count(p)) throw Error(ErrorCode::not_subset, "D must be a subset of the vertex set");
  TreeDepth out;
  if (g.empty()) return out;
  const auto on_edge = [&](Pos p) {
    return truncation && (p.x >= truncation->x_max || p.y >= truncation->y_max);
  };
  for (Pos r : d) {
    for (Dir dir : kDirs) {
      const Pos u = step(r, dir);
      if (!g.count(u) || d.count(u)) continue;
      // Component of u in G - {r}.
      std::map<Pos, std::int64_t> dist;
      std::vector<Pos> stack{u};
      dist[u] = 1;
      bool meets_d = false, touches_box = false;
      std::size_t edges2 = 0;
      std::vector<Pos> order;
      while (!stack.empty()) {
        Pos p = stack.back();
        stack.pop_back();
        order.push_back(p);
        if (d.count(p)) meets_d = true;
        if (on_edge(p)) touches_box = true;
        for (Dir e : kDirs) {
          Pos q = step(p, e);
          if (q == r || !g.count(q)) continue;
          ++edges2;
          if (!dist.count(q)) {
            dist[q] = 0;
            stack.push_back(q);
          }
        }
      }
      const std::size_t vcount = order.size();
      const bool is_tree = edges2 / 2 == vcount - 1;
      // The component must hang off r by the single edge r-u.
      std::size_t links_to_r = 0;
      for (Pos p : order)
        for (Dir e : kDirs)
          if (step(p, e) == r) ++links_to_r;
      if (meets_d || !is_tree || links_to_r != 1) continue;
      if (touches_box) {
        out.unbounded = true;
        continue;
      }
      // Depth by breadth-first search from u.
      std::map<Pos, std::int64_t> bfs{{u, 1}};
      std::vector<Pos> q{u};
      std::int64_t best = 1;
      for (std::size_t i = 0; i < q.size(); ++i) {
        Pos p = q[i];
        for (Dir e : kDirs) {
          Pos nb = step(p, e);
          if (nb == r || !g.count(nb) || bfs.count(nb)) continue;
          bfs[nb] = bfs[p] + 1;
          best = std::max(best, bfs[nb]);
          q.push_back(nb);
        }
      }
      out.depth = std::max(out.depth, best);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point-set files: one "x y" pair per line, '#' comments, sorted by (y, x).

inline std::string format_pointset(const PointSet& a, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  for (Pos p : a) out += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
  return out;
}

inline PointSet parse_pointset(const std::string& text) {
  PointSet out;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (end == text.size()) break;
      continue;
    }
    long long x = 0, y = 0;
    char extra = 0;
    if (std::sscanf(line.c_str(), " %lld %lld %c", &x, &y, &extra) != 2)
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected two integers");
    out.insert({x, y});
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace tam
