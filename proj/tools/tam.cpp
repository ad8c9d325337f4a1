// SPDX-License-Identifier: MIT
// tam: command-line front end for the tile assembly workbench.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tam/core.hpp"
#include "tam/determinism.hpp"
#include "tam/fractal.hpp"
#include "tam/library.hpp"
#include "tam/render.hpp"
#include "tam/tileset_io.hpp"

using json = nlohmann::ordered_json;
using namespace tam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Window parse_window(const std::string& s) {
  Window w{};
  char c1 = 0, c2 = 0, c3 = 0, extra = 0;
  long long a = 0, b = 0, c = 0, d = 0;
  std::istringstream in(s);
  if (!(in >> a >> c1 >> b >> c2 >> c >> c3 >> d) || c1 != ',' || c2 != ',' || c3 != ',' || (in >> extra))
    throw InputError("window must be x_min,y_min,x_max,y_max");
  w = Window{a, b, c, d};
  if (!w.valid()) throw InputError("window is empty");
  return w;
}

json window_json(const Window& w) { return json::array({w.x_min, w.y_min, w.x_max, w.y_max}); }
json pos_json(Pos p) { return json::array({p.x, p.y}); }
std::string pos_str(Pos p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

TAS load_source(const std::string& src) {
  const std::string prefix = "builtin:";
  if (src.rfind(prefix, 0) != 0) return load_tileset(src);
  const std::string name = src.substr(prefix.size());
  if (name == "laced") return laced_tas();
  if (name == "blocking") return blocking_example();
  if (name == "weak-sierpinski") return weak_sierpinski();
  if (name == "periodic-control") return periodic_control();
  if (name == "boundary") return boundary_tas();
  if (name.rfind("sn", 0) == 0 && name.size() > 2) {
    try {
      return make_sn_tas(std::stoi(name.substr(2)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw InputError("unknown builtin '" + name + "'");
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------------------
// Traces

json trace_json(const TAS& tas, const SimResult& r, const SimOptions& o) {
  json steps = json::array();
  for (const Step& s : r.sequence.steps) steps.push_back(json::array({s.pos.x, s.pos.y, tas.tileset()[s.tile].id}));
  return json{{"format", "tam-trace-1"},
              {"tileset", format_tileset(tas)},
              {"window", window_json(o.window)},
              {"policy", to_string(o.policy)},
              {"rng_seed", o.rng_seed},
              {"steps", steps}};
}

std::pair<TAS, AssemblySequence> load_trace(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("trace is not valid JSON: ") + e.what());
  }
  if (j.value("format", "") != "tam-trace-1") throw InputError("trace has unknown format");
  TAS tas = parse_tileset_string(j.at("tileset").get<std::string>());
  auto w = j.at("window");
  AssemblySequence seq{tas.seed_assembly(), {}, Window{w[0], w[1], w[2], w[3]}};
  for (const auto& s : j.at("steps")) seq.steps.push_back({Pos{s[0], s[1]}, tas.tileset().index_of(s[2])});
  validate_sequence(seq, tas);
  return {std::move(tas), std::move(seq)};
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string source, window = "0,0,63,63", clip, out, policy = "uniform-random";
  std::uint64_t seed = 0;
  std::size_t max_steps = 0;
  bool strict = false, as_json = false;
};

int cmd_simulate(const SimulateArgs& a) {
  TAS tas = load_source(a.source);
  SimOptions o;
  o.window = parse_window(a.window);
  o.rng_seed = a.seed;
  if (a.max_steps > 0) o.max_steps = a.max_steps;
  if (a.policy == "fifo")
    o.policy = Policy::fifo;
  else if (a.policy != "uniform-random")
    throw InputError("policy must be uniform-random or fifo");
  SimResult r = simulate(tas, o);
  if (!a.out.empty()) write_output(a.out, trace_json(tas, r, o).dump() + "\n");
  json j{{"command", "simulate"},
         {"tileset", tas.name},
         {"window", window_json(o.window)},
         {"rng_seed", a.seed},
         {"tiles_placed", r.result.size()},
         {"steps", r.sequence.steps.size()},
         {"terminal_in_window", r.terminal_in_window},
         {"step_cap_reached", r.step_cap_reached},
         {"outside_frontier", r.outside_frontier}};
  std::ostringstream t;
  t << "tileset " << tas.name << "\n"
    << "tiles placed " << r.result.size() << "\n"
    << "terminal within window " << (r.terminal_in_window ? "yes" : "no") << "\n"
    << "frontier beyond window " << r.outside_frontier << "\n";
  if (r.step_cap_reached) t << "step cap reached\n";
  if (!a.clip.empty()) {
    const Window c = parse_window(a.clip);
    const std::size_t n = within(r.result.domain(), c).size();
    j["clip"] = window_json(c);
    j["tiles_in_clip"] = n;
    t << "tiles in clip " << n << "\n";
  }
  emit(a.as_json, j, t.str());
  if (a.strict && (r.step_cap_reached || r.outside_frontier > 0)) return kExitBudget;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fractal

const std::map<std::string, std::function<PointSet(int)>>& fractal_kinds() {
  static const std::map<std::string, std::function<PointSet(int)>> k{
      {"s", sierpinski}, {"laced", laced}, {"caps", caps}, {"counters", counters},
      {"tests", tests},  {"phi", phi},     {"psi", psi}};
  return k;
}

PointSet make_fractal(const std::string& kind, int n) {
  auto it = fractal_kinds().find(kind);
  if (it == fractal_kinds().end()) throw InputError("unknown fractal kind '" + kind + "'");
  if (n < 0 || n > kMaxStage) throw InputError("stage must be in [0," + std::to_string(kMaxStage) + "]");
  return it->second(n);
}

int cmd_fractal(const std::string& kind, int n, const std::string& out, bool as_json) {
  const PointSet s = make_fractal(kind, n);
  if (as_json) {
    json pts = json::array();
    for (Pos p : s) pts.push_back(pos_json(p));
    json j{{"command", "fractal"}, {"kind", kind}, {"n", n}, {"size", s.size()}, {"points", pts}};
    if (!out.empty()) {
      write_output(out, format_pointset(s));
      j.erase("points");
    }
    std::cout << j.dump(2) << "\n";
  } else {
    write_output(out, format_pointset(s));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// zeta

PointGenerator zeta_source(const std::string& src) {
  if (src == "builtin:s") return [](int n) { return sierpinski(n); };
  if (src == "builtin:laced") return [](int n) { return laced(n); };
  if (src == "builtin:laced-minus-s") return [](int n) { return set_difference(laced(n), sierpinski(n)); };
  if (src == "builtin:boundary-rays")
    return [](int n) {
      PointSet b;
      for (std::int64_t i = 0; i < pow2(n); ++i) b.insert({i, 0}), b.insert({0, i});
      return b;
    };
  if (src.rfind("builtin:", 0) == 0) throw InputError("unknown zeta source '" + src + "'");
  return fixed_set(parse_pointset(read_file(src)));
}

int cmd_zeta(const std::string& src, int nmax, bool as_json) {
  if (nmax < 0 || nmax > 14) throw InputError("nmax must be in [0,14]");
  auto prof = zeta_dim_profile(zeta_source(src), nmax);
  json rows = json::array();
  std::ostringstream t;
  t << "n\tcount\tlog2(count)/n\n";
  for (const auto& e : prof) {
    rows.push_back(json{{"n", e.n}, {"count", e.count}, {"value", e.value}});
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", e.value);
    t << e.n << "\t" << e.count << "\t" << buf << "\n";
  }
  emit(as_json, json{{"command", "zeta"}, {"source", src}, {"profile", rows}}, t.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check

json report_json(const DeterminismReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) {
    json issues = json::array();
    for (const auto& is : c.issues)
      issues.push_back(
          json{{"pos", pos_json(is.pos)}, {"tile", is.tile}, {"offending", is.offending}, {"detail", is.detail}});
    conds.push_back(json{{"condition", c.condition}, {"status", to_string(c.status)}, {"issues", issues}});
  }
  json deps = json::array();
  for (const auto& d : r.depsides_used)
    deps.push_back(json{{"pos", pos_json(d.m)}, {"dir", dir_name(d.u)}, {"status", to_string(d.status)},
                        {"method", d.method}});
  return json{{"verdict", to_string(r.verdict)}, {"conditions", conds}, {"depsides", deps}};
}

std::string report_text(const std::string& kind, const DeterminismReport& r) {
  std::ostringstream t;
  std::string v = to_string(r.verdict);
  for (char& c : v) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  t << kind << " " << v << "\n";
  for (const auto& c : r.conditions) {
    t << "  condition (" << c.condition << "): " << to_string(c.status) << "\n";
    std::size_t shown = 0;
    for (const auto& is : c.issues) {
      if (++shown > 10) {
        t << "    ... " << (c.issues.size() - 10) << " more\n";
        break;
      }
      t << "    at " << pos_str(is.pos);
      if (!is.tile.empty()) t << " tile " << is.tile;
      t << ": " << is.detail;
      if (!is.offending.empty()) {
        t << " [";
        for (std::size_t i = 0; i < is.offending.size(); ++i) t << (i ? " " : "") << is.offending[i];
        t << "]";
      }
      t << "\n";
    }
  }
  for (const auto& d : r.depsides_used)
    t << "  depside " << pos_str(d.m) << " " << dir_name(d.u) << ": " << to_string(d.status) << " (" << d.method
      << ")\n";
  return t.str();
}

struct CheckArgs {
  std::string mode, source, window = "0,0,7,7";
  std::uint64_t seed = 0;
  std::size_t budget = 2000000;
  bool strict = false, as_json = false;
};

int cmd_check(const CheckArgs& a) {
  TAS tas = load_source(a.source);
  const Window w = parse_window(a.window);
  json j{{"command", "check"}, {"mode", a.mode}, {"tileset", tas.name}, {"window", window_json(w)}};
  if (a.mode == "directed") {
    try {
      auto r = directedness_oracle(tas, w, a.budget);
      j["directed"] = r.directed;
      j["states"] = r.states;
      std::string text = std::string(r.directed ? "DIRECTED" : "NOT DIRECTED") + " within window (" +
                         std::to_string(r.states) + " states)\n";
      if (r.counterexample) {
        j["counterexample"] = json::array({r.counterexample->first.size(), r.counterexample->second.size()});
        text += "  two terminal assemblies of sizes " + std::to_string(r.counterexample->first.size()) + " and " +
                std::to_string(r.counterexample->second.size()) + "\n";
      }
      emit(a.as_json, j, text);
      return kExitOk;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget_exceeded) throw;
      j["directed"] = nullptr;
      j["error"] = to_string(e.code());
      emit(a.as_json, j, std::string("BUDGET EXCEEDED: ") + e.what() + "\n");
      return a.strict ? kExitBudget : kExitOk;
    }
  }
  if (a.mode != "ld" && a.mode != "cd") throw InputError("check mode must be ld, cd or directed");
  SimOptions o;
  o.window = w;
  o.rng_seed = a.seed;
  SimResult sim = simulate(tas, o);
  PrecedenceOptions po;
  po.state_budget = a.budget;
  DeterminismReport r = a.mode == "ld" ? check_local_determinism(tas, sim.sequence)
                                       : check_conditional_determinism(tas, sim.sequence, w, po);
  j["report"] = report_json(r);
  emit(a.as_json, j, report_text(a.mode == "ld" ? "LD" : "CD", r));
  if (a.strict && (r.verdict == Verdict::unknown_precedence ||
                   r.condition(3).status == ConditionStatus::inconclusive_truncation))
    return kExitBudget;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// counts

int cmd_counts(int nmax, bool as_json) {
  if (nmax < 0 || nmax > 12) throw InputError("nmax must be in [0,12]");
  const char* names[] = {"S", "Caps", "Counters", "Tests", "Phi", "Psi", "L"};
  std::ostringstream t;
  t << "n";
  for (const char* nm : names) t << "\t" << nm << "\t(closed)";
  t << "\tmatch\n";
  json rows = json::array();
  for (int n = 2; n <= nmax; ++n) {
    StageCounts sc = stage_counts(n);
    t << n;
    json jr{{"n", n}};
    for (const auto& r : sc.rows) {
      t << "\t" << r.generated << "\t" << r.closed_form.str();
      jr[r.name] = json{{"generated", r.generated}, {"closed_form", r.closed_form.str()}, {"match", r.matches()}};
    }
    t << "\t" << (sc.all_match() ? "yes" : "NO") << "\n";
    jr["all_match"] = sc.all_match();
    rows.push_back(jr);
  }
  emit(as_json, json{{"command", "counts"}, {"rows", rows}}, t.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// pump

struct PumpArgs {
  std::string which, source, format = "ascii";
  int n = 3;
  bool as_json = false;
};

int cmd_pump(const PumpArgs& a) {
  if (a.n < 1 || a.n > 8) throw InputError("stage must be in [1,8]");
  Assembly alpha;
  std::string origin;
  if (!a.source.empty()) {
    TAS tas = load_source(a.source);
    SimOptions o;
    o.window = Window{0, 0, pow2(a.n) - 1, pow2(a.n) - 1};
    alpha = simulate(tas, o).result;
    origin = tas.name;
  } else if (a.which == "case1") {
    TAS tas = periodic_control();
    SimOptions o;
    o.window = Window{0, 0, pow2(a.n) - 1, pow2(a.n) - 1};
    alpha = simulate(tas, o).result;
    origin = tas.name;
  } else {
    alpha = shared_type_assembly(a.n);
    origin = "shared-type";
  }
  json j{{"command", "pump"}, {"case", a.which}, {"source", origin}, {"n", a.n}};
  if (alpha.domain() != sierpinski(a.n)) {
    j["pair"] = nullptr;
    j["message"] = "assembly domain is not S_n";
    emit(a.as_json, j, "assembly domain is not S_" + std::to_string(a.n) + "; nothing to pump\n");
    return kExitOk;
  }
  auto pair = a.which == "case1" ? find_case1_pair(alpha, a.n) : find_case3_pair(alpha, a.n);
  if (!pair) {
    j["pair"] = nullptr;
    j["message"] = "no pumping pair";
    emit(a.as_json, j, "no pumping pair\n");
    return kExitOk;
  }
  PumpedConfiguration pc = a.which == "case1" ? pump_case1(alpha, pair->first, pair->second, a.n)
                                              : pump_case3(alpha, pair->first, pair->second, a.n);
  const int tau = 2;
  BondAudit audit = audit_bonds(pc.beta, tau);
  const bool escape_outside = !sierpinski(a.n).count(pc.escape);
  Canvas c = canvas_from_assembly(pc.beta);
  c.marks.insert(pc.escape);
  RenderSpec rs;
  rs.format = parse_render_format(a.format);
  rs.window = Window{-2, -1, pow2(a.n) + 1, pow2(a.n)};
  const std::string picture = render(c, rs);
  j["pair"] = json::array({pos_json(pair->first), pos_json(pair->second)});
  j["escape"] = pos_json(pc.escape);
  j["escape_outside_sn"] = escape_outside;
  j["beta_size"] = pc.beta.size();
  j["bond_audit"] = audit.ok;
  j["rendering"] = picture;
  std::ostringstream t;
  t << "pair " << pos_str(pair->first) << " " << pos_str(pair->second) << "\n"
    << "escape " << pos_str(pc.escape) << (escape_outside ? " outside S_" : " inside S_") << a.n << "\n"
    << "configuration size " << pc.beta.size() << "\n"
    << "bond audit " << (audit.ok ? "ok" : "FAILED") << "\n"
    << picture;
  emit(a.as_json, j, t.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderArgs {
  std::string input, format = "ascii", window, color_by = "tile-group", out;
  int cell = 12;
  bool as_json = false;
};

int cmd_render(const RenderArgs& a) {
  Canvas c;
  if (a.input.rfind("fractal:", 0) == 0 || a.input.rfind("families:", 0) == 0) {
    const auto first = a.input.find(':');
    const std::string rest = a.input.substr(first + 1);
    if (a.input.rfind("families:", 0) == 0) {
      c = canvas_from_laced_families(std::stoi(rest));
    } else {
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw InputError("use fractal:<kind>:<n>");
      c = canvas_from_pointset(make_fractal(rest.substr(0, colon), std::stoi(rest.substr(colon + 1))));
    }
  } else {
    const std::string text = read_file(a.input);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      auto [tas, seq] = load_trace(text);
      c = canvas_from_sequence(seq);
    } else {
      c = canvas_from_pointset(parse_pointset(text));
    }
  }
  RenderSpec rs;
  rs.format = parse_render_format(a.format);
  rs.color_by = parse_color_by(a.color_by);
  rs.cell = a.cell;
  if (!a.window.empty()) {
    rs.window = parse_window(a.window);
  } else if (c.cells.empty()) {
    rs.window = Window{0, 0, 0, 0};
  } else {
    Window w{c.cells.begin()->first.x, c.cells.begin()->first.y, c.cells.begin()->first.x,
             c.cells.begin()->first.y};
    for (const auto& [p, cell] : c.cells) {
      w.x_min = std::min(w.x_min, p.x), w.x_max = std::max(w.x_max, p.x);
      w.y_min = std::min(w.y_min, p.y), w.y_max = std::max(w.y_max, p.y);
    }
    rs.window = w;
  }
  const std::string picture = render(c, rs);
  if (a.as_json) {
    json j{{"command", "render"}, {"format", a.format}, {"window", window_json(rs.window)}, {"cells", c.cells.size()}};
    if (a.out.empty())
      j["output"] = picture;
    else
      write_output(a.out, picture), j["out"] = a.out;
    std::cout << j.dump(2) << "\n";
  } else {
    write_output(a.out, picture);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// export

int cmd_export(const std::string& source, const std::string& out, bool as_json) {
  const TAS tas = load_source(source);
  const std::string text = format_tileset(tas);
  if (!as_json) {
    write_output(out, text);
    return kExitOk;
  }
  json j{{"command", "export"}, {"tileset", tas.name}, {"tile_types", tas.tileset().size()},
         {"temperature", tas.temperature}};
  if (out.empty())
    j["text"] = text;
  else
    write_output(out, text), j["out"] = out;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tile assembly workbench: simulation, determinism checks and fractal point sets"};
  app.require_subcommand(1);
  std::function<int()> run;

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Run the seeded scheduler");
  sim->add_option("source", sa.source, "Tile-set file or builtin:<name>")->required();
  sim->add_option("--window", sa.window, "x_min,y_min,x_max,y_max");
  sim->add_option("--seed", sa.seed, "Scheduler seed");
  sim->add_option("--max-steps", sa.max_steps, "Stop after this many attachments (0 = no cap)");
  sim->add_option("--policy", sa.policy, "uniform-random or fifo");
  sim->add_option("--clip", sa.clip, "Also count tiles inside this window");
  sim->add_option("--out", sa.out, "Write the trace as JSON");
  sim->add_flag("--strict", sa.strict, "Exit 3 on step cap or window truncation");
  sim->add_flag("--json", sa.as_json, "Machine-readable output");
  sim->callback([&] { run = [&] { return cmd_simulate(sa); }; });

  RenderArgs ra;
  auto* ren = app.add_subcommand("render", "Render a trace, point-set file, fractal:<kind>:<n> or families:<n>");
  ren->add_option("input", ra.input, "Input")->required();
  ren->add_option("--format", ra.format, "svg or ascii");
  ren->add_option("--window", ra.window, "x_min,y_min,x_max,y_max (default: bounding box)");
  ren->add_option("--color-by", ra.color_by, "tile-group, tile-id or attachment-order");
  ren->add_option("--cell", ra.cell, "SVG cell size in pixels")->check(CLI::Range(4, 200));
  ren->add_option("--out", ra.out, "Output file (default stdout)");
  ren->add_flag("--json", ra.as_json, "Machine-readable output");
  ren->callback([&] { run = [&] { return cmd_render(ra); }; });

  std::string fkind, fout;
  int fn = 0;
  bool fjson = false;
  auto* fr = app.add_subcommand("fractal", "Write a point set: s, laced, caps, counters, tests, phi or psi");
  fr->add_option("kind", fkind, "Point-set family")->required();
  fr->add_option("n", fn, "Stage")->required();
  fr->add_option("--out", fout, "Output file (default stdout)");
  fr->add_flag("--json", fjson, "Machine-readable output");
  fr->callback([&] { run = [&] { return cmd_fractal(fkind, fn, fout, fjson); }; });

  std::string zsrc;
  int znmax = 10;
  bool zjson = false;
  auto* ze = app.add_subcommand("zeta", "Dyadic zeta-dimension profile");
  ze->add_option("source", zsrc, "Point-set file or builtin:s|laced|laced-minus-s|boundary-rays")->required();
  ze->add_option("--nmax", znmax, "Largest dyadic scale");
  ze->add_flag("--json", zjson, "Machine-readable output");
  ze->callback([&] { run = [&] { return cmd_zeta(zsrc, znmax, zjson); }; });

  CheckArgs ca;
  auto* ch = app.add_subcommand("check", "Determinism checks: ld, cd or directed");
  ch->add_option("mode", ca.mode, "ld, cd or directed")->required();
  ch->add_option("source", ca.source, "Tile-set file or builtin:<name>")->required();
  ch->add_option("--window", ca.window, "x_min,y_min,x_max,y_max");
  ch->add_option("--seed", ca.seed, "Scheduler seed for the recorded sequence");
  ch->add_option("--budget", ca.budget, "Work budget for the precedence and directedness searches");
  ch->add_flag("--strict", ca.strict, "Exit 3 on budget exhaustion, unknown precedence or truncation");
  ch->add_flag("--json", ca.as_json, "Machine-readable output");
  ch->callback([&] { run = [&] { return cmd_check(ca); }; });

  int cnmax = 10;
  bool cjson = false;
  auto* co = app.add_subcommand("counts", "Generated sizes against closed forms");
  co->add_option("--nmax", cnmax, "Largest stage");
  co->add_flag("--json", cjson, "Machine-readable output");
  co->callback([&] { run = [&] { return cmd_counts(cnmax, cjson); }; });

  PumpArgs pa;
  auto* pu = app.add_subcommand("pump", "Pumping constructions: case1 or case3");
  pu->add_option("case", pa.which, "case1 or case3")->required()->check(CLI::IsMember({"case1", "case3"}));
  pu->add_option("--n", pa.n, "Stage");
  pu->add_option("--source", pa.source, "Assemble alpha from this tile set instead of the bundled control");
  pu->add_option("--format", pa.format, "Rendering format: ascii or svg");
  pu->add_flag("--json", pa.as_json, "Machine-readable output");
  pu->callback([&] { run = [&] { return cmd_pump(pa); }; });

  std::string esrc, eout;
  bool ejson = false;
  auto* ex = app.add_subcommand("export", "Write a tile set in the text format");
  ex->add_option("source", esrc, "Tile-set file or builtin:<name>")->required();
  ex->add_option("--out", eout, "Output file (default stdout)");
  ex->add_flag("--json", ejson, "Machine-readable output");
  ex->callback([&] { run = [&] { return cmd_export(esrc, eout, ejson); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::budget_exceeded ? kExitBudget : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
