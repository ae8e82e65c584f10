// Command-line front end: check, regions, solve, synth, simulate, explain.

#include "tga/controller_io.hpp"
#include "tga/gamespec.hpp"
#include "tga/simulator.hpp"
#include "tga/synthesis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tga;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kError = 1, kEmpty = 2;

struct Globals {
  bool json = false;
  bool verbose = false;
  bool printed_literal = false;
  std::uint64_t seed = 1;
  std::string objective = "phi-dagger";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + ": file not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Objective objective_of(const Globals& g) {
  auto o = parse_objective(g.objective);
  if (!o) throw CLI::ValidationError("--objective", "unknown objective " + g.objective);
  if (*o == Objective::PhiStar && g.printed_literal) return Objective::PhiStarPrinted;
  return *o;
}

ordered_json regions_json(const std::vector<Region>& rs, const TimedGameModel& m) {
  ordered_json j = ordered_json::array();
  for (const Region& r : rs) j.push_back(to_string(r, m));
  return j;
}

void print_certificate(const WinningCertificate& c, const TimedGameModel& m, const Globals& g) {
  if (g.json) {
    ordered_json j;
    j["objective"] = objective_name(c.objective);
    j["winning"] = regions_json(c.winning, m);
    j["game_states"] = c.game_states;
    j["winning_states"] = c.winning_states;
    j["arena_nodes"] = c.arena_nodes;
    j["arena_edges"] = c.arena_edges;
    j["atoms"] = c.atoms;
    j["tree_memory"] = c.tree_memory;
    if (!c.cross.empty()) {
      ordered_json x;
      for (auto& [o, w] : c.cross) x[objective_name(o)] = regions_json(w, m);
      j["cross"] = x;
      j["cross_agree"] = c.cross_agree;
    }
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "objective " << objective_name(c.objective) << "\n";
  std::cout << "winning base regions (" << c.winning.size() << "):\n";
  for (const Region& r : c.winning) std::cout << "  " << to_string(r, m) << "\n";
  std::cout << "finite game: " << c.game_states << " states, " << c.winning_states << " winning; arena "
            << c.arena_nodes << " nodes, " << c.arena_edges << " edges\n";
  std::cout << "condition: " << c.atoms << " atoms, m_F=" << c.tree_memory << "\n";
  if (!c.cross.empty()) {
    for (auto& [o, w] : c.cross) std::cout << "cross-check " << objective_name(o) << ": " << w.size() << " regions\n";
    std::cout << "cross-check " << (c.cross_agree ? "agrees" : "DISAGREES") << "\n";
  }
}

int cmd_check(const std::string& file, const Globals& g) {
  ParseOutcome out = parse_gamespec(read_file(file));
  if (g.json) {
    ordered_json j;
    j["ok"] = out.ok();
    ordered_json errs = ordered_json::array(), warns = ordered_json::array();
    for (auto& e : out.errors)
      errs.push_back({{"line", e.line}, {"column", e.column}, {"length", e.length}, {"message", e.message}});
    for (auto& w : out.warnings) warns.push_back(w.message);
    j["errors"] = errs;
    j["warnings"] = warns;
    if (out.spec) {
      j["clocks"] = out.spec->model.clock_count();
      j["locations"] = out.spec->model.location_count();
      j["edges"] = out.spec->model.edges.size();
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& e : out.errors) std::cout << file << ":" << e.str() << "\n";
    for (auto& w : out.warnings) std::cout << file << ": warning: " << w.message << "\n";
    if (out.spec)
      std::cout << out.spec->model.name << ": " << out.spec->model.clock_count() << " clocks, "
                << out.spec->model.location_count() << " locations, " << out.spec->model.edges.size() << " edges, "
                << out.warnings.size() << " warnings\n";
  }
  return out.ok() ? kOk : kError;
}

int cmd_regions(const std::string& file, bool tick, const Globals& g) {
  const GameSpec spec = load_gamespec(file);
  const RegionSpace sp = tick ? RegionSpace::with_wrap_clock(spec.model) : RegionSpace::of(spec.model);
  const auto rs = enumerate_regions(spec.model, sp);
  const BigInt bound = region_count_bound(spec.model);
  if (g.json) {
    ordered_json j;
    j["count"] = rs.size();
    j["bound"] = bound.str();
    j["regions"] = regions_json(rs, spec.model);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const Region& r : rs) std::cout << to_string(r, spec.model) << "\n";
    std::cout << rs.size() << " regions";
    if (!tick) std::cout << " (bound " << bound.str() << ")";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_solve(const std::string& file, bool dump_arena, bool dump_tree, const Globals& g) {
  const GameSpec spec = load_gamespec(file);
  const auto solved = solve_game(spec, objective_of(g));
  const WinningCertificate c = certificate_of(*solved);
  print_certificate(c, spec.model, g);
  if (dump_tree) {
    const auto names = game_prop_namer(spec.model.clocks);
    std::cout << ZielonkaTree::build(solved->condition).dump(solved->condition, names);
  }
  if (dump_arena) {
    const auto& a = solved->arena.arena;
    for (std::size_t u = 0; u < a.size(); ++u) {
      const int s = solved->arena.node_state(static_cast<int>(u));
      std::cout << "n" << u << (a.owner[u] == Player::One ? " P1 " : " P2 ") << "s" << s << " "
                << to_string(solved->game.state(s).base, spec.model) << (solved->solution.win[u] ? " win" : "")
                << " ->";
      for (int v : a.succ[u]) std::cout << " n" << v;
      std::cout << "\n";
    }
  }
  return c.winning.empty() ? kEmpty : kOk;
}

int cmd_synth(const std::string& file, const std::string& out, const std::string& policy, bool cross,
              const Globals& g) {
  const GameSpec spec = load_gamespec(file);
  auto pol = parse_policy(policy);
  if (!pol) throw CLI::ValidationError("--policy", "unknown policy " + policy);
  const SynthesisResult r = synthesize(spec, objective_of(g), *pol, cross);
  print_certificate(r.certificate, spec.model, g);
  if (!r.controller) {
    if (!g.json) std::cout << "winning set is empty; no controller written\n";
    return kEmpty;
  }
  const std::string text = serialize_controller(*r.controller, spec.model);
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << text;
  }
  if (!g.json)
    std::cout << "controller: " << r.controller->memory_states << " memory states, "
              << r.controller->observations.size() << " observations, " << r.controller->predicate_bits()
              << " predicate bits" << (out.empty() ? "" : ", written to " + out) << "\n";
  if (cross && !r.certificate.cross_agree) return kError;
  return kOk;
}

struct SimArgs {
  std::string adversary = "random";
  std::uint64_t rounds = 1000;
  std::optional<std::string> threshold;
  std::optional<std::uint64_t> suffix;
  std::string trace;
  std::string script;
  std::string tie_owner = "2";
};

int cmd_simulate(const std::string& file, const std::string& ctrl_file, const SimArgs& a, const Globals& g) {
  const GameSpec spec = load_gamespec(file);
  const Controller c = parse_controller(read_file(ctrl_file), spec.model);
  std::unique_ptr<Adversary> adv;
  if (a.adversary == "random") {
    adv = make_random_adversary(g.seed);
  } else if (a.adversary == "zeno") {
    adv = make_zeno_adversary(g.seed);
  } else if (a.adversary == "scripted") {
    if (a.script.empty()) throw CLI::ValidationError("--script", "scripted adversary needs --script");
    std::istringstream in(read_file(a.script));
    adv = make_scripted_adversary(parse_script(in));
  } else if (a.adversary == "interactive") {
    adv = make_interactive_adversary(std::cin, std::cerr);
  } else {
    throw CLI::ValidationError("--adversary", "unknown adversary " + a.adversary);
  }
  RunOptions o;
  o.rounds = a.rounds;
  o.threshold = a.threshold ? parse_time(*a.threshold) : Time(static_cast<long>(a.rounds / 4));
  o.suffix = a.suffix ? *a.suffix : a.rounds / 4;
  o.tie_owner = a.tie_owner == "1" ? Player::One : Player::Two;
  o.policy = c.policy;
  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace, std::ios::binary);
    if (!trace) throw std::runtime_error("cannot write " + a.trace);
    o.trace = &trace;
  }
  const Verdict v = run(spec, c, *adv, o);
  if (g.json) {
    ordered_json j;
    j["receptive"] = v.receptive;
    j["safe"] = v.safe;
    j["in_domain"] = v.in_domain;
    j["diverged"] = v.diverged;
    j["blameless_suffix"] = v.blameless_suffix;
    j["elapsed"] = to_pq(v.elapsed);
    j["rounds"] = v.rounds_played;
    j["p1_blamed"] = v.p1_blamed;
    j["note"] = v.note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << verdict_summary(v) << "\n";
  }
  return kOk;  // the verdict is the report, not an error
}

int cmd_explain(const std::string& file, std::size_t clocks, const Globals& g) {
  std::vector<std::string> names;
  if (!file.empty()) {
    names = load_gamespec(file).model.clocks;
  } else {
    static const char* base[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    if (clocks < 1 || clocks > 8) throw CLI::ValidationError("--clocks", "between 1 and 8");
    for (std::size_t i = 0; i < clocks; ++i) names.emplace_back(base[i]);
  }
  const Objective o = objective_of(g);
  const InfFormula f = objective_formula(o, names.size());
  const auto namer = game_prop_namer(names);
  const MullerCondition cond = MullerCondition::from_formula(f);
  const ZielonkaTree tree = ZielonkaTree::build(cond);
  if (g.json) {
    ordered_json j;
    j["objective"] = objective_name(o);
    j["clocks"] = names;
    j["formula"] = f.str(namer);
    j["atoms"] = cond.atoms();
    j["tree_nodes"] = tree.size();
    j["m_F"] = tree.memory();
    j["memory_bound"] = names.size() + 1;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "objective " << objective_name(o) << " over clocks";
    for (auto& n : names) std::cout << " " << n;
    std::cout << "\n" << f.str(namer) << "\n";
    std::cout << "atoms:\n";
    for (std::size_t k = 0; k < cond.atoms(); ++k) std::cout << "  a" << k << " = " << cond.atom_name(k, namer) << "\n";
    std::cout << "Zielonka tree (" << tree.size() << " nodes):\n" << tree.dump(cond, namer);
    std::cout << "m_F = " << tree.memory() << " (|C|+1 = " << names.size() + 1 << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Receptive controller synthesis for timed automaton games"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--verbose", g.verbose, "extra progress output on stderr");
  app.add_option("--seed", g.seed, "seed for every random choice");
  app.add_option("--objective", g.objective, "phi-dagger | phi-star | tick");
  app.add_flag("--phi-star-literal-as-printed", g.printed_literal,
               "use bl1=true in the second block of phi-star instead of bl1=false");
  app.fallthrough();

  std::string file, ctrl, out, policy = "push-half";
  bool dump_arena = false, dump_tree = false, cross = false, tick = false;
  std::size_t clocks = 2;
  SimArgs sim;

  auto* check = app.add_subcommand("check", "parse and validate a game file");
  check->add_option("file", file)->required();
  auto* regions = app.add_subcommand("regions", "list the regions of a game");
  regions->add_option("file", file)->required();
  regions->add_flag("--tick", tick, "include the wrap clock");
  auto* solve = app.add_subcommand("solve", "compute the receptive winning set");
  solve->add_option("file", file)->required();
  solve->add_flag("--dump-arena", dump_arena);
  solve->add_flag("--dump-zielonka", dump_tree);
  auto* synth = app.add_subcommand("synth", "synthesize a controller");
  synth->add_option("file", file)->required();
  synth->add_option("-o,--output", out, "controller file");
  synth->add_option("--policy", policy, "push-half | midpoint | eager");
  synth->add_flag("--cross-validate", cross, "compare with the other encodings and the parity reduction");
  auto* simulate = app.add_subcommand("simulate", "run a controller against an adversary");
  simulate->add_option("file", file)->required();
  simulate->add_option("controller", ctrl)->required();
  simulate->add_option("--adversary", sim.adversary, "random | zeno | scripted | interactive");
  simulate->add_option("--rounds", sim.rounds);
  simulate->add_option("--threshold", sim.threshold, "divergence threshold T (default rounds/4)");
  simulate->add_option("--suffix", sim.suffix, "blameless window K (default rounds/4)");
  simulate->add_option("--trace", sim.trace, "JSONL trace file");
  simulate->add_option("--script", sim.script, "moves for the scripted adversary");
  simulate->add_option("--tie-owner", sim.tie_owner, "player who wins equal delays (1 or 2)");
  auto* explain = app.add_subcommand("explain", "show an objective, its Zielonka tree and m_F");
  explain->add_option("file", file, "take clock names from this game");
  explain->add_option("--clocks", clocks, "number of clocks when no file is given");
  for (auto* sc : {check, regions, solve, synth, simulate, explain}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? kOk : kError;
  }
  try {
    if (g.verbose) std::cerr << "seed " << g.seed << "\n";
    if (*check) return cmd_check(file, g);
    if (*regions) return cmd_regions(file, tick, g);
    if (*solve) return cmd_solve(file, dump_arena, dump_tree, g);
    if (*synth) return cmd_synth(file, out, policy, cross, g);
    if (*simulate) return cmd_simulate(file, ctrl, sim, g);
    if (*explain) return cmd_explain(file, clocks, g);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kError;
  } catch (const GameSpecError& e) {
    for (auto& d : e.errors()) std::cerr << file << ":" << d.str() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
