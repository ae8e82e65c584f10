// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "hand_controllers.hpp"
#include "oracles.hpp"

#include "tga/concrete.hpp"
#include "tga/muller_solver.hpp"
#include "tga/region.hpp"
#include "tga/simulator.hpp"
#include "tga/synthesis.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace tga {
namespace {

using testing::corpus_files;
using testing::corpus_path;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  // Records a failed check; the first few are kept in the detail line.
  void fail(const std::string& what) {
    if (failures++ < 3) detail << " [" << what << "]";
    pass = false;
  }
  int failures = 0;
};

std::string base_name(const std::string& path) {
  auto s = path.substr(path.find_last_of('/') + 1);
  return s.substr(0, s.find('.'));
}

std::uint64_t tree_memory(const InfFormula& f) {
  return ZielonkaTree::build(MullerCondition::from_formula(f)).memory();
}

void zielonka_memory_formulas(Outcome& o) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto m = tree_memory(build_phi1(n));
    o.detail << " phi1(" << n << ")=" << m;
    if (m != n) o.fail("phi1(" + std::to_string(n) + ") = " + std::to_string(m));
  }
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t k = 1; k <= 2; ++k) {
      std::uint64_t want = 1;
      for (std::size_t i = 0; i < k; ++i) want *= n + 1;
      auto m = tree_memory(build_phi2(n, k));
      o.detail << " phi2(" << n << "," << k << ")=" << m;
      if (m != want) o.fail("phi2 expected " + std::to_string(want));
    }
}

void receptiveness_memory_bound(Outcome& o) {
  for (std::size_t c = 1; c <= 3; ++c) {
    auto m = tree_memory(build_phi_dagger(c));
    o.detail << " m(|C|=" << c << ")=" << m;
    if (m > c + 1) o.fail("tree memory above |C|+1 for " + std::to_string(c) + " clocks");
  }
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    auto res = synthesize(spec);
    if (!res.controller) continue;
    o.detail << " " << base_name(f) << "=" << res.controller->memory_states;
    if (static_cast<std::size_t>(res.controller->memory_states) > spec.model.clock_count() + 1)
      o.fail(base_name(f) + " controller memory");
  }
}

void encoding_equivalence(Outcome& o) {
  auto compare = [&](const GameSpec& spec, const std::string& name) {
    auto dagger = sure_safe(spec, Objective::PhiDagger).winning;
    for (Objective other : {Objective::PhiStar, Objective::Tick})
      if (sure_safe(spec, other).winning != dagger) o.fail(name + " " + objective_name(other));
  };
  auto files = corpus_files();
  for (const auto& f : files) {
    auto spec = load_gamespec(f);
    if (spec.model.clock_count() > 2 || spec.model.location_count() > 5) o.fail(base_name(f) + " is too large");
    compare(spec, base_name(f));
  }
  if (files.size() < 8) o.fail("fewer than 8 corpus models");
  for (std::uint64_t seed = 1000; seed < 1050; ++seed)
    compare(parse_gamespec_or_throw(testing::random_model_text(seed)), "random seed " + std::to_string(seed));
  o.detail << " corpus=" << files.size() << " random=50";
}

std::vector<int> a3_entry_states(const SolvedGame& g) {
  const auto& m = g.spec->model;
  auto sp = RegionSpace::of(m);
  auto r0 = region_of(sp, *m.find_location("l0"), std::vector<Time>{0, Time(1, 2)});
  std::vector<int> out;
  for (std::size_t s = 0; s < g.game.size(); ++s)
    if (g.game.state(static_cast<int>(s)).base == r0) out.push_back(static_cast<int>(s));
  return out;
}

void region_memory_necessity(Outcome& o) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  auto g = solve_game(spec, Objective::PhiDagger);
  auto e0 = a3_entry_states(*g);
  if (e0.empty()) return o.fail("no entry states");

  auto rep = enumerate_memoryless(*g, e0);
  o.detail << " memoryless: scope=" << rep.scope << " candidates=" << rep.candidates
           << " explored=" << rep.nodes_explored << " winner=" << (rep.winner_found ? "yes" : "none");
  if (rep.winner_found) o.fail("a memoryless controller wins");

  auto c = minimize_controller(
      *g, build_controller(g->game, "phi-dagger", e0, 0, strategy_rule(*g), Policy::PushHalf), e0);
  auto chk = check_controller(g->game, spec.safe, g->condition, e0, 0, controller_rule(g->game, c));
  o.detail << "; synthesized memory=" << c.memory_states << " " << (chk.ok ? "ok" : chk.reason);
  if (c.memory_states > 3 || !chk.ok) o.fail("synthesized controller");

  auto hand = check_controller(g->game, spec.safe, g->condition, e0, 0, testing::two_memory_rule(g->game));
  o.detail << "; two-memory " << (hand.ok ? "ok" : hand.reason);
  if (!hand.ok) o.fail("two-memory controller");
}

// Compares both players' winning sets with the strategy-listing oracle.
bool solver_matches_oracle(const Arena& a, const MullerCondition& f) {
  auto bf = testing::brute_force_muller(a, f, 2);
  if (!bf.complete || !bf.consistent) return false;
  return solve_muller(a, f, Player::One).win == bf.win1 && solve_muller(a, f.complement(), Player::Two).win == bf.win2;
}

// The exhaustive part stops where enumeration is still feasible: arenas of up
// to 3 nodes over both atoms and 4 nodes over one. Six nodes over two atoms
// have about 2e13 classes, so the criterion's full range is not covered and the
// line reports FAIL on that account alone.
void muller_oracle(Outcome& o) {
  auto formulas = testing::small_formulas();
  std::size_t arenas = 0, solves = 0, mismatches = 0;
  auto exhaust = [&](int n, int atoms) {
    for (const Arena& a : testing::all_arenas_up_to_iso(n, atoms)) {
      ++arenas;
      for (const auto& nf : formulas) {
        if (nf.atoms > atoms) continue;
        ++solves;
        if (!solver_matches_oracle(a, MullerCondition::from_formula(nf.f))) ++mismatches;
      }
    }
  };
  for (int n = 1; n <= 3; ++n) exhaust(n, 2);
  exhaust(4, 1);
  o.detail << " exhaustive (<=3 nodes x 2 atoms, 4 nodes x 1 atom): arenas=" << arenas << " solves=" << solves
           << " mismatches=" << mismatches;
  if (mismatches) o.fail("exhaustive mismatch");

  std::mt19937_64 rng(2024);
  std::size_t random_mismatch = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 4 + static_cast<int>(rng() % 3);
    Arena a = testing::random_arena(rng, n, 2, 3);
    for (const auto& nf : formulas)
      if (!solver_matches_oracle(a, MullerCondition::from_formula(nf.f))) ++random_mismatch;
  }
  o.detail << "; random 4-6 nodes: 200 arenas mismatches=" << random_mismatch;
  if (random_mismatch) o.fail("random mismatch");
  o.fail("exhaustive enumeration of 5 and 6 node arenas is infeasible");
}

void streett_elimination(Outcome& o) {
  std::mt19937_64 rng(66);
  std::size_t total = 0;
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    auto g = build_finite_game(spec.model);
    for (int i = 0; i < 10000; ++i) {
      auto l = testing::random_lasso(g, spec.safe, static_cast<int>(rng() % g.size()), rng);
      auto [a, b] = streett_elim_check(spec.model.clock_count(), l.stem, l.cycle);
      ++total;
      if (a != b) o.fail(base_name(f) + " lasso " + std::to_string(i));
    }
  }
  o.detail << " lassos=" << total;
}

void region_layer(Outcome& o) {
  std::size_t two_clock = 0, regions = 0, cpre_checks = 0;
  auto counts = [&](const TimedGameModel& m, const std::string& name) {
    auto rs = enumerate_regions(m);
    if (BigInt(rs.size()) > region_count_bound(m)) o.fail(name + " above bound");
    if (m.clock_count() == 2) {
      ++two_clock;
      if (rs.size() != testing::grid_region_count(m)) o.fail(name + " grid count");
    }
    auto sp = RegionSpace::of(m);
    for (const Region& r : rs) {
      ++regions;
      if (region_of(sp, r.loc, sample(sp, r)) != r) o.fail(name + " sample " + to_string(r, m));
    }
  };
  std::mt19937_64 rng(77);
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    counts(spec.model, base_name(f));
    auto g = build_finite_game(spec.model);
    StateSet z(g.size());
    for (auto& b : z) b = rng() % 4 != 0;
    auto c = cpre1(g, z);
    for (int i = 0; i < 50; ++i) {
      int s = static_cast<int>(rng() % g.size());
      auto at = random_point(g.space(), g.state(s).base, rng);
      ++cpre_checks;
      if (testing::concrete_cpre(g, z, s, at) != (c[s] != 0)) o.fail(base_name(f) + " cpre state " + std::to_string(s));
    }
  }
  for (std::uint64_t seed = 2000; seed < 2050; ++seed)
    counts(parse_gamespec_or_throw(testing::random_model_text(seed)).model, "random " + std::to_string(seed));
  o.detail << " two-clock models=" << two_clock << " regions=" << regions << " cpre checks=" << cpre_checks;
}

void end_to_end(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  auto spec = load_gamespec(corpus_path("paper_a3"));
  auto res = synthesize(spec);
  if (!res.controller) return o.fail("no controller");
  auto g = build_finite_game(spec.model);
  auto sp = RegionSpace::of(spec.model);
  auto r0 = region_of(sp, *spec.model.initial_location(), ClockValuation(spec.model.clock_count(), Time(0)));
  auto broken = build_controller(g, "phi-dagger", {*g.find(g.initial_for(r0))}, 0, testing::broken_rule(g),
                                 Policy::PushHalf);
  RunOptions opt;
  opt.rounds = 10000;
  opt.threshold = 100;
  opt.suffix = opt.rounds / 4;
  int pass = 0, broken_fail = 0, unsafe = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (bool zeno : {true, false}) {
      auto adv = zeno ? make_zeno_adversary(seed) : make_random_adversary(seed);
      auto v = run(spec, *res.controller, *adv, opt);
      unsafe += !v.safe;
      pass += v.receptive;
      if (!v.receptive) o.fail(std::string(zeno ? "zeno" : "random") + " seed " + std::to_string(seed) + ": " +
                               verdict_summary(v));
    }
    auto adv = make_zeno_adversary(seed);
    auto v = run(spec, broken, *adv, opt);
    unsafe += !v.safe;
    broken_fail += !v.receptive;
    if (v.receptive) o.fail("broken controller passed with seed " + std::to_string(seed));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail << " synthesized PASS " << pass << "/40, broken FAIL " << broken_fail << "/20, unsafe runs " << unsafe
           << ", " << secs << " s";
  if (unsafe) o.fail("safety violation");
  if (secs >= 60) o.fail("over the 60 s budget");
}

}  // namespace
}  // namespace tga

int main() {
  using namespace tga;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"Zielonka memory of phi1(n) and phi2(n,m)", zielonka_memory_formulas},
      {"receptiveness memory bound |C|+1", receptiveness_memory_bound},
      {"encoding equivalence of phi-dagger, phi-star and tick", encoding_equivalence},
      {"region controllers need memory on paper_a3", region_memory_necessity},
      {"Muller solver equals the strategy-listing oracle", muller_oracle},
      {"both Streett elimination forms agree on game lassos", streett_elimination},
      {"region counts, sampling identity and CPre", region_layer},
      {"end-to-end simulation on paper_a3", end_to_end},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all &= o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << secs << " s):" << o.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
