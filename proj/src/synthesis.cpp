#include "tga/synthesis.hpp"

#include "tga/parity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace tga {

std::string objective_name(Objective o) {
  switch (o) {
    case Objective::PhiDagger: return "phi-dagger";
    case Objective::PhiStar: return "phi-star";
    case Objective::PhiStarPrinted: return "phi-star-printed";
    case Objective::Tick: return "tick";
  }
  return "?";
}

std::optional<Objective> parse_objective(std::string_view s) {
  for (Objective o : {Objective::PhiDagger, Objective::PhiStar, Objective::PhiStarPrinted, Objective::Tick})
    if (objective_name(o) == s) return o;
  return std::nullopt;
}

Encoding encoding_of(Objective o) { return o == Objective::Tick ? Encoding::Tick : Encoding::Predicates; }

InfFormula objective_formula(Objective o, std::size_t clocks) {
  switch (o) {
    case Objective::PhiDagger: return build_phi_dagger(clocks);
    case Objective::PhiStar: return build_phi_star(clocks, false);
    case Objective::PhiStarPrinted: return build_phi_star(clocks, true);
    case Objective::Tick: return build_tick_objective();
  }
  return InfFormula::constant(true);
}

std::vector<std::pair<Region, int>> SolvedGame::initial_states() const {
  std::vector<std::pair<Region, int>> out;
  for (const Region& r : enumerate_regions(spec->model))
    if (auto s = game.find(game.initial_for(r))) out.emplace_back(r, *s);
  return out;
}

std::unique_ptr<SolvedGame> solve_game(const GameSpec& spec, Objective o) {
  for (LocId l : spec.safe)
    if (l.v >= spec.model.location_count()) throw std::invalid_argument("safe set names an unknown location");
  auto g = std::make_unique<SolvedGame>();
  g->spec = std::make_shared<GameSpec>(spec);
  g->objective = o;
  g->game = build_finite_game(g->spec->model, encoding_of(o));
  g->arena = to_turn_arena(g->game, g->spec->safe);
  g->sub = safe_subgame(g->arena);
  g->condition = MullerCondition::from_formula(objective_formula(o, spec.model.clock_count()));
  g->solution = solve_muller(g->arena.arena, g->condition, Player::One, g->sub);
  return g;
}

WinningCertificate certificate_of(const SolvedGame& g) {
  WinningCertificate c;
  c.objective = g.objective;
  for (auto& [r, s] : g.initial_states())
    if (g.wins(s)) c.winning.push_back(r);
  c.game_states = g.game.size();
  for (std::size_t s = 0; s < g.game.size(); ++s) c.winning_states += g.wins(static_cast<int>(s));
  c.arena_nodes = g.arena.arena.size();
  c.arena_edges = g.arena.arena.edge_count();
  c.atoms = g.condition.atoms();
  c.tree_memory = g.solution.tree_memory;
  return c;
}

namespace {

std::vector<Region> winning_bases_via_parity(const SolvedGame& g) {
  NodeMask w = solve_muller_via_parity(g.arena.arena, g.condition, Player::One, g.sub);
  std::vector<Region> out;
  for (auto& [r, s] : g.initial_states())
    if (w[s]) out.push_back(r);
  return out;
}

}  // namespace

WinningCertificate sure_safe(const GameSpec& spec, Objective o, bool cross_validate) {
  auto g = solve_game(spec, o);
  WinningCertificate c = certificate_of(*g);
  if (cross_validate) {
    for (Objective other : {Objective::PhiDagger, Objective::PhiStar, Objective::Tick}) {
      if (other == o) continue;
      c.cross[other] = certificate_of(*solve_game(spec, other)).winning;
      c.cross_agree = c.cross_agree && c.cross[other] == c.winning;
    }
    // Same objective through the parity product.
    auto via = winning_bases_via_parity(*g);
    c.cross_agree = c.cross_agree && via == c.winning;
  }
  return c;
}

// ------------------------------------------------------------------ controller

std::string policy_name(Policy p) {
  switch (p) {
    case Policy::PushHalf: return "push-half";
    case Policy::Midpoint: return "midpoint";
    case Policy::Eager: return "eager";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view s) {
  for (Policy p : {Policy::PushHalf, Policy::Midpoint, Policy::Eager})
    if (policy_name(p) == s) return p;
  return std::nullopt;
}

unsigned Controller::predicate_bits() const {
  const std::size_t n = clocks.size() - (encoding == Encoding::Tick ? 1 : 0);
  const unsigned lg = static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(n + 1))));
  return lg + 3 * static_cast<unsigned>(n) + 1;
}

std::optional<int> Controller::observation_index(const EnlargedRegion& e) const {
  auto it = std::lower_bound(observations.begin(), observations.end(), e);
  if (it == observations.end() || !(*it == e)) return std::nullopt;
  return static_cast<int>(it - observations.begin());
}

const ControllerEntry* Controller::lookup(int memory, const EnlargedRegion& e) const {
  auto o = observation_index(e);
  if (!o) return nullptr;
  auto it = table.find({memory, *o});
  return it == table.end() ? nullptr : &it->second;
}

Controller build_controller(const FiniteGame& g, const std::string& objective, const std::vector<int>& initial,
                            int initial_memory, const ControlRule& rule, Policy policy) {
  struct Raw {
    int next;
    int move;
  };
  std::map<std::pair<int, int>, Raw> seen;
  std::deque<std::pair<int, int>> work;
  for (int s : initial)
    if (seen.try_emplace({initial_memory, s}, Raw{-1, -1}).second) work.emplace_back(initial_memory, s);
  while (!work.empty()) {
    auto [mu, s] = work.front();
    work.pop_front();
    auto r = rule(mu, s);
    if (!r) throw std::logic_error("controller undefined on a reachable state");
    seen[{mu, s}] = Raw{r->first, r->second};
    for (std::size_t i2 = 0; i2 < g.moves2(s).size(); ++i2) {
      const int v = g.succ(s, static_cast<std::size_t>(r->second), i2);
      if (seen.try_emplace({r->first, v}, Raw{-1, -1}).second) work.emplace_back(r->first, v);
    }
  }
  // Renumber memories by first use, initial first.
  std::map<int, int> renum{{initial_memory, 0}};
  for (auto& [k, raw] : seen) {
    renum.try_emplace(k.first, static_cast<int>(renum.size()));
    renum.try_emplace(raw.next, static_cast<int>(renum.size()));
  }
  Controller c;
  c.game = g.model().name;
  c.objective = objective;
  c.encoding = g.encoding();
  c.clocks = g.model().clocks;
  if (g.encoding() == Encoding::Tick) c.clocks.push_back("z");
  c.memory_states = static_cast<int>(renum.size());
  c.initial_memory = 0;
  c.policy = policy;
  std::set<EnlargedRegion> obs;
  for (auto& [k, raw] : seen) obs.insert(g.state(k.second));
  c.observations.assign(obs.begin(), obs.end());
  for (auto& [k, raw] : seen) {
    const int s = k.second;
    const P1Move& m1 = g.moves1(s)[raw.move];
    const ChainEntry& ce = g.base(s).chain[m1.k];
    ControllerEntry e{renum[raw.next], Prescription{ce.region, ce.wrapped, m1.action}};
    c.table[{renum[k.first], *c.observation_index(g.state(s))}] = e;
  }
  return c;
}

ControlRule strategy_rule(const SolvedGame& g) {
  const SolvedGame* gp = &g;
  return [gp](int mu, int s) -> std::optional<std::pair<int, int>> {
    const auto& st = gp->solution.strategy;
    if (!gp->wins(s)) return std::nullopt;
    const int m1 = st.update(mu, s);
    const int u = st.move(m1, s);
    if (u < 0) return std::nullopt;
    const auto& nodes = gp->arena.p2_node[s];
    auto it = std::find(nodes.begin(), nodes.end(), u);
    if (it == nodes.end()) return std::nullopt;
    return std::make_pair(st.update(m1, u), static_cast<int>(it - nodes.begin()));
  };
}

ControlRule controller_rule(const FiniteGame& g, const Controller& c) {
  const FiniteGame* gp = &g;
  const Controller* cp = &c;
  return [gp, cp](int mu, int s) -> std::optional<std::pair<int, int>> {
    const ControllerEntry* e = cp->lookup(mu, gp->state(s));
    if (!e) return std::nullopt;
    const auto& m1 = gp->moves1(s);
    const auto& chain = gp->base(s).chain;
    for (std::size_t i = 0; i < m1.size(); ++i) {
      const ChainEntry& ce = chain[m1[i].k];
      if (ce.region == e->move.target && ce.wrapped == e->move.wrapped && m1[i].action == e->move.action)
        return std::make_pair(e->next_memory, static_cast<int>(i));
    }
    return std::nullopt;
  };
}

Controller minimize_controller(const SolvedGame& g, const Controller& c, const std::vector<int>& initial) {
  Controller best = c;
  for (bool merged = true; merged && best.memory_states > 1;) {
    merged = false;
    for (int keep = 0; keep < best.memory_states && !merged; ++keep)
      for (int drop = 0; drop < best.memory_states && !merged; ++drop) {
        if (drop == keep || drop == best.initial_memory) continue;
        const ControlRule base = controller_rule(g.game, best);
        const ControlRule rule = [&, base](int mu, int s) -> std::optional<std::pair<int, int>> {
          auto r = base(mu, s);
          if (!r && mu == keep) r = base(drop, s);
          if (r && r->first == drop) r->first = keep;
          return r;
        };
        try {
          Controller cand = build_controller(g.game, best.objective, initial, best.initial_memory, rule, best.policy);
          if (cand.memory_states >= best.memory_states) continue;
          if (!check_controller(g.game, g.spec->safe, g.condition, initial, cand.initial_memory,
                                controller_rule(g.game, cand))
                   .ok)
            continue;
          best = std::move(cand);
          merged = true;
        } catch (const std::logic_error&) {
          // undefined somewhere it is now reached
        }
      }
  }
  return best;
}

SynthesisResult synthesize(const GameSpec& spec, Objective o, Policy p, bool cross_validate) {
  auto g = solve_game(spec, o);
  SynthesisResult res;
  res.certificate = certificate_of(*g);
  if (cross_validate) res.certificate = sure_safe(spec, o, true);
  std::vector<int> init;
  for (auto& [r, s] : g->initial_states())
    if (g->wins(s)) init.push_back(s);
  if (init.empty()) return res;
  res.controller =
      minimize_controller(*g, build_controller(g->game, objective_name(o), init, 0, strategy_rule(*g), p), init);
  return res;
}

// ------------------------------------------------------------ exhaustive checks

namespace {

// Iterative Tarjan over the subgraph induced by `in`.
std::vector<std::vector<int>> sccs(const std::vector<std::vector<int>>& graph, const std::vector<int>& nodes,
                                   const std::vector<char>& in) {
  const std::size_t n = graph.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;
  for (int root : nodes) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      auto& [u, it] = call.back();
      if (it < graph[u].size()) {
        const int v = graph[u][it++];
        if (!in[v]) continue;
        if (index[v] < 0) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on[v] = 1;
          call.emplace_back(v, 0);
        } else if (on[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp.push_back(w);
        } while (w != u);
        out.push_back(std::move(comp));
      }
      const int done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return out;
}

bool rejecting_in(const std::vector<std::vector<int>>& graph, const std::vector<LiteralSet>& colors,
                  const std::vector<int>& nodes, const ZielonkaTree& tree, int tn, std::vector<char>& in) {
  for (int u : nodes) in[u] = 1;
  auto comps = sccs(graph, nodes, in);
  for (int u : nodes) in[u] = 0;
  for (auto& comp : comps) {
    bool cyclic = comp.size() > 1;
    if (!cyclic)
      for (int v : graph[comp[0]]) cyclic = cyclic || v == comp[0];
    if (!cyclic) continue;
    LiteralSet u{0, 0};
    for (int v : comp) u = u | colors[v];
    int t = tn;
    for (bool deeper = true; deeper;) {
      deeper = false;
      for (int c : tree.node(t).children)
        if (u.subset_of(tree.node(c).label)) {
          t = c;
          deeper = true;
          break;
        }
    }
    if (!tree.node(t).good) return true;
    for (int c : tree.node(t).children) {
      std::vector<int> part;
      for (int v : comp)
        if (colors[v].subset_of(tree.node(c).label)) part.push_back(v);
      if (!part.empty() && rejecting_in(graph, colors, part, tree, c, in)) return true;
    }
  }
  return false;
}

}  // namespace

bool has_rejecting_cycle(const std::vector<std::vector<int>>& graph, const std::vector<LiteralSet>& colors,
                         const std::vector<int>& nodes, const ZielonkaTree& tree) {
  std::vector<char> in(graph.size(), 0);
  return rejecting_in(graph, colors, nodes, tree, tree.root(), in);
}

ProductCheck check_controller(const FiniteGame& g, const std::vector<LocId>& safe, const MullerCondition& f,
                              const std::vector<int>& initial, int initial_memory, const ControlRule& rule) {
  ProductCheck res;
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> nodes;
  std::vector<std::vector<int>> graph;
  std::deque<int> work;
  auto node = [&](int mu, int s) {
    auto [it, fresh] = id.try_emplace({mu, s}, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.emplace_back(mu, s);
      graph.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  for (int s : initial) node(initial_memory, s);
  while (!work.empty()) {
    const int p = work.front();
    work.pop_front();
    auto [mu, s] = nodes[p];
    if (!std::binary_search(safe.begin(), safe.end(), g.state(s).base.loc)) {
      res.ok = false;
      res.reason = "reaches unsafe location " + g.model().location(g.state(s).base.loc).name;
      res.product_nodes = nodes.size();
      return res;
    }
    auto r = rule(mu, s);
    if (!r) {
      res.ok = false;
      res.reason = "controller undefined at " + to_string(g.state(s).base, g.model());
      res.product_nodes = nodes.size();
      return res;
    }
    std::vector<int> out;
    for (std::size_t i2 = 0; i2 < g.moves2(s).size(); ++i2)
      out.push_back(node(r->first, g.succ(s, static_cast<std::size_t>(r->second), i2)));
    graph[p] = std::move(out);
  }
  res.product_nodes = nodes.size();
  std::vector<LiteralSet> colors;
  for (auto& [mu, s] : nodes) colors.push_back(f.literals(state_label(g, s, safe)));
  std::vector<int> all(nodes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (has_rejecting_cycle(graph, colors, all, ZielonkaTree::build(f))) {
    res.ok = false;
    res.reason = "a reachable cycle violates the objective";
  }
  return res;
}

MemorylessReport enumerate_memoryless(const SolvedGame& sg, const std::vector<int>& initial, std::uint64_t cap) {
  const FiniteGame& g = sg.game;
  const TurnArena& ta = sg.arena;
  MemorylessReport rep;

  // Scope and raw candidate count.
  {
    std::vector<char> seen(g.size(), 0);
    std::deque<int> work;
    for (int s : initial)
      if (!seen[s]) seen[s] = 1, work.push_back(s);
    while (!work.empty()) {
      int s = work.front();
      work.pop_front();
      ++rep.scope;
      rep.candidates *= static_cast<unsigned>(g.moves1(s).size());
      for (std::size_t i1 = 0; i1 < g.moves1(s).size(); ++i1)
        for (std::size_t i2 = 0; i2 < g.moves2(s).size(); ++i2) {
          int v = g.succ(s, i1, i2);
          if (!seen[v]) seen[v] = 1, work.push_back(v);
        }
    }
  }

  // Committing a state to one move deletes its other player-2 nodes from the
  // arena. A branch survives only while player 1, free to use any memory at
  // uncommitted states, still wins every initial state; otherwise no
  // completion of the commitment can win either. When every state reachable
  // under the commitments is committed the relaxation is exact.
  NodeMask sub = sg.sub;
  std::vector<int> choice(g.size(), -1);

  auto relaxed_win = [&]() {
    if (++rep.nodes_explored > cap) throw CapacityError("memoryless search exceeded its node budget");
    MullerSolution sol = solve_muller(ta.arena, sg.condition, Player::One, sub);
    for (int s : initial)
      if (!sol.win[s]) return false;
    return true;
  };
  // First reachable uncommitted state, or -1.
  auto open_state = [&]() {
    std::vector<char> seen(g.size(), 0);
    std::deque<int> work;
    for (int s : initial)
      if (!seen[s]) seen[s] = 1, work.push_back(s);
    while (!work.empty()) {
      int s = work.front();
      work.pop_front();
      if (choice[s] < 0) return s;
      for (std::size_t i2 = 0; i2 < g.moves2(s).size(); ++i2) {
        int v = g.succ(s, static_cast<std::size_t>(choice[s]), i2);
        if (!seen[v]) seen[v] = 1, work.push_back(v);
      }
    }
    return -1;
  };

  std::function<bool()> search = [&]() -> bool {
    const int s = open_state();
    if (s < 0) {
      ++rep.complete_checked;
      return true;
    }
    const auto& nodes = ta.p2_node[s];
    // Latest chain entry first, stutter before actions: waiting is the move
    // most likely to keep time going.
    const auto& m1 = g.moves1(s);
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (m1[a].k != m1[b].k) return m1[a].k > m1[b].k;
      return !m1[a].action && m1[b].action;
    });
    for (std::size_t i1 : order) {
      if (!sub[nodes[i1]]) continue;
      std::vector<int> dropped;
      for (std::size_t j = 0; j < nodes.size(); ++j)
        if (j != i1 && sub[nodes[j]]) dropped.push_back(nodes[j]);
      for (int u : dropped) sub[u] = 0;
      choice[s] = static_cast<int>(i1);
      if (!relaxed_win()) {
        ++rep.pruned;
      } else if (search()) {
        return true;
      }
      choice[s] = -1;
      for (int u : dropped) sub[u] = 1;
    }
    return false;
  };

  for (int s : initial)
    if (!sub[s]) return rep;
  if (relaxed_win() && search()) {
    rep.winner_found = true;
    for (std::size_t s = 0; s < g.size(); ++s)
      if (choice[s] >= 0) rep.winner[static_cast<int>(s)] = choice[s];
  }
  return rep;
}

}  // namespace tga
